#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace mixent::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kInvariant = 3,
  kDisagreement = 4,
  kNoClosedForm = 5,
  kUnwritable = 6,
};

enum class OmegaMode { Auto, Closed, Bisect };

/// Number formatting shared by every report: |x| < 1e-12 prints as zero.
std::string fixed12(double x);
std::string general12(double x);

int cmd_concurrence(const std::filesystem::path& state, std::ostream& out, std::ostream& err);
int cmd_omega_c(const std::filesystem::path& state, OmegaMode mode, double tol, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::filesystem::path& state, double from, double to, int steps, const std::filesystem::path& csv,
              std::ostream& out, std::ostream& err);
int cmd_verify(int trials, std::uint64_t seed, std::ostream& out, std::ostream& err);

}  // namespace mixent::cli
