#include "mixent_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "mixent/entanglement.hpp"
#include "mixent/error.hpp"
#include "mixent/omega.hpp"
#include "mixent_cli/state_document.hpp"

namespace mixent::cli {

namespace {

constexpr double kPrintZero = 1e-12;

double tidy(double x) { return std::abs(x) < kPrintZero ? 0.0 : x; }

// Loads a state file and runs `body`, mapping library errors onto exit codes.
template <class Body>
int with_state(const std::filesystem::path& path, std::ostream& err, Body&& body) {
  try {
    return body(load_state_file(path));
  } catch (const DocumentError& e) {
    err << "error: " << path.string() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    const bool usage = e.code() == ErrorCode::GridInvalid || e.code() == ErrorCode::ToleranceOutOfRange;
    err << "error: " << e.what() << "\n";
    return usage ? kUsage : kInvariant;
  }
}

struct ClosedForm {
  double omega_c = 0.0;
  OmegaMethod method = OmegaMethod::PureClosed;
  std::optional<Rank4Branch> branch;
};

std::optional<ClosedForm> closed_form(const AnyState& value) {
  if (const auto* psi = std::get_if<PureState>(&value)) {
    return ClosedForm{omega_c_pure(concurrence_pure(*psi)).omega_c, OmegaMethod::PureClosed, {}};
  }
  if (const auto* r = std::get_if<StructuredRank2>(&value)) {
    return ClosedForm{omega_c_rank2(*r).omega_c, OmegaMethod::Rank2Closed, {}};
  }
  if (const auto* r = std::get_if<StructuredRank4>(&value)) {
    const auto critical = critical_weight_rank4(rank4_stats(*r));
    if (!critical) return std::nullopt;
    return ClosedForm{critical->omega_c, OmegaMethod::Rank4Closed, critical->branch};
  }
  return std::nullopt;
}

}  // namespace

std::string fixed12(double x) { return fmt::format("{:.12f}", tidy(x)); }
std::string general12(double x) { return fmt::format("{:.12g}", tidy(x)); }

int cmd_concurrence(const std::filesystem::path& state, std::ostream& out, std::ostream& err) {
  return with_state(state, err, [&](const AnyState& value) -> int {
    const auto c = concurrence(density_of(value));
    out << "C = " << fixed12(c.value) << "\n";
    out << "lambdas = " << fixed12(c.lambdas[0]) << " " << fixed12(c.lambdas[1]) << " " << fixed12(c.lambdas[2])
        << " " << fixed12(c.lambdas[3]) << "\n";
    return kOk;
  });
}

int cmd_omega_c(const std::filesystem::path& state, OmegaMode mode, double tol, std::ostream& out,
                std::ostream& err) {
  if (!(tol >= kMinBisectTol && tol <= kMaxBisectTol)) {
    err << "error: --tol " << tol << " is outside [" << kMinBisectTol << ", " << kMaxBisectTol << "]\n";
    return kUsage;
  }
  return with_state(state, err, [&](const AnyState& value) -> int {
    const DensityMatrix rho0 = density_of(value);
    const bool has_closed = !std::holds_alternative<DensityMatrix>(value) && !std::holds_alternative<Ensemble>(value);
    if (mode == OmegaMode::Closed && !has_closed) {
      err << "error: no closed form for kind \"" << kind_name(value) << "\"; use --method bisect or auto\n";
      return kNoClosedForm;
    }

    std::optional<OmegaResult> bisected;
    if (mode != OmegaMode::Closed) bisected = omega_c_bisect(rho0, tol);

    if (mode == OmegaMode::Bisect || !has_closed) {
      out << "omega_c = " << fixed12(bisected->omega_c) << " (" << to_string(bisected->method) << ")\n";
      out << "residual = " << fixed12(bisected->residual) << "\n";
      return kOk;
    }

    const auto closed = closed_form(value);
    if (!closed) {
      err << "error: closed form has no consistent branch for this state\n";
      return kDisagreement;
    }
    out << "omega_c = " << fixed12(closed->omega_c) << " (" << to_string(closed->method);
    if (closed->branch) out << ", " << to_string(*closed->branch);
    out << ")\n";
    out << "residual = " << fixed12(concurrence(mix_with_max_mixed(rho0, closed->omega_c)).value) << "\n";
    if (!bisected) return kOk;

    const double gap = std::abs(closed->omega_c - bisected->omega_c);
    if (gap > kClosedFormAgreement) {
      out << "cross_check = bisection gives " << fixed12(bisected->omega_c) << ", off by "
          << fmt::format("{:.3e}", gap) << "\n";
      err << "error: closed form and bisection disagree by more than "
          << fmt::format("{:.0e}", kClosedFormAgreement) << "\n";
      return kDisagreement;
    }
    out << "cross_check = bisection agrees within " << fmt::format("{:.0e}", kClosedFormAgreement) << "\n";
    return kOk;
  });
}

int cmd_sweep(const std::filesystem::path& state, double from, double to, int steps, const std::filesystem::path& csv,
              std::ostream& out, std::ostream& err) {
  return with_state(state, err, [&](const AnyState& value) -> int {
    const auto rows = sweep(density_of(value), from, to, steps);
    std::string body = "omega,concurrence,separable\n";
    for (const auto& row : rows) {
      body += general12(row.omega) + "," + general12(row.concurrence) + "," + (row.separable ? "true" : "false") + "\n";
    }
    std::ofstream file(csv, std::ios::binary | std::ios::trunc);
    if (!(file << body) || !file.flush()) {
      err << "error: cannot write " << csv.string() << "\n";
      return kUnwritable;
    }
    out << "wrote " << rows.size() << " rows to " << csv.string() << "\n";
    return kOk;
  });
}

}  // namespace mixent::cli
