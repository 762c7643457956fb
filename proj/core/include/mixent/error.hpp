#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mixent {

/// Contract violations raised by the library. Every throwing operation
/// reports exactly one of these codes.
enum class ErrorCode {
  NotHermitian,
  SpectrumNotReal,
  NotPSD,
  NotNormalized,
  WeightsInvalid,
  OmegaOutOfRange,
  ParamOutOfRange,
  ToleranceOutOfRange,
  GridInvalid,
  NonFinite,
  NotDensityMatrix,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mixent
