#include "mixent/error.hpp"

namespace mixent {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::SpectrumNotReal: return "SpectrumNotReal";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::WeightsInvalid: return "WeightsInvalid";
    case ErrorCode::OmegaOutOfRange: return "OmegaOutOfRange";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::ToleranceOutOfRange: return "ToleranceOutOfRange";
    case ErrorCode::GridInvalid: return "GridInvalid";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotDensityMatrix: return "NotDensityMatrix";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace mixent
