#include "finsler/error.hpp"

namespace finsler {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::DegenerateForms: return "DegenerateForms";
    case ErrorCode::DegenerateDomain: return "DegenerateDomain";
    case ErrorCode::ZeroBase: return "ZeroBase";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::ZeroKappa: return "ZeroKappa";
    case ErrorCode::NotApplicableDimension: return "NotApplicableDimension";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::HyperplaneSingularity: return "HyperplaneSingularity";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace finsler
