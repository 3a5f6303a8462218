#include "vortexlab/errors.hpp"

namespace vortexlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NonPositiveRadicand: return "NonPositiveRadicand";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::OriginSingular: return "OriginSingular";
    case ErrorKind::DegenerateKinetics: return "DegenerateKinetics";
    case ErrorKind::SingularSymplecticForm: return "SingularSymplecticForm";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::NonPositiveE: return "NonPositiveE";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::SingularConstraintMatrix: return "SingularConstraintMatrix";
    case ErrorKind::NumericalRankLoss: return "NumericalRankLoss";
    case ErrorKind::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorKind::NodalPointSingular: return "NodalPointSingular";
    case ErrorKind::LoopThroughNode: return "LoopThroughNode";
  }
  return "Unknown";
}

}  // namespace vortexlab
