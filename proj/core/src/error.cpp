#include "ranklab/error.hpp"

namespace ranklab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::WrongLevel: return "WrongLevel";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::TowerMismatch: return "TowerMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::PreconditionHyperplaneWeight: return "PreconditionHyperplaneWeight";
    case ErrorCode::NoEmbedding: return "NoEmbedding";
    case ErrorCode::EmptyCode: return "EmptyCode";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NotMRD: return "NotMRD";
    case ErrorCode::RankDeficientA: return "RankDeficientA";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::GcdViolation: return "GcdViolation";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::EtaConditionViolated: return "EtaConditionViolated";
    case ErrorCode::IotaFull: return "IotaFull";
    case ErrorCode::KernelMismatch: return "KernelMismatch";
    case ErrorCode::IdealiserNotMaximal: return "IdealiserNotMaximal";
    case ErrorCode::DivisibilityViolation: return "DivisibilityViolation";
    case ErrorCode::NotMaxScattered: return "NotMaxScattered";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::NotSpanning: return "NotSpanning";
    case ErrorCode::DependentBasis: return "DependentBasis";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UsageError:
    case ErrorCode::ParseError:
      return 1;
    case ErrorCode::BudgetExceeded:
      return 3;
    default:
      return 2;
  }
}

}  // namespace ranklab
