#include "ljfrft/error.hpp"

namespace ljfrft {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NearDefective: return "NearDefective";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::BranchCutEigenvalue: return "BranchCutEigenvalue";
    case ErrorCode::ZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorCode::CommutingMatrixDegenerate: return "CommutingMatrixDegenerate";
    case ErrorCode::SingularNormalMatrix: return "SingularNormalMatrix";
    case ErrorCode::ZeroReference: return "ZeroReference";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyReport: return "EmptyReport";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::ParseError:
    case ErrorCode::ConfigError:
    case ErrorCode::DuplicatePoints:
    case ErrorCode::IsolatedVertex:
      return false;
    default:
      return true;
  }
}

}  // namespace ljfrft
