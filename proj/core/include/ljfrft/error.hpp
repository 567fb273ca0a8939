#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ljfrft {

enum class ErrorCode {
  InvalidArgument,
  ShapeMismatch,
  NonFinite,
  NonConvergence,
  NearDefective,
  Singular,
  DimensionOverflow,
  DuplicatePoints,
  IsolatedVertex,
  BranchCutEigenvalue,
  ZeroEigenvalue,
  CommutingMatrixDegenerate,
  SingularNormalMatrix,
  ZeroReference,
  ParseError,
  EmptyReport,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Numerical failures (as opposed to bad input or configuration).
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ljfrft
