#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ranklab {

// Every failure the library reports carries one of these codes. The CLI maps
// them onto exit codes (see exit_code_for).
enum class ErrorCode {
  InvalidArgument,
  NotPrime,
  BudgetExceeded,
  WrongLevel,
  AmbientMismatch,
  TowerMismatch,
  DimensionMismatch,
  ParamMismatch,
  Singular,
  PreconditionHyperplaneWeight,
  NoEmbedding,
  EmptyCode,
  InvalidParams,
  NotMRD,
  RankDeficientA,
  ShapeMismatch,
  HypothesisViolated,
  GcdViolation,
  KTooLarge,
  EtaConditionViolated,
  IotaFull,
  KernelMismatch,
  IdealiserNotMaximal,
  DivisibilityViolation,
  NotMaxScattered,
  NonIntegral,
  NotSpanning,
  DependentBasis,
  IoError,
  ParseError,
  UsageError,
  InternalError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

// 0 success, 1 usage, 2 precondition or gate failure, 3 budget exhaustion.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace ranklab
