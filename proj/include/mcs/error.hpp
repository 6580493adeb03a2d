#pragma once

#include <stdexcept>
#include <string>

namespace mcs {

enum class ErrorKind {
  Validation,
  ArityMismatch,
  SolverNonConvergence,
  IterationCap,
  AmbiguousRank,
  RankDeficient,
  GramMismatch,
  Inconclusive,
  NotInterior,
  RayUnbounded,
  PartitionOfUnityViolated,
  NotContraction,
  ZeroGamma,
  InconsistentRows,
  NotVertex,
  VerificationFailed,
  PreconditionViolated,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Non-convergence of an iterative kernel; residual is the quantity that failed to shrink.
class SolverError : public Error {
 public:
  SolverError(const std::string& message, double residual)
      : Error(ErrorKind::SolverNonConvergence, message), residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace mcs
