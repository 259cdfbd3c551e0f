#pragma once

#include <stdexcept>
#include <string>

namespace isl {

/// Root of every error raised by the library.
///
/// Two families exist: `ValidationError` (bad input, violated preconditions,
/// data that fails an admissibility gate) and `NumericalError` (a computation
/// that could not reach its stated accuracy). The command-line driver maps
/// them to distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Input and admissibility failures.
class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonRealError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IndexNonzero : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical failures.
class SingularSystem : public NumericalError {
 public:
  SingularSystem(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition_number() const noexcept { return condition_; }

 private:
  double condition_;
};

class TailTooLarge : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UnderResolvedContour : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BoundaryZero : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CountMismatch : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepSizeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroJost : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CrossCheckFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivisionSingularity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MatchingSingularity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BranchJump : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BudgetExhausted : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace isl
