#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace a1 {

enum class ErrorCode {
  InvalidField,
  ZeroInput,
  NotAnExtension,
  InfiniteField,
  SyntaxError,
  UnknownVariable,
  CoefficientNotInField,
  NonSquareSystem,
  ArityMismatch,
  VariableMismatch,
  PrecisionExhausted,
  DegenerateForm,
  FieldMismatch,
  NonUnitLeadingTerm,
  NotAZero,
  NotIsolated,
  JacobianVanishesInAlgebra,
  DegenerateZero,
  InseparableResidueField,
  CharDividesDimension,
  DegenerateEkl,
  NotCoprime,
  DegreeOrder,
  IrregularValue,
  FiberEscapesBound,
  SmoothPoint,
  NotANode,
  LeadingCoeffNotSquare,
  SeedInconsistent,
  NoQuadraticConvergence,
  NonUnitHessian,
  BranchDoesNotSpecialize,
  IncompleteBranchSet,
  Unsupported,
  Usage,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure carrying the 0-based offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorCode::SyntaxError, "at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Three-valued answer for questions that are not decidable over every field.
enum class Tri { False, True, Unknown };

inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

inline const char* tri_name(Tri t) {
  switch (t) {
    case Tri::True: return "True";
    case Tri::False: return "False";
    default: return "Unknown";
  }
}

}  // namespace a1
