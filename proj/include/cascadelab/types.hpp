#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace casclab {

using cplx = std::complex<double>;

inline constexpr double kSqrt3 = 1.7320508075688772935274463;

// omega = e^{2*pi*i/3}, the cube root of unity used by the diagonalizing
// change of variables.  Stored as the exact pair (-1/2, sqrt(3)/2).
inline const cplx kOmega{-0.5, kSqrt3 / 2.0};
inline const cplx kOmegaSq{-0.5, -kSqrt3 / 2.0};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepUnderflow : NumericalError {
  using NumericalError::NumericalError;
};
struct BudgetExceeded : NumericalError {
  using NumericalError::NumericalError;
};
struct NoCrossing : NumericalError {
  using NumericalError::NumericalError;
};
struct TangentialCrossing : NumericalError {
  using NumericalError::NumericalError;
};

struct DegenerateAngle : NumericalError {
  using NumericalError::NumericalError;
};
struct InfeasibleMass : NumericalError {
  using NumericalError::NumericalError;
};
struct DegenerateTarget : NumericalError {
  using NumericalError::NumericalError;
};
struct NonPositiveInput : NumericalError {
  using NumericalError::NumericalError;
};
struct NoSolution : NumericalError {
  using NumericalError::NumericalError;
};
struct EscapedNeighborhood : NumericalError {
  using NumericalError::NumericalError;
};

struct SearchFailed : NumericalError {
  int saddle;
  SearchFailed(int j, const std::string& what)
      : NumericalError(what), saddle(j) {}
};

struct PlacementExhausted : NumericalError {
  int generation;
  PlacementExhausted(int j, const std::string& what)
      : NumericalError(what), generation(j) {}
};

struct UnlinkedPoint : NumericalError {
  using NumericalError::NumericalError;
};
struct OutOfWindow : NumericalError {
  using NumericalError::NumericalError;
};
struct PreconditionViolation : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace casclab
