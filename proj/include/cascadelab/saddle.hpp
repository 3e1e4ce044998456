#pragma once

#include <vector>

#include "cascadelab/integrator.hpp"
#include "cascadelab/toy.hpp"
#include "cascadelab/types.hpp"

namespace casclab {

// Coordinates adapted to the periodic orbit T_j: the global phase theta is
// quotiented out (b_j = r e^{i theta} with r recovered from mass = 1), the
// neighbor modes b_{j-1}, b_{j+1} are expressed in the diagonalizing basis
// c = omega^2 p + omega q, and the remaining modes are carried along as
// elliptic amplitudes c_k, k in P_j = {1..N} \ {j-1, j, j+1}.
struct SaddleFrame {
  int j = 3;      // 1-based saddle index, 2 <= j <= N-1
  int N = 6;
  double p1 = 0.0, q1 = 0.0;  // hyperbolic pair of mode j-1 (p unstable)
  double p2 = 0.0, q2 = 0.0;  // hyperbolic pair of mode j+1
  std::vector<cplx> c;        // length N, slots j-1, j, j+1 unused (zero)
  double theta = 0.0;         // reference angle, carried for invertibility

  // Squared radial coordinate of mode j under the mass-1 reduction.
  double r2() const;
  bool is_elliptic_slot(int k) const {  // k is 1-based
    return k < j - 1 || k > j + 1;
  }
};

// Time-derivative of a frame under the reduced flow.
struct SaddleFrameDeriv {
  double p1 = 0.0, q1 = 0.0, p2 = 0.0, q2 = 0.0;
  std::vector<cplx> c;
  double theta = 0.0;  // rotation rate of the quotiented phase
  double r = 0.0;      // radial rate (dependent, reported for diagnostics)
};

// Quartic coefficients of the hyperbolic block of the reduced Hamiltonian in
// the reference normalization (quadratic part sqrt3 (p1 q1 + p2 q2)).
struct ReducedHamCoeffs {
  double nu_k[4] = {0, 0, 0, 0};      // nu_k, k = 1..3 (index 0 unused)
  double nu_kl[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};  // nu_{kl}, k,l in 0..2
  double fit_residual = 0.0;

  double nu02() const { return nu_kl[0][2]; }
};

// Inverse of c = omega^2 p + omega q.
void diagonal_from_complex(const cplx& c, double& p, double& q);
cplx complex_from_diagonal(double p, double q);

SaddleFrame to_saddle_frame(const ToyState& state, int j);
ToyState from_saddle_frame(const SaddleFrame& frame);

// Reduced Hamiltonian value normalized to 0 at T_j (offset -1/4).
double reduced_hamiltonian(const SaddleFrame& frame);

// Reduced vector field, computed by analytic phase subtraction of the toy
// flow (independent of any finite-difference oracle).
SaddleFrameDeriv reduced_rhs(const SaddleFrame& frame);

// Least-squares fit of the quartic hyperbolic block (elliptic modes frozen
// at zero); deterministic stencil, exact for the quartic chart Hamiltonian.
ReducedHamCoeffs fit_reduced_coeffs();

// Fitted nu_02, computed once and cached (the hyperbolic block does not
// depend on j or N).
double default_nu02();

// T_j(x2_0) = (1/sqrt3) ln(f2(sigma)/x2_0) with f2(sigma) = sigma.
double transit_time(double x2_0, double sigma);

// Unique small solution of (x2*)^2 T(x2*) = C_delta_log / (2 nu02 f1(sigma)),
// f1(sigma) = sigma, bracketed on the increasing branch (0, sigma/sqrt(e)).
double cancellation_target(double C_delta_log, double sigma, double nu02);
double cancellation_target(double C_delta_log, double sigma);

// Change of saddle chart j -> j+1 along the cascade.
SaddleFrame frame_transfer(const SaddleFrame& frame);

struct MapConfig {
  IntegratorConfig integ;
  double sigma = 0.15;
  double escape_bound = 0.6;  // EscapedNeighborhood threshold on |c_k|
};

struct MapResult {
  SaddleFrame frame;
  double transit_time = 0.0;
  Trajectory trajectory;  // toy-coordinate trajectory of the transit
};

// Scalar chart coordinates evaluated directly on a flat toy state (cheap
// event functions; theta taken from arg b_j).
double frame_p2_of_state(const std::vector<double>& y, int j);
double frame_q1_of_state(const std::vector<double>& y, int j);

// Sigma_j^in = {q1 = sigma}  ->  Sigma_j^out = {p2 = sigma}.
MapResult local_map(const SaddleFrame& entry, const MapConfig& cfg);

// Sigma_j^out -> Sigma_{j+1}^in along the heteroclinic.
MapResult global_map(const SaddleFrame& exit, const MapConfig& cfg);

}  // namespace casclab
