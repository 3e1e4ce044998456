#pragma once

#include <utility>
#include <vector>

#include "cascadelab/integrator.hpp"
#include "cascadelab/lattice.hpp"
#include "cascadelab/types.hpp"

namespace casclab {

// Finite-support Fourier-side state: amplitudes over a sorted list of modes.
// The same container carries a_n (full flow), beta_n (resonant / rotating
// frame) and alpha_n (gauged) amplitudes; the role is fixed by which flow is
// applied.
struct GalerkinState {
  std::vector<LatticePoint> support;  // sorted, unique
  std::vector<cplx> amplitudes;       // parallel to support
  double time = 0.0;

  int find(const LatticePoint& n) const;  // index, or -1 when absent
  cplx at(const LatticePoint& n) const;   // 0 when absent
};

// Zero state over the given support (sorted and deduplicated).
GalerkinState make_state(std::vector<LatticePoint> support);

// Flat interleaved [Re, Im, ...] representation used by the integrator.
std::vector<double> flatten(const GalerkinState& state);
GalerkinState unflatten_state(const std::vector<LatticePoint>& support,
                              const std::vector<double>& y, double time = 0.0);

// One interaction triple at output mode n: n1 - n2 + n3 = n and
// |n1|^2 - |n2|^2 + |n3|^2 = |n|^2.  `proper` marks membership in A(n)
// (n1 != n and n3 != n) as opposed to the full A0(n).
struct ResonantTriple {
  LatticePoint n1, n2, n3;
  bool proper = false;
};

std::vector<ResonantTriple> resonance_partners(
    const LatticePoint& n, const std::vector<LatticePoint>& support);

// One-step convolution closure {n1 - n2 + n3 : ni in support}, sorted unique
// (always contains the support itself).
std::vector<LatticePoint> convolution_closure(
    const std::vector<LatticePoint>& support);

// Nuclear-family resonant system on Lambda:
//   -i beta'_n = -beta_n |beta_n|^2 + 2 beta_c1 beta_c2 conj(beta_spouse)
//                + 2 beta_p1 beta_p2 conj(beta_sibling),
// with missing relatives (first/last generation) contributing zero.  Throws
// UnlinkedPoint when a support point does not belong to Lambda.
std::vector<cplx> resonant_rhs(const GalerkinState& beta,
                               const LambdaSet& lambda);

// Full cubic flow  -i a'_n = |n|^2 a_n + sum_{n1-n2+n3=n} a_n1 conj(a_n2)
// a_n3 with the sum over triples inside the state's support.  The unsuffixed
// version parallelizes over output modes; the serial version is the reference
// implementation.
std::vector<cplx> full_rhs(const GalerkinState& a);
std::vector<cplx> full_rhs_serial(const GalerkinState& a);

struct LiftConfig {
  double lambda = 1.0;  // rescaling parameter, >= 1 in the experiments
  double G = 0.0;       // gauge constant; 2 ||beta(0)||^2 when auto-derived
};

// G = 2 ||beta||^2_{l2}: the positive constant for which the gauge
// e^{i(G+|n|^2)t} cancels the degenerate resonant triples (n1 = n or
// n3 = n), leaving the nuclear-family system.
double derive_gauge(const GalerkinState& beta);

// beta^lambda_n(t) = lambda^{-1} b_j(lambda^{-2} t) for n in Lambda_j and 0
// off Lambda.  toy_traj must cover lambda^{-2} t; throws OutOfWindow.
GalerkinState lift_toy_orbit(const Trajectory& toy_traj,
                             const LambdaSet& lambda, const LiftConfig& cfg,
                             double t);

// alpha_n = beta_n e^{i (G + |n|^2) t} (direction +1), inverse for -1.
GalerkinState gauge_transform(const GalerkinState& state, double G, double t,
                              int direction);

// Sum over the union of supports of |x_n - y_n|.
double l1_distance(const GalerkinState& x, const GalerkinState& y);

// (sum <n>^{2s} |a_n|^2)^{1/2} with <n>^2 = 1 + |n|^2.
double sobolev_norm(const GalerkinState& a, double s);

// Per-generation contributions sum_{n in Lambda_j} |n|^{2s} |a_n|^2.
std::vector<double> generation_sobolev(const GalerkinState& a,
                                       const LambdaSet& lambda, double s);

// Flat-state adapters for the shared integrator.  The support is
// lambda.points for the resonant system and the given list for the full one.
RhsFn make_resonant_rhs_fn(const LambdaSet& lambda);
RhsFn make_full_rhs_fn(std::vector<LatticePoint> support);

// Full cubic flow written in the rotating frame a_n = beta_n e^{i(G+|n|^2)t}:
//   -i beta'_n = -G beta_n
//                + sum beta_n1 conj(beta_n2) beta_n3 e^{i divisor t},
// divisor = |n1|^2 - |n2|^2 + |n3|^2 - |n|^2.  The support is the one-step
// convolution closure of Lambda (Lambda points first); interaction inputs are
// restricted to Lambda, so closure modes are driven but do not feed back
// (the dropped products carry at least one closure factor and are smaller by
// two powers of the amplitude).
struct RotatingTerm {
  int out = 0, i1 = 0, i2 = 0, i3 = 0;
  double divisor = 0.0;
};

struct RotatingSystem {
  std::vector<LatticePoint> support;  // closure; first lambda_size = Lambda
  int lambda_size = 0;
  double G = 0.0;
  std::vector<RotatingTerm> terms;
};

RotatingSystem make_rotating_system(const LambdaSet& lambda, double G);

// One step of the second-order exponential midpoint scheme: oscillatory
// factors are integrated exactly over the step, so the step size is limited
// by the slow nonlinear rates only, not by the divisors.
void rotating_step(const RotatingSystem& sys, GalerkinState& beta, double dt);

// Integrates to `t_end`, returning `samples + 1` states at uniform times
// (including both endpoints).  dt is shortened to divide the sample spacing.
std::vector<GalerkinState> integrate_rotating(const RotatingSystem& sys,
                                              const GalerkinState& beta0,
                                              double t_end, double dt,
                                              int samples);

// Theorem-style deviation series: for each alpha sample (lab frame),
// sum_n |alpha_n(t) - e^{i(G+|n|^2)t} beta^lambda_n(t)| against the lifted
// toy orbit.  Returns (t, deviation) pairs.
std::vector<std::pair<double, double>> approximation_error(
    const std::vector<GalerkinState>& alpha_samples, const Trajectory& toy_traj,
    const LambdaSet& lambda, const LiftConfig& cfg);

}  // namespace casclab
