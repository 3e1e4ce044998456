#pragma once

#include <vector>

#include "cascadelab/types.hpp"

namespace casclab {

// State of the N-mode toy model: complex amplitudes b_1..b_N at one instant.
// Boundary convention: b_0 = b_{N+1} = 0.
struct ToyState {
  std::vector<cplx> modes;
  double time = 0.0;

  int N() const { return static_cast<int>(modes.size()); }
};

struct ToyParams {
  int N = 6;
  double delta = 1e-3;
  double sigma = 0.15;
  double nu = 0.25;

  // gamma with delta = e^{-gamma N}.
  double gamma() const;
  void validate() const;  // throws PreconditionViolation
};

enum class OrbitKind { PeriodicTj, HeteroclinicPlus, HeteroclinicMinus };

// Closed-form reference orbits: the periodic orbit T_j (b_j = e^{-it}) and
// the heteroclinic family connecting T_j to T_{j+1} inside the plane L_j.
struct ExactOrbit {
  OrbitKind kind = OrbitKind::PeriodicTj;
  int j = 1;       // 1-based generation index
  double phase = 0.0;  // free angle theta
  int N = 6;
};

// Right-hand side of  b'_j = -i b_j^2 conj(b_j) + 2 i conj(b_j) (b_{j-1}^2 + b_{j+1}^2).
std::vector<cplx> toy_rhs(const ToyState& state);

// h(b) = 1/4 sum |b_j|^4 - 1/2 sum_{j>=2} (conj(b_j)^2 b_{j-1}^2 + b_j^2 conj(b_{j-1})^2)
double toy_hamiltonian(const ToyState& state);

// M(b) = sum |b_j|^2
double toy_mass(const ToyState& state);

ToyState exact_orbit_point(const ExactOrbit& orbit, double t);

// Flat real representation used by the integrator: [Re b_1, Im b_1, ...].
std::vector<double> flatten(const ToyState& state);
ToyState unflatten(const std::vector<double>& y, double time = 0.0);

// toy_rhs in flat form, shared by integration drivers.
void toy_rhs_flat(const std::vector<double>& y, std::vector<double>& dy);

}  // namespace casclab
