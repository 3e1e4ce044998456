#include "cascadelab/toy.hpp"

#include <cmath>

namespace casclab {

double ToyParams::gamma() const { return std::log(1.0 / delta) / N; }

void ToyParams::validate() const {
  if (N < 5) throw PreconditionViolation("ToyParams: N must be >= 5");
  if (!(delta > 0.0 && delta < 1.0))
    throw PreconditionViolation("ToyParams: delta must lie in (0,1)");
  if (!(sigma > 0.0 && sigma < 1.0))
    throw PreconditionViolation("ToyParams: sigma must lie in (0,1)");
  if (!(delta < sigma))
    throw PreconditionViolation("ToyParams: require delta < sigma");
  if (!(nu > 0.0)) throw PreconditionViolation("ToyParams: nu must be > 0");
}

std::vector<cplx> toy_rhs(const ToyState& state) {
  const int n = state.N();
  std::vector<cplx> rate(n);
  for (int j = 0; j < n; ++j) {
    const cplx b = state.modes[j];
    const cplx left = (j > 0) ? state.modes[j - 1] : cplx{0.0, 0.0};
    const cplx right = (j + 1 < n) ? state.modes[j + 1] : cplx{0.0, 0.0};
    const cplx i{0.0, 1.0};
    rate[j] = -i * b * b * std::conj(b) +
              2.0 * i * std::conj(b) * (left * left + right * right);
  }
  return rate;
}

double toy_hamiltonian(const ToyState& state) {
  const int n = state.N();
  double quartic = 0.0;
  double coupling = 0.0;
  for (int j = 0; j < n; ++j) {
    const double a2 = std::norm(state.modes[j]);
    quartic += a2 * a2;
    if (j > 0) {
      const cplx cross =
          std::conj(state.modes[j]) * std::conj(state.modes[j]) *
          state.modes[j - 1] * state.modes[j - 1];
      coupling += 2.0 * cross.real();  // cross + conj(cross)
    }
  }
  return 0.25 * quartic - 0.5 * coupling;
}

double toy_mass(const ToyState& state) {
  double m = 0.0;
  for (const cplx& b : state.modes) m += std::norm(b);
  return m;
}

ToyState exact_orbit_point(const ExactOrbit& orbit, double t) {
  ToyState state;
  state.modes.assign(orbit.N, cplx{0.0, 0.0});
  state.time = t;
  const cplx rot = std::polar(1.0, -(t + orbit.phase));
  if (orbit.kind == OrbitKind::PeriodicTj) {
    state.modes[orbit.j - 1] = rot;
    return state;
  }
  // Heteroclinic family: the two active modes sit at relative phase omega^2,
  // with magnitudes (1+e^{2 sqrt3 t})^{-1/2} and (1+e^{-2 sqrt3 t})^{-1/2}.
  const double mj = 1.0 / std::sqrt(1.0 + std::exp(2.0 * kSqrt3 * t));
  const double mj1 = 1.0 / std::sqrt(1.0 + std::exp(-2.0 * kSqrt3 * t));
  const double sign = (orbit.kind == OrbitKind::HeteroclinicPlus) ? 1.0 : -1.0;
  state.modes[orbit.j - 1] = rot * kOmega * mj;
  state.modes[orbit.j] = rot * (sign * mj1);
  return state;
}

std::vector<double> flatten(const ToyState& state) {
  std::vector<double> y(2 * state.modes.size());
  for (size_t j = 0; j < state.modes.size(); ++j) {
    y[2 * j] = state.modes[j].real();
    y[2 * j + 1] = state.modes[j].imag();
  }
  return y;
}

ToyState unflatten(const std::vector<double>& y, double time) {
  ToyState state;
  state.time = time;
  state.modes.resize(y.size() / 2);
  for (size_t j = 0; j < state.modes.size(); ++j)
    state.modes[j] = cplx{y[2 * j], y[2 * j + 1]};
  return state;
}

void toy_rhs_flat(const std::vector<double>& y, std::vector<double>& dy) {
  const int n = static_cast<int>(y.size() / 2);
  dy.resize(y.size());
  for (int j = 0; j < n; ++j) {
    const cplx b{y[2 * j], y[2 * j + 1]};
    cplx nb{0.0, 0.0};
    if (j > 0) {
      const cplx l{y[2 * (j - 1)], y[2 * (j - 1) + 1]};
      nb += l * l;
    }
    if (j + 1 < n) {
      const cplx r{y[2 * (j + 1)], y[2 * (j + 1) + 1]};
      nb += r * r;
    }
    const cplx i{0.0, 1.0};
    const cplx rate = -i * b * b * std::conj(b) + 2.0 * i * std::conj(b) * nb;
    dy[2 * j] = rate.real();
    dy[2 * j + 1] = rate.imag();
  }
}

}  // namespace casclab
