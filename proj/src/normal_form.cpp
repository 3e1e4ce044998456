#include "cascadelab/normal_form.hpp"

#include <algorithm>
#include <cmath>

#ifdef CASCADELAB_HAVE_OPENMP
#include <omp.h>
#endif

#include "cascadelab/integrator.hpp"

namespace casclab {

namespace {

long long divisor_of(const LatticePoint& n1, const LatticePoint& n2,
                     const LatticePoint& n3, const LatticePoint& n4) {
  return norm2(n1) - norm2(n2) + norm2(n3) - norm2(n4);
}

bool convolution_matches(const LatticePoint& n1, const LatticePoint& n2,
                         const LatticePoint& n3, const LatticePoint& n4) {
  return n1[0] - n2[0] + n3[0] == n4[0] && n1[1] - n2[1] + n3[1] == n4[1];
}

}  // namespace

cplx generator_coefficient(const LatticePoint& n1, const LatticePoint& n2,
                           const LatticePoint& n3, const LatticePoint& n4) {
  if (!convolution_matches(n1, n2, n3, n4)) return {0.0, 0.0};
  const long long d = divisor_of(n1, n2, n3, n4);
  if (d == 0) return {0.0, 0.0};
  return cplx{0.0, -1.0} / static_cast<double>(d);
}

bool is_resonant(const LatticePoint& n1, const LatticePoint& n2,
                 const LatticePoint& n3, const LatticePoint& n4) {
  return convolution_matches(n1, n2, n3, n4) && divisor_of(n1, n2, n3, n4) == 0;
}

NormalFormSystem::NormalFormSystem(
    const std::vector<LatticePoint>& seed_support) {
  if (seed_support.empty())
    throw PreconditionViolation("normal form system needs a nonempty support");
  support_ = convolution_closure(seed_support);
  long long x1 = support_[0][0], y1 = support_[0][1];
  x0_ = x1;
  y0_ = y1;
  for (const LatticePoint& p : support_) {
    x0_ = std::min(x0_, p[0]);
    x1 = std::max(x1, p[0]);
    y0_ = std::min(y0_, p[1]);
    y1 = std::max(y1, p[1]);
  }
  width_ = x1 - x0_ + 1;
  height_ = y1 - y0_ + 1;
  grid_.assign(static_cast<std::size_t>(width_ * height_), -1);
  for (int i = 0; i < static_cast<int>(support_.size()); ++i)
    grid_[static_cast<std::size_t>((support_[i][0] - x0_) * height_ +
                                   (support_[i][1] - y0_))] = i;
}

int NormalFormSystem::find(const LatticePoint& n) const {
  if (n[0] < x0_ || n[0] >= x0_ + width_ || n[1] < y0_ || n[1] >= y0_ + height_)
    return -1;
  return grid_[static_cast<std::size_t>((n[0] - x0_) * height_ +
                                        (n[1] - y0_))];
}

std::vector<cplx> NormalFormSystem::apply_field(const std::vector<cplx>& a,
                                                FieldKind kind) const {
  const int S = static_cast<int>(support_.size());
  if (static_cast<int>(a.size()) != S)
    throw PreconditionViolation("amplitude vector does not match the support");
  std::vector<cplx> out(S);
#ifdef CASCADELAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (int o = 0; o < S; ++o) {
    const LatticePoint& n = support_[o];
    cplx sum{0.0, 0.0};
    for (int i1 = 0; i1 < S; ++i1) {
      const LatticePoint& n1 = support_[i1];
      const cplx a1 = a[i1];
      for (int i2 = 0; i2 < S; ++i2) {
        const LatticePoint& n2 = support_[i2];
        const LatticePoint n3{n[0] - n1[0] + n2[0], n[1] - n1[1] + n2[1]};
        const int i3 = find(n3);
        if (i3 < 0) continue;
        const long long d = norm2(n1) - norm2(n2) + norm2(n3) - norm2(n);
        if (kind == FieldKind::Generator) {
          if (d == 0) continue;
          sum += (1.0 / static_cast<double>(d)) * a1 * std::conj(a[i2]) * a[i3];
        } else {
          if (kind == FieldKind::Resonant && d != 0) continue;
          sum += a1 * std::conj(a[i2]) * a[i3];
        }
      }
    }
    if (kind == FieldKind::Generator) {
      out[o] = sum;
    } else {
      out[o] =
          cplx{0.0, 1.0} * (static_cast<double>(norm2(n)) * a[o] + sum);
    }
  }
  return out;
}

std::vector<cplx> NormalFormSystem::hamiltonian_field(
    const std::vector<cplx>& a) const {
  return apply_field(a, FieldKind::Full);
}

std::vector<cplx> NormalFormSystem::resonant_field(
    const std::vector<cplx>& a) const {
  return apply_field(a, FieldKind::Resonant);
}

std::vector<cplx> NormalFormSystem::generator_field(
    const std::vector<cplx>& a) const {
  return apply_field(a, FieldKind::Generator);
}

void NormalFormSystem::generator_tangent(const std::vector<cplx>& a,
                                         const std::vector<cplx>& v,
                                         std::vector<cplx>& rate,
                                         std::vector<cplx>& tangent_rate) const {
  const int S = static_cast<int>(support_.size());
  if (static_cast<int>(a.size()) != S || static_cast<int>(v.size()) != S)
    throw PreconditionViolation("amplitude vector does not match the support");
  rate.assign(S, cplx{0.0, 0.0});
  tangent_rate.assign(S, cplx{0.0, 0.0});
#ifdef CASCADELAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (int o = 0; o < S; ++o) {
    const LatticePoint& n = support_[o];
    cplx base{0.0, 0.0}, tan{0.0, 0.0};
    for (int i1 = 0; i1 < S; ++i1) {
      const LatticePoint& n1 = support_[i1];
      for (int i2 = 0; i2 < S; ++i2) {
        const LatticePoint& n2 = support_[i2];
        const LatticePoint n3{n[0] - n1[0] + n2[0], n[1] - n1[1] + n2[1]};
        const int i3 = find(n3);
        if (i3 < 0) continue;
        const long long d = norm2(n1) - norm2(n2) + norm2(n3) - norm2(n);
        if (d == 0) continue;
        const double c = 1.0 / static_cast<double>(d);
        const cplx a2c = std::conj(a[i2]);
        base += c * a[i1] * a2c * a[i3];
        tan += c * (v[i1] * a2c * a[i3] + a[i1] * std::conj(v[i2]) * a[i3] +
                    a[i1] * a2c * v[i3]);
      }
    }
    rate[o] = base;
    tangent_rate[o] = tan;
  }
}

double NormalFormSystem::quartic_value(const std::vector<cplx>& a,
                                       bool resonant_only) const {
  const int S = static_cast<int>(support_.size());
  double total = 0.0;
#ifdef CASCADELAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : total)
#endif
  for (int i1 = 0; i1 < S; ++i1) {
    const LatticePoint& n1 = support_[i1];
    double local = 0.0;
    for (int i2 = 0; i2 < S; ++i2) {
      const LatticePoint& n2 = support_[i2];
      for (int i3 = 0; i3 < S; ++i3) {
        const LatticePoint& n3 = support_[i3];
        const LatticePoint n4{n1[0] - n2[0] + n3[0], n1[1] - n2[1] + n3[1]};
        const int i4 = find(n4);
        if (i4 < 0) continue;
        if (resonant_only && norm2(n1) - norm2(n2) + norm2(n3) - norm2(n4) != 0)
          continue;
        local += (a[i1] * std::conj(a[i2]) * a[i3] * std::conj(a[i4])).real();
      }
    }
    total += local;
  }
  return 0.25 * total;
}

double NormalFormSystem::hamiltonian_value(const std::vector<cplx>& a) const {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d += 0.5 * static_cast<double>(norm2(support_[i])) * std::norm(a[i]);
  return d + quartic_value(a, false);
}

double NormalFormSystem::resonant_hamiltonian_value(
    const std::vector<cplx>& a) const {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d += 0.5 * static_cast<double>(norm2(support_[i])) * std::norm(a[i]);
  return d + quartic_value(a, true);
}

namespace {

std::vector<cplx> embed(const NormalFormSystem& sys,
                        const GalerkinState& alpha) {
  std::vector<cplx> a(sys.support().size(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < alpha.support.size(); ++i) {
    const int idx = sys.find(alpha.support[i]);
    if (idx < 0)
      throw PreconditionViolation("state support escapes the truncation");
    a[idx] = alpha.amplitudes[i];
  }
  return a;
}

IntegratorConfig gamma_config() {
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-20;
  cfg.max_step = 0.25;
  return cfg;
}

}  // namespace

GalerkinState gamma_flow(const NormalFormSystem& sys,
                         const GalerkinState& alpha, int direction) {
  if (direction != 1 && direction != -1)
    throw PreconditionViolation("gamma direction must be +1 or -1");
  std::vector<cplx> a = embed(sys, alpha);
  const int S = static_cast<int>(a.size());
  std::vector<double> y0(2 * S);
  for (int i = 0; i < S; ++i) {
    y0[2 * i] = a[i].real();
    y0[2 * i + 1] = a[i].imag();
  }
  RhsFn rhs = [&sys, S](double, const std::vector<double>& y,
                        std::vector<double>& dy) {
    std::vector<cplx> a(S);
    for (int i = 0; i < S; ++i) a[i] = {y[2 * i], y[2 * i + 1]};
    std::vector<cplx> r = sys.generator_field(a);
    dy.resize(y.size());
    for (int i = 0; i < S; ++i) {
      dy[2 * i] = r[i].real();
      dy[2 * i + 1] = r[i].imag();
    }
  };
  Trajectory traj = integrate(rhs, y0, 0.0, static_cast<double>(direction),
                              gamma_config());
  GalerkinState out = unflatten_state(sys.support(), traj.final_state(),
                                      alpha.time);
  return out;
}

GalerkinState gamma_truncated(const GalerkinState& alpha, int direction) {
  NormalFormSystem sys(alpha.support);
  return gamma_flow(sys, alpha, direction);
}

double remainder_field_norm(const NormalFormSystem& sys,
                            const GalerkinState& alpha) {
  std::vector<cplx> a0 = embed(sys, alpha);
  const int S = static_cast<int>(a0.size());
  const std::vector<cplx> v0 = sys.resonant_field(a0);
  std::vector<double> y0(4 * S);
  for (int i = 0; i < S; ++i) {
    y0[2 * i] = a0[i].real();
    y0[2 * i + 1] = a0[i].imag();
    y0[2 * S + 2 * i] = v0[i].real();
    y0[2 * S + 2 * i + 1] = v0[i].imag();
  }
  RhsFn rhs = [&sys, S](double, const std::vector<double>& y,
                        std::vector<double>& dy) {
    std::vector<cplx> a(S), v(S), ra, rv;
    for (int i = 0; i < S; ++i) {
      a[i] = {y[2 * i], y[2 * i + 1]};
      v[i] = {y[2 * S + 2 * i], y[2 * S + 2 * i + 1]};
    }
    sys.generator_tangent(a, v, ra, rv);
    dy.resize(y.size());
    for (int i = 0; i < S; ++i) {
      dy[2 * i] = ra[i].real();
      dy[2 * i + 1] = ra[i].imag();
      dy[2 * S + 2 * i] = rv[i].real();
      dy[2 * S + 2 * i + 1] = rv[i].imag();
    }
  };
  IntegratorConfig cfg = gamma_config();
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-30;
  Trajectory traj = integrate(rhs, y0, 0.0, 1.0, cfg);
  const std::vector<double>& yT = traj.final_state();
  std::vector<cplx> aT(S), vT(S);
  for (int i = 0; i < S; ++i) {
    aT[i] = {yT[2 * i], yT[2 * i + 1]};
    vT[i] = {yT[2 * S + 2 * i], yT[2 * S + 2 * i + 1]};
  }
  const std::vector<cplx> full = sys.hamiltonian_field(aT);
  double norm = 0.0;
  for (int i = 0; i < S; ++i) norm += std::abs(full[i] - vT[i]);
  return norm;
}

}  // namespace casclab
