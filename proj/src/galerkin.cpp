#include "cascadelab/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#ifdef CASCADELAB_HAVE_OPENMP
#include <omp.h>
#endif

#include "cascadelab/toy.hpp"

namespace casclab {

namespace {

std::string point_str(const LatticePoint& p) {
  return "(" + std::to_string(p[0]) + ", " + std::to_string(p[1]) + ")";
}

std::map<LatticePoint, int> index_of(const std::vector<LatticePoint>& pts) {
  std::map<LatticePoint, int> m;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) m.emplace(pts[i], i);
  return m;
}

}  // namespace

int GalerkinState::find(const LatticePoint& n) const {
  for (int i = 0; i < static_cast<int>(support.size()); ++i)
    if (support[i] == n) return i;
  return -1;
}

cplx GalerkinState::at(const LatticePoint& n) const {
  int i = find(n);
  return i < 0 ? cplx{0.0, 0.0} : amplitudes[i];
}

GalerkinState make_state(std::vector<LatticePoint> support) {
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  GalerkinState s;
  s.amplitudes.assign(support.size(), cplx{0.0, 0.0});
  s.support = std::move(support);
  return s;
}

std::vector<double> flatten(const GalerkinState& state) {
  std::vector<double> y(2 * state.amplitudes.size());
  for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
    y[2 * i] = state.amplitudes[i].real();
    y[2 * i + 1] = state.amplitudes[i].imag();
  }
  return y;
}

GalerkinState unflatten_state(const std::vector<LatticePoint>& support,
                              const std::vector<double>& y, double time) {
  if (y.size() != 2 * support.size())
    throw PreconditionViolation("flat state size does not match support");
  GalerkinState s;
  s.support = support;
  s.amplitudes.resize(support.size());
  for (std::size_t i = 0; i < support.size(); ++i)
    s.amplitudes[i] = {y[2 * i], y[2 * i + 1]};
  s.time = time;
  return s;
}

std::vector<ResonantTriple> resonance_partners(
    const LatticePoint& n, const std::vector<LatticePoint>& support) {
  std::set<LatticePoint> inside(support.begin(), support.end());
  std::vector<ResonantTriple> out;
  for (const LatticePoint& n1 : support)
    for (const LatticePoint& n2 : support) {
      const LatticePoint n3{n[0] - n1[0] + n2[0], n[1] - n1[1] + n2[1]};
      if (!inside.count(n3)) continue;
      if (norm2(n1) - norm2(n2) + norm2(n3) != norm2(n)) continue;
      out.push_back({n1, n2, n3, n1 != n && n3 != n});
    }
  return out;
}

std::vector<LatticePoint> convolution_closure(
    const std::vector<LatticePoint>& support) {
  std::set<LatticePoint> out(support.begin(), support.end());
  for (const LatticePoint& n1 : support)
    for (const LatticePoint& n2 : support)
      for (const LatticePoint& n3 : support)
        out.insert({n1[0] - n2[0] + n3[0], n1[1] - n2[1] + n3[1]});
  return {out.begin(), out.end()};
}

std::vector<cplx> resonant_rhs(const GalerkinState& beta,
                               const LambdaSet& lambda) {
  const auto where = index_of(lambda.points);
  std::vector<cplx> dy(beta.support.size());
  for (std::size_t i = 0; i < beta.support.size(); ++i) {
    auto it = where.find(beta.support[i]);
    if (it == where.end())
      throw UnlinkedPoint("support point " + point_str(beta.support[i]) +
                          " does not belong to the lattice set");
    const LambdaSet::Links& ln = lambda.links[it->second];
    auto amp = [&](int idx) {
      return idx < 0 ? cplx{0.0, 0.0} : beta.at(lambda.points[idx]);
    };
    const cplx b = beta.amplitudes[i];
    cplx rhs = -b * std::norm(b);
    rhs += 2.0 * amp(ln.children[0]) * amp(ln.children[1]) *
           std::conj(amp(ln.spouse));
    rhs += 2.0 * amp(ln.parents[0]) * amp(ln.parents[1]) *
           std::conj(amp(ln.sibling));
    dy[i] = cplx{0.0, 1.0} * rhs;
  }
  return dy;
}

namespace {

std::vector<cplx> full_rhs_impl(const GalerkinState& a, bool parallel) {
  const int S = static_cast<int>(a.support.size());
  const auto where = index_of(a.support);
  std::vector<cplx> dy(S);
#ifdef CASCADELAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
#endif
  for (int out = 0; out < S; ++out) {
    const LatticePoint& n = a.support[out];
    cplx sum = static_cast<double>(norm2(n)) * a.amplitudes[out];
    for (int i1 = 0; i1 < S; ++i1)
      for (int i2 = 0; i2 < S; ++i2) {
        const LatticePoint& n1 = a.support[i1];
        const LatticePoint& n2 = a.support[i2];
        const LatticePoint n3{n[0] - n1[0] + n2[0], n[1] - n1[1] + n2[1]};
        auto it = where.find(n3);
        if (it == where.end()) continue;
        sum += a.amplitudes[i1] * std::conj(a.amplitudes[i2]) *
               a.amplitudes[it->second];
      }
    dy[out] = cplx{0.0, 1.0} * sum;
  }
  (void)parallel;
  return dy;
}

}  // namespace

std::vector<cplx> full_rhs(const GalerkinState& a) {
  return full_rhs_impl(a, true);
}

std::vector<cplx> full_rhs_serial(const GalerkinState& a) {
  return full_rhs_impl(a, false);
}

double derive_gauge(const GalerkinState& beta) {
  double m = 0.0;
  for (const cplx& b : beta.amplitudes) m += std::norm(b);
  return 2.0 * m;
}

GalerkinState lift_toy_orbit(const Trajectory& toy_traj,
                             const LambdaSet& lambda, const LiftConfig& cfg,
                             double t) {
  if (cfg.lambda <= 0.0)
    throw PreconditionViolation("lift requires lambda > 0");
  const double s = t / (cfg.lambda * cfg.lambda);
  const double lo = std::min(toy_traj.t_begin(), toy_traj.t_end());
  const double hi = std::max(toy_traj.t_begin(), toy_traj.t_end());
  const double slack = 1e-9 * (1.0 + hi - lo);
  if (s < lo - slack || s > hi + slack)
    throw OutOfWindow("rescaled time " + std::to_string(s) +
                      " outside the toy trajectory window");
  const ToyState b = unflatten(toy_traj.eval(std::clamp(s, lo, hi)), s);
  if (b.N() != lambda.N())
    throw PreconditionViolation("toy mode count does not match generations");
  GalerkinState out;
  out.support = lambda.points;
  out.amplitudes.assign(lambda.points.size(), cplx{0.0, 0.0});
  out.time = t;
  for (int j = 0; j < lambda.N(); ++j)
    for (int idx : lambda.generations[j])
      out.amplitudes[idx] = b.modes[j] / cfg.lambda;
  return out;
}

GalerkinState gauge_transform(const GalerkinState& state, double G, double t,
                              int direction) {
  if (direction != 1 && direction != -1)
    throw PreconditionViolation("gauge direction must be +1 or -1");
  GalerkinState out = state;
  for (std::size_t i = 0; i < out.support.size(); ++i) {
    const double theta =
        direction * (G + static_cast<double>(norm2(out.support[i]))) * t;
    out.amplitudes[i] *= cplx{std::cos(theta), std::sin(theta)};
  }
  return out;
}

double l1_distance(const GalerkinState& x, const GalerkinState& y) {
  double sum = 0.0;
  std::set<LatticePoint> seen;
  for (std::size_t i = 0; i < x.support.size(); ++i) {
    sum += std::abs(x.amplitudes[i] - y.at(x.support[i]));
    seen.insert(x.support[i]);
  }
  for (std::size_t i = 0; i < y.support.size(); ++i)
    if (!seen.count(y.support[i])) sum += std::abs(y.amplitudes[i]);
  return sum;
}

double sobolev_norm(const GalerkinState& a, double s) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.support.size(); ++i)
    sum += std::pow(1.0 + static_cast<double>(norm2(a.support[i])), s) *
           std::norm(a.amplitudes[i]);
  return std::sqrt(sum);
}

std::vector<double> generation_sobolev(const GalerkinState& a,
                                       const LambdaSet& lambda, double s) {
  std::vector<double> out(lambda.N(), 0.0);
  for (int j = 0; j < lambda.N(); ++j)
    for (int idx : lambda.generations[j])
      out[j] += std::pow(static_cast<double>(norm2(lambda.points[idx])), s) *
                std::norm(a.at(lambda.points[idx]));
  return out;
}

RhsFn make_resonant_rhs_fn(const LambdaSet& lambda) {
  // Relative indices resolved once; the flat layout follows lambda.points.
  struct ModeLinks {
    int spouse, sibling;
    std::array<int, 2> parents, children;
  };
  std::vector<ModeLinks> links(lambda.points.size());
  for (std::size_t i = 0; i < lambda.points.size(); ++i)
    links[i] = {lambda.links[i].spouse, lambda.links[i].sibling,
                lambda.links[i].parents, lambda.links[i].children};
  return [links](double, const std::vector<double>& y,
                 std::vector<double>& dy) {
    const auto amp = [&](int idx) {
      return idx < 0 ? cplx{0.0, 0.0} : cplx{y[2 * idx], y[2 * idx + 1]};
    };
    dy.assign(y.size(), 0.0);
    for (std::size_t i = 0; i < links.size(); ++i) {
      const cplx b = amp(static_cast<int>(i));
      cplx rhs = -b * std::norm(b);
      rhs += 2.0 * amp(links[i].children[0]) * amp(links[i].children[1]) *
             std::conj(amp(links[i].spouse));
      rhs += 2.0 * amp(links[i].parents[0]) * amp(links[i].parents[1]) *
             std::conj(amp(links[i].sibling));
      const cplx d = cplx{0.0, 1.0} * rhs;
      dy[2 * i] = d.real();
      dy[2 * i + 1] = d.imag();
    }
  };
}

RhsFn make_full_rhs_fn(std::vector<LatticePoint> support) {
  struct Term {
    int out, i1, i2, i3;
  };
  const auto where = index_of(support);
  std::vector<Term> terms;
  const int S = static_cast<int>(support.size());
  for (int i1 = 0; i1 < S; ++i1)
    for (int i2 = 0; i2 < S; ++i2)
      for (int i3 = 0; i3 < S; ++i3) {
        const LatticePoint n{
            support[i1][0] - support[i2][0] + support[i3][0],
            support[i1][1] - support[i2][1] + support[i3][1]};
        auto it = where.find(n);
        if (it != where.end()) terms.push_back({it->second, i1, i2, i3});
      }
  std::vector<double> lin(S);
  for (int i = 0; i < S; ++i) lin[i] = static_cast<double>(norm2(support[i]));
  return [terms, lin](double, const std::vector<double>& y,
                      std::vector<double>& dy) {
    const int S = static_cast<int>(lin.size());
    std::vector<cplx> sum(S);
    for (int i = 0; i < S; ++i)
      sum[i] = lin[i] * cplx{y[2 * i], y[2 * i + 1]};
    for (const auto& t : terms)
      sum[t.out] += cplx{y[2 * t.i1], y[2 * t.i1 + 1]} *
                    std::conj(cplx{y[2 * t.i2], y[2 * t.i2 + 1]}) *
                    cplx{y[2 * t.i3], y[2 * t.i3 + 1]};
    dy.resize(y.size());
    for (int i = 0; i < S; ++i) {
      const cplx d = cplx{0.0, 1.0} * sum[i];
      dy[2 * i] = d.real();
      dy[2 * i + 1] = d.imag();
    }
  };
}

RotatingSystem make_rotating_system(const LambdaSet& lambda, double G) {
  RotatingSystem sys;
  sys.G = G;
  sys.lambda_size = static_cast<int>(lambda.points.size());
  sys.support = lambda.points;
  std::set<LatticePoint> inside(lambda.points.begin(), lambda.points.end());
  for (const LatticePoint& p : convolution_closure(lambda.points))
    if (!inside.count(p)) sys.support.push_back(p);
  const auto where = index_of(sys.support);
  const int L = sys.lambda_size;
  for (int i1 = 0; i1 < L; ++i1)
    for (int i2 = 0; i2 < L; ++i2)
      for (int i3 = 0; i3 < L; ++i3) {
        const LatticePoint& n1 = lambda.points[i1];
        const LatticePoint& n2 = lambda.points[i2];
        const LatticePoint& n3 = lambda.points[i3];
        const LatticePoint n{n1[0] - n2[0] + n3[0], n1[1] - n2[1] + n3[1]};
        const long long divisor = norm2(n1) - norm2(n2) + norm2(n3) - norm2(n);
        sys.terms.push_back({where.at(n), i1, i2, i3,
                             static_cast<double>(divisor)});
      }
  // Grouping by divisor lets each step reuse the oscillatory factor.
  std::stable_sort(sys.terms.begin(), sys.terms.end(),
                   [](const RotatingTerm& a, const RotatingTerm& b) {
                     return a.divisor < b.divisor;
                   });
  return sys;
}

namespace {

// delta[n] = sum_k i b_{i1} conj(b_{i2}) b_{i3} * int_t^{t+h} e^{i d tau} dtau
//            - i G b_n h
void rotating_increment(const RotatingSystem& sys, const std::vector<cplx>& b,
                        double t, double h, std::vector<cplx>& delta) {
  delta.assign(sys.support.size(), cplx{0.0, 0.0});
  const cplx iG{0.0, -sys.G};
  for (std::size_t i = 0; i < b.size(); ++i) delta[i] = iG * b[i] * h;
  double current = 0.0;
  bool have = false;
  cplx phi{h, 0.0};
  for (const RotatingTerm& term : sys.terms) {
    if (!have || term.divisor != current) {
      current = term.divisor;
      have = true;
      if (current == 0.0) {
        phi = {h, 0.0};
      } else {
        const cplx e0{std::cos(current * t), std::sin(current * t)};
        const cplx e1{std::cos(current * (t + h)),
                      std::sin(current * (t + h))};
        phi = (e1 - e0) / cplx{0.0, current};
      }
    }
    delta[term.out] += cplx{0.0, 1.0} * b[term.i1] * std::conj(b[term.i2]) *
                       b[term.i3] * phi;
  }
}

}  // namespace

void rotating_step(const RotatingSystem& sys, GalerkinState& beta, double dt) {
  if (beta.support != sys.support)
    throw PreconditionViolation("state support does not match the system");
  const double t = beta.time;
  std::vector<cplx> delta;
  rotating_increment(sys, beta.amplitudes, t, 0.5 * dt, delta);
  std::vector<cplx> half(beta.amplitudes.size());
  for (std::size_t i = 0; i < half.size(); ++i)
    half[i] = beta.amplitudes[i] + delta[i];
  rotating_increment(sys, half, t, dt, delta);
  for (std::size_t i = 0; i < half.size(); ++i) beta.amplitudes[i] += delta[i];
  beta.time = t + dt;
}

std::vector<GalerkinState> integrate_rotating(const RotatingSystem& sys,
                                              const GalerkinState& beta0,
                                              double t_end, double dt,
                                              int samples) {
  if (samples < 1 || dt <= 0.0 || t_end <= beta0.time)
    throw PreconditionViolation("integrate_rotating needs samples >= 1, "
                                "dt > 0 and t_end past the initial time");
  GalerkinState state = beta0;
  if (state.support != sys.support) {
    // Promote a Lambda-supported state onto the closure support.
    GalerkinState wide;
    wide.support = sys.support;
    wide.amplitudes.assign(sys.support.size(), cplx{0.0, 0.0});
    wide.time = state.time;
    for (std::size_t i = 0; i < state.support.size(); ++i) {
      int idx = wide.find(state.support[i]);
      if (idx < 0)
        throw PreconditionViolation("initial support escapes the closure");
      wide.amplitudes[idx] = state.amplitudes[i];
    }
    state = std::move(wide);
  }
  std::vector<GalerkinState> out;
  out.reserve(samples + 1);
  out.push_back(state);
  const double spacing = (t_end - beta0.time) / samples;
  for (int k = 1; k <= samples; ++k) {
    const int nsub = std::max(1, static_cast<int>(std::ceil(spacing / dt)));
    const double h = spacing / nsub;
    for (int step = 0; step < nsub; ++step) rotating_step(sys, state, h);
    state.time = beta0.time + k * spacing;  // avoid drift accumulation
    out.push_back(state);
  }
  return out;
}

std::vector<std::pair<double, double>> approximation_error(
    const std::vector<GalerkinState>& alpha_samples, const Trajectory& toy_traj,
    const LambdaSet& lambda, const LiftConfig& cfg) {
  std::vector<std::pair<double, double>> out;
  out.reserve(alpha_samples.size());
  for (const GalerkinState& alpha : alpha_samples) {
    const GalerkinState lifted =
        lift_toy_orbit(toy_traj, lambda, cfg, alpha.time);
    const GalerkinState target =
        gauge_transform(lifted, cfg.G, alpha.time, +1);
    out.emplace_back(alpha.time, l1_distance(alpha, target));
  }
  return out;
}

}  // namespace casclab
