#include "cascadelab/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace casclab {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};

constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB[7] = {35.0 / 384,     0.0,  500.0 / 1113, 125.0 / 192,
                          -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kBhat[7] = {5179.0 / 57600,    0.0,
                             7571.0 / 16695,    393.0 / 640,
                             -92097.0 / 339200, 187.0 / 2100,
                             1.0 / 40};

// Quartic dense-output matrix: y(t0 + th*h) = y0 + h * sum_i k_i * P_i(th),
// P_i(th) = th*(BI[i][0] + th*(BI[i][1] + th*(BI[i][2] + th*BI[i][3]))).
constexpr double kBI[7][4] = {
    {1.0, -183.0 / 64, 37.0 / 12, -145.0 / 128},
    {0.0, 0.0, 0.0, 0.0},
    {0.0, 1500.0 / 371, -1000.0 / 159, 1000.0 / 371},
    {0.0, -125.0 / 32, 125.0 / 12, -375.0 / 64},
    {0.0, 9477.0 / 3392, -729.0 / 106, 25515.0 / 6784},
    {0.0, -11.0 / 7, 11.0 / 3, -55.0 / 28},
    {0.0, 3.0 / 2, -4.0, 5.0 / 2}};

void dense_eval(const StepRecord& s, double t, std::vector<double>& out) {
  const double th = (t - s.t0) / s.h;
  const size_t n = s.y0.size();
  out.assign(s.y0.begin(), s.y0.end());
  for (int i = 0; i < 7; ++i) {
    const double p =
        th * (kBI[i][0] + th * (kBI[i][1] + th * (kBI[i][2] + th * kBI[i][3])));
    const double w = s.h * p;
    if (w == 0.0) continue;
    const std::vector<double>& ki = s.k[i];
    for (size_t m = 0; m < n; ++m) out[m] += w * ki[m];
  }
}

}  // namespace

std::vector<double> Trajectory::eval(double t) const {
  std::vector<double> out;
  eval_into(t, out);
  return out;
}

void Trajectory::eval_into(double t, std::vector<double>& out) const {
  if (steps_.empty()) {
    out = y_final_;
    return;
  }
  const bool fwd = t_end_ >= t_begin_;
  const double lo = fwd ? t_begin_ : t_end_;
  const double hi = fwd ? t_end_ : t_begin_;
  const double slack = 1e-9 * (1.0 + std::abs(hi));
  if (t < lo - slack || t > hi + slack)
    throw NumericalError("Trajectory::eval: time outside covered interval");
  t = std::clamp(t, lo, hi);
  // Binary search for the step containing t.
  size_t a = 0, b = steps_.size() - 1;
  while (a < b) {
    const size_t mid = (a + b + 1) / 2;
    const double tm = steps_[mid].t0;
    if (fwd ? (t >= tm) : (t <= tm))
      a = mid;
    else
      b = mid - 1;
  }
  dense_eval(steps_[a], t, out);
}

void Trajectory::extend(const Trajectory& tail) {
  if (steps_.empty()) {
    *this = tail;
    return;
  }
  if (std::abs(tail.t_begin_ - t_end_) >
      1e-9 * (1.0 + std::abs(t_end_)))
    throw NumericalError("Trajectory::extend: tails are not contiguous");
  steps_.insert(steps_.end(), tail.steps_.begin(), tail.steps_.end());
  t_end_ = tail.t_end_;
  y_final_ = tail.y_final_;
}

class Rk45Driver {
 public:
  Rk45Driver(const RhsFn& rhs, const IntegratorConfig& cfg, size_t dim)
      : rhs_(rhs), cfg_(cfg) {
    for (auto& k : k_) k.resize(dim);
    ytmp_.resize(dim);
    ynew_.resize(dim);
  }

  // Chooses a conservative first step from the local derivative scale.
  double initial_step(double t0, const std::vector<double>& y0, double dir) {
    rhs_(t0, y0, k_[0]);
    double ynorm = 0.0, fnorm = 0.0;
    for (size_t m = 0; m < y0.size(); ++m) {
      ynorm = std::max(ynorm, std::abs(y0[m]));
      fnorm = std::max(fnorm, std::abs(k_[0][m]));
    }
    double h = 1e-3 * (1.0 + ynorm) / (1.0 + fnorm);
    h = std::min(h, cfg_.max_step);
    have_first_stage_ = true;
    return dir * h;
  }

  // Attempts one step of size h from (t, y); on acceptance appends the step
  // record to traj and updates (t, y) in place.  Returns true on acceptance
  // and updates h with the controller proposal either way.
  bool try_step(double& t, std::vector<double>& y, double& h,
                Trajectory& traj) {
    const size_t n = y.size();
    if (!have_first_stage_) {
      rhs_(t, y, k_[0]);
      have_first_stage_ = true;
    }

    for (size_t m = 0; m < n; ++m) ytmp_[m] = y[m] + h * (kA21 * k_[0][m]);
    rhs_(t + kC[1] * h, ytmp_, k_[1]);
    for (size_t m = 0; m < n; ++m)
      ytmp_[m] = y[m] + h * (kA31 * k_[0][m] + kA32 * k_[1][m]);
    rhs_(t + kC[2] * h, ytmp_, k_[2]);
    for (size_t m = 0; m < n; ++m)
      ytmp_[m] =
          y[m] + h * (kA41 * k_[0][m] + kA42 * k_[1][m] + kA43 * k_[2][m]);
    rhs_(t + kC[3] * h, ytmp_, k_[3]);
    for (size_t m = 0; m < n; ++m)
      ytmp_[m] = y[m] + h * (kA51 * k_[0][m] + kA52 * k_[1][m] +
                             kA53 * k_[2][m] + kA54 * k_[3][m]);
    rhs_(t + kC[4] * h, ytmp_, k_[4]);
    for (size_t m = 0; m < n; ++m)
      ytmp_[m] = y[m] + h * (kA61 * k_[0][m] + kA62 * k_[1][m] +
                             kA63 * k_[2][m] + kA64 * k_[3][m] +
                             kA65 * k_[4][m]);
    rhs_(t + kC[5] * h, ytmp_, k_[5]);
    for (size_t m = 0; m < n; ++m)
      ynew_[m] = y[m] + h * (kB[0] * k_[0][m] + kB[2] * k_[2][m] +
                             kB[3] * k_[3][m] + kB[4] * k_[4][m] +
                             kB[5] * k_[5][m]);
    rhs_(t + h, ynew_, k_[6]);

    // Scaled RMS error of the embedded 4th-order solution.
    double err = 0.0;
    for (size_t m = 0; m < n; ++m) {
      double e = 0.0;
      e += (kB[0] - kBhat[0]) * k_[0][m];
      e += (kB[2] - kBhat[2]) * k_[2][m];
      e += (kB[3] - kBhat[3]) * k_[3][m];
      e += (kB[4] - kBhat[4]) * k_[4][m];
      e += (kB[5] - kBhat[5]) * k_[5][m];
      e += (kB[6] - kBhat[6]) * k_[6][m];
      e *= h;
      const double sc =
          cfg_.abs_tol +
          cfg_.rel_tol * std::max(std::abs(y[m]), std::abs(ynew_[m]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / static_cast<double>(n));

    const double safety = 0.9;
    double factor = (err > 0.0) ? safety * std::pow(err, -0.2) : 5.0;
    factor = std::clamp(factor, 0.2, 5.0);

    if (err <= 1.0) {
      StepRecord rec;
      rec.t0 = t;
      rec.h = h;
      rec.y0 = y;
      for (int i = 0; i < 7; ++i) rec.k[i] = k_[i];
      traj.steps_.push_back(std::move(rec));
      t += h;
      y = ynew_;
      k_[0] = k_[6];  // FSAL
      h *= factor;
      if (std::abs(h) > cfg_.max_step)
        h = std::copysign(cfg_.max_step, h);
      return true;
    }
    h *= factor;
    if (std::abs(h) > cfg_.max_step) h = std::copysign(cfg_.max_step, h);
    return false;
  }

  void check_underflow(double t, double h) const {
    const double floor =
        16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (std::abs(h) < floor)
      throw StepUnderflow("integrator: step size underflow at t=" +
                          std::to_string(t));
  }

 private:
  const RhsFn& rhs_;
  const IntegratorConfig& cfg_;
  std::array<std::vector<double>, 7> k_;
  std::vector<double> ytmp_, ynew_;
  bool have_first_stage_ = false;
};

Trajectory integrate(const RhsFn& rhs, const std::vector<double>& y0,
                     double t0, double t1, const IntegratorConfig& cfg) {
  Trajectory traj;
  traj.t_begin_ = t0;
  traj.t_end_ = t1;
  if (t1 == t0) {
    traj.y_final_ = y0;
    return traj;
  }
  if (std::abs(t1 - t0) > cfg.max_time)
    throw BudgetExceeded("integrate: requested span exceeds max_time");
  const double dir = (t1 > t0) ? 1.0 : -1.0;
  Rk45Driver drv(rhs, cfg, y0.size());
  std::vector<double> y = y0;
  double t = t0;
  double h = drv.initial_step(t0, y0, dir);
  while (dir * (t1 - t) > 0.0) {
    const double remaining = std::abs(t1 - t);
    if (remaining < 32.0 * std::numeric_limits<double>::epsilon() *
                        std::max(1.0, std::abs(t)))
      break;
    if (dir * (t + h - t1) > 0.0) {
      h = t1 - t;
    } else {
      drv.check_underflow(t, h);
    }
    drv.try_step(t, y, h, traj);
  }
  traj.t_end_ = t;
  traj.y_final_ = y;
  return traj;
}

namespace {

double refine_crossing(const Trajectory& traj, const SectionEvent& ev,
                       double ta, double tb, double ga, double gb) {
  // Bracketed secant with bisection safeguard on the dense output.
  std::vector<double> buf;
  auto g = [&](double t) {
    traj.eval_into(t, buf);
    return ev.coordinate(t, buf) - ev.level;
  };
  for (int it = 0; it < 200; ++it) {
    const double tol = 1e-12 * std::max(1.0, std::abs(tb));
    if (std::abs(tb - ta) <= tol) break;
    double tc;
    if (ga != gb) {
      tc = ta - ga * (tb - ta) / (gb - ga);
      const double lo = std::min(ta, tb), hi = std::max(ta, tb);
      const double margin = 0.1 * (hi - lo);
      if (!(tc > lo + 1e-3 * margin && tc < hi - 1e-3 * margin))
        tc = 0.5 * (ta + tb);
    } else {
      tc = 0.5 * (ta + tb);
    }
    const double gc = g(tc);
    if ((ga <= 0.0) == (gc <= 0.0)) {
      ta = tc;
      ga = gc;
    } else {
      tb = tc;
      gb = gc;
    }
  }
  return 0.5 * (ta + tb);
}

bool direction_ok(EventDirection dir, double ga, double gb) {
  switch (dir) {
    case EventDirection::Increasing:
      return ga < 0.0 && gb >= 0.0;
    case EventDirection::Decreasing:
      return ga > 0.0 && gb <= 0.0;
    case EventDirection::Either:
      return (ga <= 0.0) != (gb <= 0.0);
  }
  return false;
}

}  // namespace

SectionHit integrate_to_section(const RhsFn& rhs, const std::vector<double>& y0,
                                double t0, const SectionEvent& event,
                                const IntegratorConfig& cfg) {
  SectionHit hit;
  const double g0 = event.coordinate(t0, y0) - event.level;
  if (event.direction == EventDirection::Either && std::abs(g0) <= 1e-10) {
    hit.state = y0;
    hit.t = t0;
    hit.trajectory.t_begin_ = t0;
    hit.trajectory.t_end_ = t0;
    hit.trajectory.y_final_ = y0;
    return hit;
  }

  Trajectory traj;
  traj.t_begin_ = t0;
  Rk45Driver drv(rhs, cfg, y0.size());
  std::vector<double> y = y0;
  double t = t0;
  double h = drv.initial_step(t0, y0, 1.0);
  double gprev = g0;
  std::vector<double> buf;

  while (t - t0 <= cfg.max_time) {
    drv.check_underflow(t, h);
    const double tprev = t;
    if (!drv.try_step(t, y, h, traj)) continue;
    traj.t_end_ = t;
    const StepRecord& s = traj.steps_.back();
    // Subsample the accepted step so non-monotone coordinates cannot hide a
    // double crossing inside one step.
    constexpr int kSub = 8;
    double ta = tprev, ga = gprev;
    for (int i = 1; i <= kSub; ++i) {
      const double tb =
          (i == kSub) ? t : s.t0 + s.h * (static_cast<double>(i) / kSub);
      traj.eval_into(tb, buf);
      const double gb = event.coordinate(tb, buf) - event.level;
      if (direction_ok(event.direction, ga, gb)) {
        const double tstar = refine_crossing(traj, event, ta, tb, ga, gb);
        traj.eval_into(tstar, buf);
        // Transversality: derivative of the monitored scalar at the crossing.
        const double dt = std::max(1e-8, 1e-6 * std::abs(s.h));
        std::vector<double> bm, bp;
        const double tm = std::max(traj.t_begin(), tstar - dt);
        const double tp = std::min(t, tstar + dt);
        traj.eval_into(tm, bm);
        traj.eval_into(tp, bp);
        const double slope = (event.coordinate(tp, bp) - event.coordinate(tm, bm)) /
                             (tp - tm);
        if (std::abs(slope) < 1e-10)
          throw TangentialCrossing(
              "integrate_to_section: tangential crossing at t=" +
              std::to_string(tstar));
        hit.t = tstar;
        hit.state = buf;
        traj.t_end_ = tstar;
        traj.y_final_ = buf;
        hit.trajectory = std::move(traj);
        return hit;
      }
      ta = tb;
      ga = gb;
    }
    gprev = ga;
  }
  throw NoCrossing("integrate_to_section: no crossing within max_time");
}

}  // namespace casclab
