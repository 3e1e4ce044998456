#include "cascadelab/cascade.hpp"

#include <algorithm>
#include <cmath>

namespace casclab {

namespace {

const RhsFn kToyFlat = [](double, const std::vector<double>& y,
                          std::vector<double>& dy) { toy_rhs_flat(y, dy); };

// Initial condition at t = 0, expressed in the saddle-3 chart: mode 2 on the
// stable axis at depth q10, mode 4 at the complex seed c4, modes 5..N-1 at
// the elliptic seeds, mode N identically zero (invariant), |b_3| fixed by
// mass = 1.
ToyState build_initial(const CascadeParams& params, double q10,
                       const std::vector<cplx>& seeds) {
  const int N = params.toy.N;
  SaddleFrame f;
  f.j = 3;
  f.N = N;
  f.c.assign(N, cplx{0.0, 0.0});
  f.q1 = q10;
  diagonal_from_complex(seeds[3], f.p2, f.q2);  // seeds are c-values, 0-based
  for (int k = 5; k <= N - 1; ++k) f.c[k - 1] = seeds[k - 1];
  return from_saddle_frame(f);
}

struct ChainOutcome {
  SaddleFrame arrival;         // frame at the last requested Sigma_j^in
  double arrival_time = 0.0;
  std::vector<double> in_times;   // Sigma_j^in hit times, j = 4..j_target
  std::vector<double> out_times;  // Sigma_i^out hit times, i = 3..j_target-1
  Trajectory traj;                // stitched from t = 0
};

// Integrates the leg chain Sigma_3^out -> Sigma_4^in -> Sigma_4^out -> ...
// up to Sigma_{j_target}^in.  Throws integrator errors on a broken corridor.
ChainOutcome run_chain(const ToyState& ic, int j_target,
                       const CascadeParams& params) {
  const double sigma = params.toy.sigma;
  IntegratorConfig cfg = params.integ;
  cfg.max_time = params.per_saddle_budget;

  ChainOutcome out;
  std::vector<double> y = flatten(ic);
  double t = 0.0;
  bool first = true;
  for (int i = 3; i <= j_target - 1; ++i) {
    // Sigma_i^out.
    SectionEvent evo;
    evo.coordinate = [i](double, const std::vector<double>& yy) {
      return frame_p2_of_state(yy, i);
    };
    evo.level = sigma;
    evo.direction = EventDirection::Increasing;
    SectionHit hit = integrate_to_section(kToyFlat, y, t, evo, cfg);
    out.out_times.push_back(hit.t);
    if (first) {
      out.traj = std::move(hit.trajectory);
      first = false;
    } else {
      out.traj.extend(hit.trajectory);
    }
    y = hit.state;
    t = hit.t;

    // Sigma_{i+1}^in.
    const int jn = i + 1;
    SectionEvent evi;
    evi.coordinate = [jn](double, const std::vector<double>& yy) {
      return frame_q1_of_state(yy, jn);
    };
    evi.level = sigma;
    evi.direction = EventDirection::Decreasing;
    hit = integrate_to_section(kToyFlat, y, t, evi, cfg);
    out.in_times.push_back(hit.t);
    out.traj.extend(hit.trajectory);
    y = hit.state;
    t = hit.t;
  }
  out.arrival = to_saddle_frame(unflatten(y, t), j_target);
  out.arrival_time = t;
  return out;
}

// Corridor target at Sigma_j^in given the measured incoming p1.
double corridor_target(double p1_arr, const CascadeParams& params,
                       double nu02) {
  const double sigma = params.toy.sigma;
  const double delta = params.toy.delta;
  double C = std::max(std::abs(p1_arr), 1e-4 * delta);
  // Keep D on the solvable branch of x^2 T(x).
  const double xpeak = sigma * std::exp(-0.5);
  const double gmax = xpeak * xpeak * transit_time(xpeak, sigma);
  const double Cmax = 0.9 * gmax * 2.0 * nu02 * sigma;
  C = std::min(C, Cmax);
  return cancellation_target(C, sigma, nu02);
}

}  // namespace

void CascadeParams::validate() const {
  toy.validate();
  const double corridor = std::pow(toy.delta, toy.nu);
  // Disjoint saddle neighborhoods: seed amplitudes (~delta^{2nu}) must sit
  // below the section level sigma.
  if (std::pow(toy.delta, 2.0 * toy.nu) >= toy.sigma)
    throw PreconditionViolation(
        "cascade: saddle neighborhoods overlap (delta^{2nu} >= sigma)");
  if (!(shoot_tolerance < corridor))
    throw PreconditionViolation("cascade: shoot_tolerance must be < delta^nu");
}

CascadeReport cascade_diagnostics(const Trajectory& traj,
                                  const CascadeParams& params) {
  CascadeReport rep;
  const double t0 = std::min(traj.t_begin(), traj.t_end());
  const double t1 = std::max(traj.t_begin(), traj.t_end());
  rep.total_time = t1 - t0;
  const int N = params.toy.N;
  const double corridor = std::pow(params.toy.delta, params.toy.nu);

  const int K = 4000;
  std::vector<double> buf;
  double h0 = 0.0, m0 = 0.0;
  int cur_max = -1;
  double interval_start = t0;
  std::vector<double> interval_max(N, 0.0);

  auto flush_interval = [&](double t_end_interval) {
    if (cur_max < 0) return;
    ModeTableRow row;
    row.saddle = cur_max + 1;
    row.t0 = interval_start;
    row.t1 = t_end_interval;
    row.max_mag = interval_max;
    row.off_corridor_ok = true;
    for (int k = 0; k < N; ++k) {
      if (k >= cur_max - 1 && k <= cur_max + 1) continue;
      if (interval_max[k] >= corridor) row.off_corridor_ok = false;
    }
    rep.mode_table.push_back(row);
    rep.success.push_back(row.off_corridor_ok);
  };

  for (int s = 0; s <= K; ++s) {
    const double t = t0 + (t1 - t0) * (static_cast<double>(s) / K);
    traj.eval_into(t, buf);
    const ToyState st = unflatten(buf, t);
    const double h = toy_hamiltonian(st);
    const double m = toy_mass(st);
    if (s == 0) {
      h0 = h;
      m0 = m;
    }
    rep.h_drift = std::max(rep.h_drift,
                           std::abs(h - h0) / std::max(1e-300, std::abs(h0)));
    rep.m_drift = std::max(rep.m_drift,
                           std::abs(m - m0) / std::max(1e-300, std::abs(m0)));

    int amax = 0;
    double best = 0.0;
    for (int k = 0; k < N; ++k) {
      const double mag = std::abs(st.modes[k]);
      if (mag > best) {
        best = mag;
        amax = k;
      }
    }
    if (cur_max < 0) {
      cur_max = amax;
    } else if (amax != cur_max &&
               best > 1.01 * std::abs(st.modes[cur_max])) {
      flush_interval(t);
      rep.transition_times.push_back(t);
      cur_max = amax;
      interval_start = t;
      std::fill(interval_max.begin(), interval_max.end(), 0.0);
    }
    for (int k = 0; k < N; ++k)
      interval_max[k] = std::max(interval_max[k], std::abs(st.modes[k]));
  }
  flush_interval(t1);

  const double logd = std::log(1.0 / params.toy.delta);
  std::vector<double> marks;
  marks.push_back(t0);
  for (double t : rep.transition_times) marks.push_back(t);
  marks.push_back(t1);
  for (size_t i = 0; i + 1 < marks.size(); ++i)
    rep.time_constant =
        std::max(rep.time_constant, (marks[i + 1] - marks[i]) / logd);
  return rep;
}

CascadeResult search_cascade_orbit(const CascadeParams& params) {
  params.validate();
  const int N = params.toy.N;
  const double delta = params.toy.delta;
  const double sigma = params.toy.sigma;
  const double corridor = std::pow(delta, params.toy.nu);
  const double nu02 = default_nu02();
  const double sqrt_delta = std::sqrt(delta);

  auto attempt = [&](double q10) -> CascadeResult {
    std::vector<cplx> seeds(N, cplx{0.0, 0.0});
    seeds[3] = kOmegaSq * (params.seed_scale * sqrt_delta);  // c_4
    for (int k = 5; k <= N - 1; ++k)
      seeds[k - 1] = cplx{params.seed_scale * sqrt_delta, 0.0};

    // Shoot saddle by saddle on the complex seed of mode j+1 so the orbit
    // arrives on Sigma_j^in at (p2, q2) = (x2*, 0).
    for (int j = 4; j <= N - 2; ++j) {
      const int idx = j;  // 0-based slot of mode j+1 in `seeds`
      auto eval = [&](const cplx& s) {
        std::vector<cplx> trial = seeds;
        trial[idx] = s;
        const ChainOutcome ch =
            run_chain(build_initial(params, q10, trial), j, params);
        const double x2s = corridor_target(ch.arrival.p1, params, nu02);
        return std::array<double, 2>{ch.arrival.p2 - x2s, ch.arrival.q2};
      };
      cplx s = seeds[idx];
      bool converged = false;
      for (int it = 0; it < params.search_depth; ++it) {
        const auto F0 = eval(s);
        if (std::hypot(F0[0], F0[1]) < params.shoot_tolerance) {
          converged = true;
          break;
        }
        const double hstep = std::max(1e-3 * std::abs(s), 1e-5 * sqrt_delta);
        const auto Fr = eval(s + cplx{hstep, 0.0});
        const auto Fi = eval(s + cplx{0.0, hstep});
        const double J00 = (Fr[0] - F0[0]) / hstep;
        const double J10 = (Fr[1] - F0[1]) / hstep;
        const double J01 = (Fi[0] - F0[0]) / hstep;
        const double J11 = (Fi[1] - F0[1]) / hstep;
        const double det = J00 * J11 - J01 * J10;
        if (std::abs(det) < 1e-14)
          throw SearchFailed(j, "cascade: singular shooting Jacobian");
        const double dr = (J11 * F0[0] - J01 * F0[1]) / det;
        const double di = (-J10 * F0[0] + J00 * F0[1]) / det;
        s -= cplx{dr, di};
      }
      if (!converged)
        throw SearchFailed(j, "cascade: shooting did not converge at saddle " +
                                  std::to_string(j));
      seeds[idx] = s;
    }

    // Full chain to Sigma_{N-1}^in, then pick T0 where the off modes are
    // smallest while the orbit hugs T_{N-1}.
    const ToyState ic = build_initial(params, q10, seeds);
    ChainOutcome ch = run_chain(ic, N - 1, params);

    const double W = 3.0 + std::log(1.0 / delta) / (2.0 * kSqrt3);
    const Trajectory probe =
        integrate(kToyFlat, ch.traj.final_state(), ch.arrival_time,
                  ch.arrival_time + W, params.integ);
    double best_t = ch.arrival_time;
    double best_m = 1e300;
    std::vector<double> buf;
    for (int sIdx = 0; sIdx <= 600; ++sIdx) {
      const double t =
          ch.arrival_time + W * (static_cast<double>(sIdx) / 600.0);
      probe.eval_into(t, buf);
      double off = 0.0;
      for (int k = 0; k < N; ++k) {
        if (k == N - 2) continue;
        off = std::max(off, std::hypot(buf[2 * k], buf[2 * k + 1]));
      }
      if (off < best_m) {
        best_m = off;
        best_t = t;
      }
    }
    const Trajectory tail =
        integrate(kToyFlat, ch.traj.final_state(), ch.arrival_time, best_t,
                  params.integ);
    ch.traj.extend(tail);

    CascadeResult res;
    res.initial = ic;
    res.trajectory = std::move(ch.traj);
    res.report = cascade_diagnostics(res.trajectory, params);
    res.report.transition_times = ch.in_times;
    res.report.total_time = best_t;

    const double logd = std::log(1.0 / delta);
    res.report.time_constant = 0.0;
    std::vector<double> marks{0.0};
    for (double t : ch.in_times) marks.push_back(t);
    marks.push_back(best_t);
    for (size_t i = 0; i + 1 < marks.size(); ++i)
      res.report.time_constant = std::max(
          res.report.time_constant, (marks[i + 1] - marks[i]) / logd);

    res.report.start_mag = std::abs(ic.modes[2]);
    res.trajectory.eval_into(best_t, buf);
    res.report.endpoint_mag = std::hypot(buf[2 * (N - 2)], buf[2 * (N - 2) + 1]);

    // Endpoint criteria of the desk-scale Theorem 2 analogue.
    if (!(res.report.start_mag > 1.0 - corridor) ||
        !(res.report.endpoint_mag > 1.0 - corridor))
      throw SearchFailed(N - 1, "cascade: endpoint magnitudes out of bounds");
    return res;
  };

  try {
    return attempt(0.9 * corridor);
  } catch (const NumericalError&) {
    // Failure policy: halve the corridor width once and retry.
    return attempt(0.45 * corridor);
  }
}

}  // namespace casclab
