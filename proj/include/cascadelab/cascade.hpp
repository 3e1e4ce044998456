#pragma once

#include <vector>

#include "cascadelab/integrator.hpp"
#include "cascadelab/saddle.hpp"
#include "cascadelab/toy.hpp"

namespace casclab {

struct CascadeParams {
  ToyParams toy;
  double shoot_tolerance = 1e-9;   // Newton target on (p2, q2) at Sigma_j^in
  double per_saddle_budget = 300.0;
  int search_depth = 25;           // Newton iterations per saddle
  IntegratorConfig integ{1e-11, 1e-13, 0.5, 1e4};

  // Experiment constants (measured-scale choices, not theoretical values).
  double c_hat = 0.005;    // corridor depth scale: |p1| ~ c_hat delta ln(1/delta)
  double seed_scale = 0.5; // first saddle seed p2(0) = seed_scale sqrt(delta)

  void validate() const;  // throws PreconditionViolation
};

struct ModeTableRow {
  int saddle = 0;          // active saddle index j of the interval
  double t0 = 0.0, t1 = 0.0;
  std::vector<double> max_mag;  // per-mode max |b_k| over [t0, t1]
  bool off_corridor_ok = true;  // max |b_k| < delta^nu for k outside {j-1,j,j+1}
};

struct CascadeReport {
  std::vector<double> transition_times;  // strictly increasing
  std::vector<ModeTableRow> mode_table;
  double h_drift = 0.0, m_drift = 0.0;   // relative drifts
  double total_time = 0.0;
  std::vector<bool> success;             // per interval
  double time_constant = 0.0;  // max (t_{j+1}-t_j)/ln(1/delta), measured K
  double endpoint_mag = 0.0;   // |b_{N-1}(T0)|
  double start_mag = 0.0;      // |b_3(0)|
};

struct CascadeResult {
  ToyState initial;
  CascadeReport report;
  Trajectory trajectory;  // stitched [0, T0] orbit
};

// Searches the initial condition near T_3 whose orbit shadows the chain of
// heteroclinic connections up to T_{N-1}, shooting on the complex seed of
// mode j+1 for each saddle j so the orbit enters the transfer corridor
// (target (p2, q2) = (x2*, 0) on Sigma_j^in).
CascadeResult search_cascade_orbit(const CascadeParams& params);

// Report for an arbitrary trajectory: transitions are estimated as the times
// where argmax_j |b_j| switches.  search_cascade_orbit replaces them with the
// exact section-hit times it recorded.
CascadeReport cascade_diagnostics(const Trajectory& traj,
                                  const CascadeParams& params);

}  // namespace casclab
