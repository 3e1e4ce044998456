#pragma once

#include <array>
#include <functional>
#include <vector>

#include "cascadelab/types.hpp"

namespace casclab {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.5;
  double max_time = 1e4;
};

// dy/dt = f(t, y) in flat real coordinates.
using RhsFn = std::function<void(double t, const std::vector<double>& y,
                                 std::vector<double>& dy)>;

// One accepted Dormand-Prince step together with the stage values needed for
// quartic dense output on [t0, t0+h].
struct StepRecord {
  double t0 = 0.0;
  double h = 0.0;
  std::vector<double> y0;
  std::array<std::vector<double>, 7> k;
};

struct SectionEvent;
struct SectionHit;
class Trajectory;
struct IntegratorConfig;

class Trajectory {
 public:
  double t_begin() const { return t_begin_; }
  double t_end() const { return t_end_; }
  const std::vector<double>& final_state() const { return y_final_; }

  // Dense evaluation at any t between t_begin and t_end (inclusive).
  std::vector<double> eval(double t) const;
  void eval_into(double t, std::vector<double>& out) const;

  const std::vector<StepRecord>& steps() const { return steps_; }

  // Appends a contiguous continuation (tail.t_begin() == t_end()).
  void extend(const Trajectory& tail);

 private:
  friend class Rk45Driver;
  friend Trajectory integrate(const RhsFn&, const std::vector<double>&, double,
                              double, const IntegratorConfig&);
  friend struct SectionHit;
  friend SectionHit integrate_to_section(const RhsFn&,
                                         const std::vector<double>&, double,
                                         const SectionEvent&,
                                         const IntegratorConfig&);
  double t_begin_ = 0.0;
  double t_end_ = 0.0;
  std::vector<double> y_final_;
  std::vector<StepRecord> steps_;
};

enum class EventDirection { Increasing, Decreasing, Either };

struct SectionEvent {
  std::function<double(double t, const std::vector<double>& y)> coordinate;
  double level = 0.0;
  EventDirection direction = EventDirection::Either;
};

struct SectionHit {
  std::vector<double> state;
  double t = 0.0;
  Trajectory trajectory;  // covers [t0, t]
};

// Adaptive Dormand-Prince 5(4) with quartic dense output.  Deterministic:
// identical inputs produce bit-identical trajectories.  t1 < t0 integrates
// backwards.
Trajectory integrate(const RhsFn& rhs, const std::vector<double>& y0,
                     double t0, double t1, const IntegratorConfig& cfg);

// Integrates forward from t0 until event.coordinate crosses event.level in
// the requested direction; the crossing is refined on the dense output by
// bisection + safeguarded secant to 1e-12 in time.
SectionHit integrate_to_section(const RhsFn& rhs, const std::vector<double>& y0,
                                double t0, const SectionEvent& event,
                                const IntegratorConfig& cfg);

}  // namespace casclab
