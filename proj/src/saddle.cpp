#include "cascadelab/saddle.hpp"

#include <algorithm>
#include <cmath>

namespace casclab {

namespace {

constexpr double kMassTol = 1e-6;
constexpr double kAngleTol = 1e-10;

double hyperbolic_norm2(double p, double q) { return p * p + q * q - p * q; }

void check_frame_index(int j, int N) {
  if (j < 2 || j > N - 1)
    throw PreconditionViolation("saddle frame requires 2 <= j <= N-1");
}

}  // namespace

double SaddleFrame::r2() const {
  double s = 1.0 - hyperbolic_norm2(p1, q1) - hyperbolic_norm2(p2, q2);
  for (int k = 1; k <= N; ++k)
    if (is_elliptic_slot(k)) s -= std::norm(c[k - 1]);
  return s;
}

void diagonal_from_complex(const cplx& c, double& p, double& q) {
  // Inverse of c = omega^2 p + omega q with omega = e^{2 pi i / 3}:
  // Re c = -(p+q)/2, Im c = sqrt3 (q-p)/2.
  p = -c.real() - c.imag() / kSqrt3;
  q = -c.real() + c.imag() / kSqrt3;
}

cplx complex_from_diagonal(double p, double q) {
  return kOmegaSq * p + kOmega * q;
}

SaddleFrame to_saddle_frame(const ToyState& state, int j) {
  const int N = state.N();
  check_frame_index(j, N);
  if (std::abs(toy_mass(state) - 1.0) > kMassTol)
    throw PreconditionViolation("to_saddle_frame: mass must be 1");
  const cplx bj = state.modes[j - 1];
  if (std::abs(bj) < kAngleTol)
    throw DegenerateAngle("to_saddle_frame: |b_j| too small");

  SaddleFrame f;
  f.j = j;
  f.N = N;
  f.theta = std::arg(bj);
  const cplx un = std::conj(bj) / std::abs(bj);  // e^{-i theta}
  diagonal_from_complex(state.modes[j - 2] * un, f.p1, f.q1);
  diagonal_from_complex(state.modes[j] * un, f.p2, f.q2);
  f.c.assign(N, cplx{0.0, 0.0});
  for (int k = 1; k <= N; ++k)
    if (f.is_elliptic_slot(k)) f.c[k - 1] = state.modes[k - 1] * un;
  return f;
}

ToyState from_saddle_frame(const SaddleFrame& frame) {
  check_frame_index(frame.j, frame.N);
  const double r2 = frame.r2();
  if (r2 < -1e-12)
    throw InfeasibleMass("from_saddle_frame: r^2 < 0");
  const double r = std::sqrt(std::max(0.0, r2));
  const cplx ph = std::polar(1.0, frame.theta);

  ToyState s;
  s.modes.assign(frame.N, cplx{0.0, 0.0});
  s.modes[frame.j - 1] = r * ph;
  s.modes[frame.j - 2] = complex_from_diagonal(frame.p1, frame.q1) * ph;
  s.modes[frame.j] = complex_from_diagonal(frame.p2, frame.q2) * ph;
  for (int k = 1; k <= frame.N; ++k)
    if (frame.is_elliptic_slot(k)) s.modes[k - 1] = frame.c[k - 1] * ph;
  return s;
}

double reduced_hamiltonian(const SaddleFrame& frame) {
  return toy_hamiltonian(from_saddle_frame(frame)) - 0.25;
}

SaddleFrameDeriv reduced_rhs(const SaddleFrame& frame) {
  const ToyState state = from_saddle_frame(frame);
  const std::vector<cplx> bdot = toy_rhs(state);
  const cplx bj = state.modes[frame.j - 1];
  const double r = std::abs(bj);
  if (r < kAngleTol)
    throw DegenerateAngle("reduced_rhs: |b_j| too small");
  const cplx un = std::conj(bj) / r;  // e^{-i theta}

  SaddleFrameDeriv d;
  const cplx cj_dot_raw = bdot[frame.j - 1] * un;
  d.theta = cj_dot_raw.imag() / r;
  d.r = cj_dot_raw.real();
  const cplx iw{0.0, 1.0};
  auto subtract = [&](int k) {
    return bdot[k - 1] * un - iw * d.theta * (state.modes[k - 1] * un);
  };
  diagonal_from_complex(subtract(frame.j - 1), d.p1, d.q1);
  diagonal_from_complex(subtract(frame.j + 1), d.p2, d.q2);
  d.c.assign(frame.N, cplx{0.0, 0.0});
  for (int k = 1; k <= frame.N; ++k)
    if (frame.is_elliptic_slot(k)) d.c[k - 1] = subtract(k);
  return d;
}

namespace {

// Dense linear solve (partial pivoting); small systems only.
std::vector<double> solve_dense(std::vector<std::vector<double>> A,
                                std::vector<double> b) {
  const size_t n = A.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    const double d = A[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      const double f = A[r][col] / d;
      if (f == 0.0) continue;
      for (size_t c2 = col; c2 < n; ++c2) A[r][c2] -= f * A[col][c2];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (size_t ri = n; ri-- > 0;) {
    double s = b[ri];
    for (size_t c2 = ri + 1; c2 < n; ++c2) s -= A[ri][c2] * x[c2];
    x[ri] = s / A[ri][ri];
  }
  return x;
}

struct Monomial {
  int e[4];
};

std::vector<Monomial> quartic_basis() {
  std::vector<Monomial> basis;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4 - a; ++b)
      for (int c = 0; c <= 4 - a - b; ++c)
        for (int d = 0; d <= 4 - a - b - c; ++d)
          basis.push_back(Monomial{{a, b, c, d}});
  return basis;
}

}  // namespace

ReducedHamCoeffs fit_reduced_coeffs() {
  // H-tilde is -(2/sqrt3)(H - 1/4) restricted to the hyperbolic block; its
  // quadratic part is sqrt3 (p1 q1 + p2 q2) and the quartic coefficients are
  // the nu tables.  The chart Hamiltonian is an exact quartic polynomial in
  // (p1,q1,p2,q2) when the elliptic modes vanish, so a least-squares fit on
  // a tensor stencil recovers the coefficients to machine precision.
  const int j = 3, N = 6;
  auto htilde = [&](double p1, double q1, double p2, double q2) {
    SaddleFrame f;
    f.j = j;
    f.N = N;
    f.p1 = p1;
    f.q1 = q1;
    f.p2 = p2;
    f.q2 = q2;
    f.c.assign(N, cplx{0.0, 0.0});
    return -(2.0 / kSqrt3) * reduced_hamiltonian(f) -
           kSqrt3 * (p1 * q1 + p2 * q2);
  };

  const std::vector<Monomial> basis = quartic_basis();
  const size_t nb = basis.size();
  const double grid[4] = {-0.10, -0.04, 0.05, 0.11};
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (double a : grid)
    for (double b : grid)
      for (double c : grid)
        for (double d : grid) {
          std::vector<double> row(nb);
          const double v[4] = {a, b, c, d};
          for (size_t m = 0; m < nb; ++m) {
            double mono = 1.0;
            for (int q = 0; q < 4; ++q)
              for (int e = 0; e < basis[m].e[q]; ++e) mono *= v[q];
            row[m] = mono;
          }
          rows.push_back(std::move(row));
          rhs.push_back(htilde(a, b, c, d));
        }

  // Normal equations.
  std::vector<std::vector<double>> AtA(nb, std::vector<double>(nb, 0.0));
  std::vector<double> Atb(nb, 0.0);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t m = 0; m < nb; ++m) {
      Atb[m] += rows[r][m] * rhs[r];
      for (size_t m2 = m; m2 < nb; ++m2)
        AtA[m][m2] += rows[r][m] * rows[r][m2];
    }
  }
  for (size_t m = 0; m < nb; ++m)
    for (size_t m2 = 0; m2 < m; ++m2) AtA[m][m2] = AtA[m2][m];
  const std::vector<double> coef = solve_dense(AtA, Atb);

  ReducedHamCoeffs out;
  auto coeff_of = [&](int a, int b, int c, int d) {
    for (size_t m = 0; m < nb; ++m) {
      if (basis[m].e[0] == a && basis[m].e[1] == b && basis[m].e[2] == c &&
          basis[m].e[3] == d)
        return coef[m];
    }
    return 0.0;
  };
  for (int k = 1; k <= 3; ++k) out.nu_k[k] = coeff_of(k, 4 - k, 0, 0);
  for (int k = 0; k <= 2; ++k)
    for (int l = 0; l <= 2; ++l)
      out.nu_kl[k][l] = coeff_of(k, 2 - k, l, 2 - l);

  double resid = 0.0;
  for (size_t r = 0; r < rows.size(); ++r) {
    double fitv = 0.0;
    for (size_t m = 0; m < nb; ++m) fitv += rows[r][m] * coef[m];
    resid = std::max(resid, std::abs(fitv - rhs[r]));
  }
  out.fit_residual = resid;
  return out;
}

double default_nu02() {
  static const double cached = [] {
    const ReducedHamCoeffs c = fit_reduced_coeffs();
    if (!(c.nu02() > 0.0))
      throw NumericalError("default_nu02: fitted nu02 not positive");
    return c.nu02();
  }();
  return cached;
}

double transit_time(double x2_0, double sigma) {
  if (!(x2_0 > 0.0))
    throw NonPositiveInput("transit_time: x2_0 must be positive");
  return std::log(sigma / x2_0) / kSqrt3;
}

double cancellation_target(double C_delta_log, double sigma, double nu02) {
  const double f1 = sigma;  // leading-order approximation, sigma <= 0.2
  const double f2 = sigma;
  const double D = C_delta_log / (2.0 * nu02 * f1);
  if (!(D > 0.0))
    throw NoSolution("cancellation_target: D <= 0");
  auto g = [&](double x) { return x * x * std::log(f2 / x) / kSqrt3; };
  const double xpeak = f2 * std::exp(-0.5);
  if (D > g(xpeak))
    throw NoSolution("cancellation_target: D beyond max of x^2 T(x)");
  double lo = f2 * 1e-300, hi = xpeak;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < D)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-16 * hi) break;
  }
  return 0.5 * (lo + hi);
}

double cancellation_target(double C_delta_log, double sigma) {
  return cancellation_target(C_delta_log, sigma, default_nu02());
}

SaddleFrame frame_transfer(const SaddleFrame& frame) {
  check_frame_index(frame.j + 1, frame.N);
  const double rt2 = hyperbolic_norm2(frame.p2, frame.q2);
  const double rt = std::sqrt(std::max(0.0, rt2));
  if (rt <= 1e-10)
    throw DegenerateTarget("frame_transfer: mode j+1 degenerate");
  const double r = std::sqrt(std::max(0.0, frame.r2()));
  const cplx cj1 = complex_from_diagonal(frame.p2, frame.q2);
  const cplx phase = std::conj(cj1) / rt;  // e^{i(theta - theta~)}

  SaddleFrame out;
  out.j = frame.j + 1;
  out.N = frame.N;
  out.theta = frame.theta + std::arg(cj1);
  out.p1 = (r / rt) * frame.q2;
  out.q1 = (r / rt) * frame.p2;
  const cplx z = phase * frame.c[frame.j + 1];  // c_{j+2} slot, 1-based j+2
  diagonal_from_complex(z, out.p2, out.q2);
  out.c.assign(frame.N, cplx{0.0, 0.0});
  // Former hyperbolic mode j-1 becomes elliptic in the new frame.
  out.c[frame.j - 2] =
      phase * complex_from_diagonal(frame.p1, frame.q1);
  for (int k = 1; k <= frame.N; ++k) {
    if (!out.is_elliptic_slot(k)) continue;
    if (k == frame.j - 1 || !frame.is_elliptic_slot(k)) continue;
    out.c[k - 1] = phase * frame.c[k - 1];
  }
  return out;
}

double frame_p2_of_state(const std::vector<double>& y, int j) {
  const cplx bj{y[2 * (j - 1)], y[2 * (j - 1) + 1]};
  const cplx bj1{y[2 * j], y[2 * j + 1]};
  const double r = std::abs(bj);
  const cplx c = bj1 * std::conj(bj) / r;
  return -c.real() - c.imag() / kSqrt3;
}

double frame_q1_of_state(const std::vector<double>& y, int j) {
  const cplx bj{y[2 * (j - 1)], y[2 * (j - 1) + 1]};
  const cplx bjm{y[2 * (j - 2)], y[2 * (j - 2) + 1]};
  const double r = std::abs(bj);
  const cplx c = bjm * std::conj(bj) / r;
  return -c.real() + c.imag() / kSqrt3;
}

namespace {

const RhsFn kToyFlat = [](double, const std::vector<double>& y,
                          std::vector<double>& dy) { toy_rhs_flat(y, dy); };

void check_escape(const Trajectory& traj, const SaddleFrame& ref,
                  double bound) {
  for (const StepRecord& s : traj.steps()) {
    for (int k = 1; k <= ref.N; ++k) {
      if (!ref.is_elliptic_slot(k)) continue;
      const double mag = std::hypot(s.y0[2 * (k - 1)], s.y0[2 * (k - 1) + 1]);
      if (mag > bound)
        throw EscapedNeighborhood("transit left the saddle neighborhood");
    }
  }
}

}  // namespace

MapResult local_map(const SaddleFrame& entry, const MapConfig& cfg) {
  if (std::abs(entry.q1 - cfg.sigma) > 1e-8)
    throw PreconditionViolation("local_map: entry must lie on q1 = sigma");
  const ToyState s0 = from_saddle_frame(entry);
  const int j = entry.j;
  SectionEvent ev;
  ev.coordinate = [j](double, const std::vector<double>& y) {
    return frame_p2_of_state(y, j);
  };
  ev.level = cfg.sigma;
  ev.direction = EventDirection::Increasing;
  const SectionHit hit =
      integrate_to_section(kToyFlat, flatten(s0), 0.0, ev, cfg.integ);
  check_escape(hit.trajectory, entry, cfg.escape_bound);
  MapResult res;
  res.frame = to_saddle_frame(unflatten(hit.state, hit.t), j);
  res.transit_time = hit.t;
  res.trajectory = hit.trajectory;
  return res;
}

MapResult global_map(const SaddleFrame& exit, const MapConfig& cfg) {
  if (std::abs(exit.p2 - cfg.sigma) > 1e-8)
    throw PreconditionViolation("global_map: exit must lie on p2 = sigma");
  const ToyState s0 = from_saddle_frame(exit);
  const int jn = exit.j + 1;
  SectionEvent ev;
  ev.coordinate = [jn](double, const std::vector<double>& y) {
    return frame_q1_of_state(y, jn);
  };
  ev.level = cfg.sigma;
  ev.direction = EventDirection::Decreasing;
  const SectionHit hit =
      integrate_to_section(kToyFlat, flatten(s0), 0.0, ev, cfg.integ);
  MapResult res;
  res.frame = to_saddle_frame(unflatten(hit.state, hit.t), jn);
  res.transit_time = hit.t;
  res.trajectory = hit.trajectory;
  return res;
}

}  // namespace casclab
