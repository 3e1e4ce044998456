// cascade_lab: command-line front end for the toy-model / lattice / Galerkin
// experiments.  Subcommands: toy run|hetero, lambda build|verify|sums,
// cascade search|report, galerkin compare|norms, nf check, sweep.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cascadelab/cascade.hpp"
#include "cascadelab/galerkin.hpp"
#include "cascadelab/integrator.hpp"
#include "cascadelab/io.hpp"
#include "cascadelab/lattice.hpp"
#include "cascadelab/normal_form.hpp"
#include "cascadelab/saddle.hpp"
#include "cascadelab/toy.hpp"
#include "cascadelab/types.hpp"

namespace {

using namespace casclab;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_int(long long x) { return std::to_string(x); }

// "a:b" -> [a, b]
void parse_range(const std::string& text, double& lo, double& hi) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("range", "expected lo:hi, got '" + text + "'");
  lo = std::stod(text.substr(0, colon));
  hi = std::stod(text.substr(colon + 1));
}

void write_plot_script(const std::string& prefix, const std::string& csv,
                       const std::string& title,
                       const std::vector<std::pair<int, std::string>>& series) {
  std::ostringstream gp;
  gp << "# schema " << kSchemaVersion << "\n"
     << "# gnuplot script; run: gnuplot " << prefix << ".gp\n"
     << "set datafile separator ','\n"
     << "set key outside\n"
     << "set title '" << title << "'\n"
     << "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) gp << ", \\\n     ";
    gp << "'" << csv << "' using 1:" << series[i].first << " with lines title '"
       << series[i].second << "'";
  }
  gp << "\n";
  write_text_file(prefix + ".gp", gp.str());
}

// ---------------------------------------------------------------- toy ----

int cmd_toy_run(int N, int j, const std::string& kind, double t0, double t1,
                int samples, const std::string& out) {
  ExactOrbit orbit;
  orbit.N = N;
  orbit.j = j;
  orbit.kind = kind == "periodic"  ? OrbitKind::PeriodicTj
               : kind == "hetero-" ? OrbitKind::HeteroclinicMinus
                                   : OrbitKind::HeteroclinicPlus;
  ToyState start = exact_orbit_point(orbit, t0);
  IntegratorConfig cfg;
  Trajectory traj = integrate(
      [](double, const std::vector<double>& y, std::vector<double>& dy) {
        toy_rhs_flat(y, dy);
      },
      flatten(start), t0, t1, cfg);
  std::vector<std::string> header{"t"};
  for (int k = 1; k <= N; ++k) header.push_back("abs_b" + std::to_string(k));
  header.push_back("h");
  header.push_back("M");
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i <= samples; ++i) {
    const double t = t0 + (t1 - t0) * i / samples;
    ToyState s = unflatten(traj.eval(t), t);
    std::vector<std::string> row{fmt(t)};
    for (const cplx& b : s.modes) row.push_back(fmt(std::abs(b)));
    row.push_back(fmt(toy_hamiltonian(s)));
    row.push_back(fmt(toy_mass(s)));
    rows.push_back(std::move(row));
  }
  write_text_file(out + ".csv", csv_document(header, rows));
  std::vector<std::pair<int, std::string>> series;
  for (int k = 1; k <= N; ++k)
    series.push_back({k + 1, "|b_" + std::to_string(k) + "|"});
  write_plot_script(out, out + ".csv", "toy mode magnitudes", series);
  std::cout << "wrote " << out << ".csv (" << rows.size() << " rows)\n";
  return 0;
}

int cmd_toy_hetero(int N, int j, const std::string& range, int samples,
                   const std::string& out) {
  double t0 = -3.0, t1 = 3.0;
  parse_range(range, t0, t1);
  ExactOrbit orbit;
  orbit.N = N;
  orbit.j = j;
  orbit.kind = OrbitKind::HeteroclinicPlus;
  ToyState start = exact_orbit_point(orbit, t0);
  IntegratorConfig cfg;
  Trajectory traj = integrate(
      [](double, const std::vector<double>& y, std::vector<double>& dy) {
        toy_rhs_flat(y, dy);
      },
      flatten(start), t0, t1, cfg);
  std::vector<std::vector<std::string>> rows;
  double max_dev = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = t0 + (t1 - t0) * i / samples;
    ToyState num = unflatten(traj.eval(t), t);
    ToyState exact = exact_orbit_point(orbit, t);
    double l2 = 0.0;
    for (int k = 0; k < N; ++k) l2 += std::norm(num.modes[k] - exact.modes[k]);
    l2 = std::sqrt(l2);
    max_dev = std::max(max_dev, l2);
    rows.push_back({fmt(t), fmt(std::abs(num.modes[j - 1])),
                    fmt(std::abs(exact.modes[j - 1])), fmt(l2)});
  }
  write_text_file(out + ".csv",
                  csv_document({"t", "abs_bj_integrated", "abs_bj_exact",
                                "l2_deviation"},
                               rows));
  write_plot_script(out, out + ".csv", "heteroclinic: integrated vs exact",
                    {{2, "integrated"}, {3, "exact"}, {4, "deviation"}});
  std::cout << "max l2 deviation over [" << t0 << ", " << t1
            << "]: " << max_dev << "\n";
  return max_dev < 1e-6 ? 0 : 1;
}

// ------------------------------------------------------------- lambda ----

int cmd_lambda_build(int N, int gen_size, long long radius,
                     unsigned long long seed, const std::string& out) {
  LambdaSet L = build_lambda(N, gen_size, radius, seed);
  VerificationVerdict v = verify_lambda(L);
  write_text_file(out + ".json", json_document(lambda_to_json(L)));
  write_text_file(out + "_verdict.json", json_document(verdict_to_json(v)));
  std::cout << "built " << L.points.size() << " points in " << N
            << " generations; verified=" << (v.all() ? "true" : "false")
            << "\n";
  return v.all() ? 0 : 1;
}

int cmd_lambda_verify(const std::string& in, long long radius,
                      const std::string& out) {
  std::ifstream f(in, std::ios::binary);
  if (!f) throw PreconditionViolation("cannot open: " + in);
  LambdaSet L = lambda_from_json(Json::parse(f));
  VerificationVerdict v = verify_lambda(L, radius);
  const std::string doc = json_document(verdict_to_json(v));
  if (out.empty())
    std::cout << doc;
  else
    write_text_file(out, doc);
  return v.all() ? 0 : 1;
}

int cmd_lambda_sums(const std::string& in, double s, const std::string& out) {
  std::ifstream f(in, std::ios::binary);
  if (!f) throw PreconditionViolation("cannot open: " + in);
  LambdaSet L = lambda_from_json(Json::parse(f));
  SobolevSums sums = sobolev_sums(L, s);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t j = 0; j < sums.S.size(); ++j)
    rows.push_back({fmt_int(static_cast<long long>(j) + 1), fmt(sums.S[j])});
  const std::string doc = csv_document({"generation", "S_j"}, rows);
  if (out.empty())
    std::cout << doc;
  else
    write_text_file(out + ".csv", doc);
  std::cout << "growth ratio S_{N-1}/S_3 = " << sums.growth_ratio << "\n";
  return 0;
}

// ------------------------------------------------------------ cascade ----

Json report_to_json(const CascadeReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["transition_times"] = r.transition_times;
  j["h_drift"] = r.h_drift;
  j["m_drift"] = r.m_drift;
  j["total_time"] = r.total_time;
  j["time_constant"] = r.time_constant;
  j["start_mag"] = r.start_mag;
  j["endpoint_mag"] = r.endpoint_mag;
  Json succ = Json::array();
  for (bool s : r.success) succ.push_back(s);
  j["success"] = std::move(succ);
  return j;
}

void write_mode_table(const CascadeReport& r, int N, const std::string& out) {
  std::vector<std::string> header{"saddle", "t0", "t1"};
  for (int k = 1; k <= N; ++k) header.push_back("max_abs_b" + std::to_string(k));
  header.push_back("off_corridor_ok");
  std::vector<std::vector<std::string>> rows;
  for (const ModeTableRow& row : r.mode_table) {
    std::vector<std::string> line{fmt_int(row.saddle), fmt(row.t0),
                                  fmt(row.t1)};
    for (double m : row.max_mag) line.push_back(fmt(m));
    line.push_back(row.off_corridor_ok ? "true" : "false");
    rows.push_back(std::move(line));
  }
  write_text_file(out + "_modes.csv", csv_document(header, rows));
}

int cmd_cascade(int N, double delta, double sigma, double nu,
                const std::string& out, bool emit_table) {
  CascadeParams params;
  params.toy.N = N;
  params.toy.delta = delta;
  params.toy.sigma = sigma;
  params.toy.nu = nu;
  params.validate();
  CascadeResult res = search_cascade_orbit(params);
  bool ok = !res.report.success.empty();
  for (bool s : res.report.success) ok = ok && s;
  write_text_file(out + "_report.json",
                  json_document(report_to_json(res.report)));
  write_text_file(out + "_initial.json",
                  json_document([&] {
                    Json j;
                    j["schema"] = kSchemaVersion;
                    Json modes = Json::array();
                    for (const cplx& b : res.initial.modes)
                      modes.push_back({b.real(), b.imag()});
                    j["modes"] = std::move(modes);
                    j["time"] = res.initial.time;
                    return j;
                  }()));
  if (emit_table) write_mode_table(res.report, N, out);
  std::cout << "cascade N=" << N << " delta=" << delta
            << ": success=" << (ok ? "true" : "false")
            << " T0=" << res.report.total_time
            << " h_drift=" << res.report.h_drift
            << " m_drift=" << res.report.m_drift << "\n";
  return ok ? 0 : 1;
}

// ----------------------------------------------------------- galerkin ----

int cmd_galerkin_compare(int N, int gen_size, long long radius,
                         unsigned long long seed, double lambda, double T,
                         double dt, int samples, int j,
                         const std::string& out) {
  LambdaSet L = build_lambda(N, gen_size, radius, seed);
  ExactOrbit orbit;
  orbit.N = N;
  orbit.j = j;
  orbit.kind = OrbitKind::HeteroclinicPlus;
  ToyState b0 = exact_orbit_point(orbit, 0.0);
  IntegratorConfig cfg;
  const double toy_T = T / (lambda * lambda);
  Trajectory toy = integrate(
      [](double, const std::vector<double>& y, std::vector<double>& dy) {
        toy_rhs_flat(y, dy);
      },
      flatten(b0), 0.0, toy_T * 1.0000001, cfg);
  LiftConfig lc;
  lc.lambda = lambda;
  GalerkinState lift0 = lift_toy_orbit(toy, L, lc, 0.0);
  lc.G = derive_gauge(lift0);
  RotatingSystem sys = make_rotating_system(L, lc.G);
  auto states = integrate_rotating(sys, lift0, T, dt, samples);
  std::vector<GalerkinState> alphas;
  for (const auto& s : states)
    alphas.push_back(gauge_transform(s, lc.G, s.time, +1));
  auto errs = approximation_error(alphas, toy, L, lc);
  double max_err = 0.0, closure_mass = 0.0;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < errs.size(); ++i) {
    max_err = std::max(max_err, errs[i].second);
    double cm = 0.0;
    for (int k = sys.lambda_size;
         k < static_cast<int>(states[i].amplitudes.size()); ++k)
      cm += std::abs(states[i].amplitudes[k]);
    closure_mass = std::max(closure_mass, cm);
    rows.push_back({fmt(errs[i].first), fmt(errs[i].second), fmt(cm)});
  }
  write_text_file(out + ".csv",
                  csv_document({"t", "l1_deviation", "closure_l1_mass"}, rows));
  write_plot_script(out, out + ".csv", "lift deviation",
                    {{2, "l1 deviation"}, {3, "closure mass"}});
  std::cout << "lambda=" << lambda << " max l1 deviation=" << max_err
            << " (driven closure-mode l1 mass " << closure_mass
            << "; their feedback is truncated)\n";
  return 0;
}

int cmd_galerkin_norms(const std::string& in, double s,
                       const std::string& lambda_file,
                       const std::string& out) {
  std::ifstream f(in, std::ios::binary);
  if (!f) throw PreconditionViolation("cannot open: " + in);
  GalerkinState state = state_from_json(Json::parse(f));
  std::cout << "H^" << s << " norm = " << sobolev_norm(state, s) << "\n";
  if (!lambda_file.empty()) {
    std::ifstream lf(lambda_file, std::ios::binary);
    if (!lf) throw PreconditionViolation("cannot open: " + lambda_file);
    LambdaSet L = lambda_from_json(Json::parse(lf));
    auto per_gen = generation_sobolev(state, L, s);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t jg = 0; jg < per_gen.size(); ++jg)
      rows.push_back(
          {fmt_int(static_cast<long long>(jg) + 1), fmt(per_gen[jg])});
    const std::string doc =
        csv_document({"generation", "sobolev_mass"}, rows);
    if (out.empty())
      std::cout << doc;
    else
      write_text_file(out + ".csv", doc);
  }
  return 0;
}

// ----------------------------------------------------------------- nf ----

int cmd_nf_check(unsigned seed, const std::string& out) {
  std::vector<LatticePoint> support;
  for (long long x = 0; x <= 3; ++x)
    for (long long y = 0; y <= 2; ++y) support.push_back({x, y});
  NormalFormSystem sys(support);
  std::uniform_real_distribution<double> uphase(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> umag(0.5, 1.0);
  auto state_at = [&](double eps) {
    GalerkinState s = make_state(support);
    std::mt19937 local(seed);
    for (auto& a : s.amplitudes) {
      const double phi = uphase(local);
      a = eps * umag(local) * cplx{std::cos(phi), std::sin(phi)};
    }
    return s;
  };
  const std::vector<double> gamma_eps{1e-2, 1e-3, 1e-4};
  const std::vector<double> rem_eps{1e-1, 1e-2, 1e-3};
  std::vector<std::vector<std::string>> rows;
  auto slope = [](const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = std::log(xs[i]), y = std::log(ys[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(xs.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  std::vector<double> gd, rd;
  for (double e : gamma_eps) {
    GalerkinState alpha = state_at(e);
    gd.push_back(l1_distance(gamma_flow(sys, alpha, +1), alpha));
    rows.push_back({fmt(e), "gamma_minus_id", fmt(gd.back())});
  }
  for (double e : rem_eps) {
    rd.push_back(remainder_field_norm(sys, state_at(e)));
    rows.push_back({fmt(e), "remainder_field", fmt(rd.back())});
  }
  const double s3 = slope(gamma_eps, gd), s5 = slope(rem_eps, rd);
  if (!out.empty())
    write_text_file(out + ".csv",
                    csv_document({"eps", "quantity", "l1_value"}, rows));
  std::cout << "gamma cubic slope = " << s3
            << " (expect 3), remainder slope = " << s5 << " (expect 5)\n";
  const bool ok = std::abs(s3 - 3.0) < 0.1 && std::abs(s5 - 5.0) < 0.2;
  return ok ? 0 : 1;
}

// -------------------------------------------------------------- sweep ----

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

int cmd_sweep(const std::string& config_path, const std::string& outdir,
              int workers) {
  Config cfg = load_config(config_path);
  const auto& sweep = cfg["sweep"];
  const auto cmd_it = sweep.find("command");
  if (cmd_it == sweep.end())
    throw PreconditionViolation("sweep config needs [sweep] command = ...");
  const std::string command = cmd_it->second;
  if (command != "cascade" && command != "lambda")
    throw PreconditionViolation("sweep supports command = cascade | lambda");

  // Cartesian product of the [grid] lists, applied over [cascade]/[lambda]
  // scalar defaults.
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& [key, value] : cfg["grid"]) axes.push_back({key, split_list(value)});
  std::vector<std::map<std::string, std::string>> cells{{}};
  for (const auto& [key, values] : axes) {
    std::vector<std::map<std::string, std::string>> next;
    for (const auto& cell : cells)
      for (const auto& v : values) {
        auto c = cell;
        c[key] = v;
        next.push_back(std::move(c));
      }
    cells = std::move(next);
  }
  for (auto& cell : cells)
    for (const auto& [key, value] : cfg[command])
      cell.emplace(key, value);  // defaults do not override grid values

  if (const char* env = std::getenv("CASCADE_LAB_THREADS"))
    workers = std::max(1, std::atoi(env));
  workers = std::max(1, std::min<int>(workers, static_cast<int>(cells.size())));

  std::vector<std::vector<std::string>> rows(cells.size());
  std::atomic<std::size_t> next_cell{0};
  std::atomic<int> failures{0};
  auto get = [](const std::map<std::string, std::string>& cell,
                const std::string& key, const std::string& fallback) {
    auto it = cell.find(key);
    return it == cell.end() ? fallback : it->second;
  };
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next_cell.fetch_add(1);
      if (i >= cells.size()) return;
      const auto& cell = cells[i];
      try {
        if (command == "cascade") {
          CascadeParams p;
          p.toy.N = std::stoi(get(cell, "N", "6"));
          p.toy.delta = std::stod(get(cell, "delta", "1e-3"));
          p.toy.sigma = std::stod(get(cell, "sigma", "0.15"));
          p.toy.nu = std::stod(get(cell, "nu", "0.25"));
          p.validate();
          CascadeResult res = search_cascade_orbit(p);
          bool ok = !res.report.success.empty();
          for (bool s : res.report.success) ok = ok && s;
          if (!ok) ++failures;
          rows[i] = {std::to_string(p.toy.N), fmt(p.toy.delta),
                     fmt(res.report.total_time), fmt(res.report.time_constant),
                     fmt(res.report.h_drift), fmt(res.report.m_drift),
                     ok ? "true" : "false"};
          write_text_file(outdir + "/cell_" + std::to_string(i) + ".json",
                          json_document(report_to_json(res.report)));
        } else {
          const int N = std::stoi(get(cell, "N", "3"));
          const int gen_size = std::stoi(get(cell, "gen_size", "4"));
          const long long radius = std::stoll(get(cell, "radius", "10000"));
          const unsigned long long seed = std::stoull(get(cell, "seed", "1"));
          LambdaSet L = build_lambda(N, gen_size, radius, seed);
          VerificationVerdict v = verify_lambda(L);
          if (!v.all()) ++failures;
          long long maxn2 = 0;
          for (const auto& p : L.points) maxn2 = std::max(maxn2, norm2(p));
          rows[i] = {std::to_string(N), std::to_string(gen_size),
                     std::to_string(radius), std::to_string(seed),
                     fmt_int(maxn2), v.all() ? "true" : "false"};
          write_text_file(outdir + "/cell_" + std::to_string(i) + ".json",
                          json_document(lambda_to_json(L)));
        }
      } catch (const std::exception& e) {
        ++failures;
        rows[i] = {"error", e.what()};
        while (rows[i].size() < (command == "cascade" ? 7u : 6u))
          rows[i].push_back("");
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  const std::vector<std::string> header =
      command == "cascade"
          ? std::vector<std::string>{"N", "delta", "T0", "time_constant",
                                     "h_drift", "m_drift", "success"}
          : std::vector<std::string>{"N", "gen_size", "radius", "seed",
                                     "max_norm2", "verified"};
  write_text_file(outdir + "/summary.csv", csv_document(header, rows));
  std::cout << cells.size() << " cells, " << failures.load()
            << " failures; summary in " << outdir << "/summary.csv\n";
  return failures.load() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cascade_lab: toy-model cascade, resonant lattice and "
               "Galerkin experiments"};
  app.require_subcommand(1);

  // toy
  auto* toy = app.add_subcommand("toy", "toy-model flows");
  toy->require_subcommand(1);
  int t_N = 6, t_j = 3, t_samples = 200;
  double t_t0 = 0.0, t_t1 = 10.0;
  std::string t_kind = "periodic", t_out = "toy_run", t_range = "-3:3";
  auto* toy_run = toy->add_subcommand("run", "integrate from an exact orbit");
  toy_run->add_option("--N", t_N);
  toy_run->add_option("--j", t_j);
  toy_run->add_option("--kind", t_kind)
      ->check(CLI::IsMember({"periodic", "hetero+", "hetero-"}));
  toy_run->add_option("--t0", t_t0);
  toy_run->add_option("--t1", t_t1);
  toy_run->add_option("--samples", t_samples);
  toy_run->add_option("--out", t_out);
  auto* toy_het = toy->add_subcommand("hetero", "exact vs integrated gamma_j+");
  std::string h_out = "toy_hetero";
  toy_het->add_option("--N", t_N);
  toy_het->add_option("--j", t_j);
  toy_het->add_option("--t", t_range);
  toy_het->add_option("--samples", t_samples);
  toy_het->add_option("--out", h_out);

  // lambda
  auto* lam = app.add_subcommand("lambda", "resonant lattice sets");
  lam->require_subcommand(1);
  int l_N = 3, l_gen = 4;
  long long l_radius = 10000, l_vradius = 0;
  unsigned long long l_seed = 1;
  double l_s = 1.5;
  std::string l_out = "lambda", l_in, l_vout, l_sout;
  auto* lam_build = lam->add_subcommand("build", "construct and verify");
  lam_build->add_option("--N", l_N);
  lam_build->add_option("--gen-size", l_gen);
  lam_build->add_option("--radius", l_radius);
  lam_build->add_option("--seed", l_seed);
  lam_build->add_option("--out", l_out);
  auto* lam_verify = lam->add_subcommand("verify", "verify a lambda json");
  lam_verify->add_option("--in", l_in)->required();
  lam_verify->add_option("--radius", l_vradius);
  lam_verify->add_option("--out", l_vout);
  auto* lam_sums = lam->add_subcommand("sums", "Sobolev generation sums");
  lam_sums->add_option("--in", l_in)->required();
  lam_sums->add_option("--s", l_s);
  lam_sums->add_option("--out", l_sout);

  // cascade
  auto* cas = app.add_subcommand("cascade", "toy-model cascade orbits");
  cas->require_subcommand(1);
  int c_N = 6;
  double c_delta = 1e-3, c_sigma = 0.15, c_nu = 0.25;
  std::string c_out = "cascade";
  auto* cas_search = cas->add_subcommand("search", "search the orbit");
  cas_search->add_option("--N", c_N);
  cas_search->add_option("--delta", c_delta);
  cas_search->add_option("--sigma", c_sigma);
  cas_search->add_option("--nu", c_nu);
  cas_search->add_option("--out", c_out);
  auto* cas_report = cas->add_subcommand(
      "report", "search and emit the full mode table + plot");
  cas_report->add_option("--N", c_N);
  cas_report->add_option("--delta", c_delta);
  cas_report->add_option("--sigma", c_sigma);
  cas_report->add_option("--nu", c_nu);
  cas_report->add_option("--out", c_out);

  // galerkin
  auto* gal = app.add_subcommand("galerkin", "Fourier-side flows");
  gal->require_subcommand(1);
  int g_N = 5, g_gen = 4, g_samples = 64, g_j = 2;
  long long g_radius = 100000000LL;
  unsigned long long g_seed = 1;
  double g_lambda = 4.0, g_T = 1.0, g_dt = 0.01, g_s = 1.5;
  std::string g_out = "galerkin_compare", g_in, g_lambda_file, g_nout;
  auto* gal_cmp = gal->add_subcommand(
      "compare", "rotating-frame cubic flow vs lifted toy orbit");
  gal_cmp->add_option("--N", g_N);
  gal_cmp->add_option("--gen-size", g_gen);
  gal_cmp->add_option("--radius", g_radius);
  gal_cmp->add_option("--seed", g_seed);
  gal_cmp->add_option("--lambda", g_lambda);
  gal_cmp->add_option("--T", g_T);
  gal_cmp->add_option("--dt", g_dt);
  gal_cmp->add_option("--samples", g_samples);
  gal_cmp->add_option("--j", g_j);
  gal_cmp->add_option("--out", g_out);
  auto* gal_norms = gal->add_subcommand("norms", "Sobolev norms of a state");
  gal_norms->add_option("--in", g_in)->required();
  gal_norms->add_option("--s", g_s);
  gal_norms->add_option("--lambda-file", g_lambda_file);
  gal_norms->add_option("--out", g_nout);

  // nf
  auto* nf = app.add_subcommand("nf", "normal-form scaling checks");
  nf->require_subcommand(1);
  unsigned n_seed = 17;
  std::string n_out;
  auto* nf_check = nf->add_subcommand("check", "cubic/quintic slope fits");
  nf_check->add_option("--seed", n_seed);
  nf_check->add_option("--out", n_out);

  // sweep
  auto* sw = app.add_subcommand("sweep", "Cartesian parameter grids");
  std::string s_config, s_outdir = ".";
  int s_workers = 1;
  sw->add_option("--config", s_config)->required();
  sw->add_option("--out", s_outdir);
  sw->add_option("--workers", s_workers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors (unknown flag, bad value) exit 2
  }

  try {
    if (toy_run->parsed())
      return cmd_toy_run(t_N, t_j, t_kind, t_t0, t_t1, t_samples, t_out);
    if (toy_het->parsed())
      return cmd_toy_hetero(t_N, t_j, t_range, t_samples, h_out);
    if (lam_build->parsed())
      return cmd_lambda_build(l_N, l_gen, l_radius, l_seed, l_out);
    if (lam_verify->parsed()) return cmd_lambda_verify(l_in, l_vradius, l_vout);
    if (lam_sums->parsed()) return cmd_lambda_sums(l_in, l_s, l_sout);
    if (cas_search->parsed())
      return cmd_cascade(c_N, c_delta, c_sigma, c_nu, c_out, false);
    if (cas_report->parsed())
      return cmd_cascade(c_N, c_delta, c_sigma, c_nu, c_out, true);
    if (gal_cmp->parsed())
      return cmd_galerkin_compare(g_N, g_gen, g_radius, g_seed, g_lambda, g_T,
                                  g_dt, g_samples, g_j, g_out);
    if (gal_norms->parsed())
      return cmd_galerkin_norms(g_in, g_s, g_lambda_file, g_nout);
    if (nf_check->parsed()) return cmd_nf_check(n_seed, n_out);
    if (sw->parsed()) return cmd_sweep(s_config, s_outdir, s_workers);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
