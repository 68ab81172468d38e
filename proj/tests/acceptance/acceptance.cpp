// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// here; nothing is read from the environment.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/support.hpp"
#include "ringsqz/cli/commands.hpp"
#include "ringsqz/decomposition.hpp"
#include "ringsqz/lo_shaping.hpp"
#include "ringsqz/observables.hpp"
#include "ringsqz/pipeline.hpp"
#include "ringsqz/threshold.hpp"

using namespace ringsqz;
using Eigen::MatrixXcd;

namespace tol {
constexpr double unitary_kappa0 = 1e-12;
constexpr double symplectic_default = 1e-6;
constexpr double runtime_c1 = 30.0;  // s
constexpr double bm_xi = 1e-9;
constexpr double bm_reconstruction = 1e-9;
constexpr double cw_variance = 1e-10;
constexpr double cw_db_ceiling = 9.031;
constexpr double homodyne_abs = 1e-6;
constexpr double threshold_anchor = 0.02;
constexpr double threshold_floor = 1e-2;
constexpr double runtime_c5 = 300.0;  // s
constexpr double k_flat = 0.05;
constexpr double k_ceiling = 1.5;
constexpr double k_anchor = 1.08361131675;  // δ = 16, γ_p = 2, P = 0.99, default 512-point grid
constexpr double k_anchor_rel = 1e-6;
constexpr double fwhm_slope_ratio = 0.10;
constexpr double overlap_cw = 0.99;
constexpr double overlap_broadband = 0.98;
constexpr double lo_gap_db = 0.2;
constexpr double nondegenerate_xi = 1e-8;
constexpr double convergence = 0.01;
}  // namespace tol

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Report {
  int failed = 0;
  void line(int id, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << id << "  " << name << ": " << detail << std::endl;
    if (!ok) ++failed;
  }
};

// Runs one criterion; an exception counts as a failure with its message.
void guarded(Report& rep, int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& f) {
  try {
    const auto [ok, detail] = f();
    rep.line(id, name, ok, detail);
  } catch (const std::exception& e) {
    rep.line(id, name, false, std::string("exception: ") + e.what());
  }
}

PointSpec defaults() { return PointSpec{}; }

// Shared default-point runs (criteria 1 and 4).
struct DefaultRuns {
  PointResult coarse;
  double seconds = 0.0;
};

const DefaultRuns& default_runs() {
  static const DefaultRuns runs = [] {
    DefaultRuns r;
    const auto t0 = clock_type::now();
    r.coarse = run_point(defaults());
    r.seconds = seconds_since(t0);
    return r;
  }();
  return runs;
}

std::pair<bool, std::string> c1_symplectic() {
  // κ = 0 on the default grid: the core is a pure phase per bin.
  CavityParams off;
  off.kappa = 0.0;
  const auto g = signal_grid(defaults());
  const auto pump = intracavity_pump(gaussian_pump_input(4.0, cplx(1.0), pump_grid_for(g)), off);
  const auto free = core_scattering(build_generator(pump, off, g));
  const auto n = free.core.a.rows();
  const double unitary =
      std::max((free.core.a * free.core.a.adjoint() - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(),
               free.core.b.cwiseAbs().maxCoeff());

  const auto& d = default_runs();
  const double r512 = d.coarse.scattering.symplectic_residual;
  const double r1024 = run_point(refined(defaults())).scattering.symplectic_residual;

  const bool ok = unitary < tol::unitary_kappa0 && r512 < tol::symplectic_default && r1024 < r512 &&
                  d.seconds < tol::runtime_c1;
  return {ok, "kappa=0 unitarity " + fmt(unitary) + ", residual n=512 " + fmt(r512) + ", n=1024 " + fmt(r1024) +
                  ", runtime " + fmt(d.seconds) + " s"};
}

std::pair<bool, std::string> c2_bloch_messiah() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
  double worst_xi = 0.0, worst_rec = 0.0;
  for (Eigen::Index n : {2, 8, 32}) {
    const MatrixXcd p = testing::haar_unitary(n, rng);
    const MatrixXcd q = testing::haar_unitary(n, rng);
    Eigen::VectorXd xi(n), theta(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      xi(j) = 1.6 - 1.5 * static_cast<double>(j) / static_cast<double>(n);
      theta(j) = ph(rng);
    }
    xi(1) = xi(0);  // doubly degenerate leading pair
    const auto d = bloch_messiah(testing::compose(p, xi, theta, q), testing::plain_axis(static_cast<std::size_t>(n)));
    for (Eigen::Index j = 0; j < n; ++j)
      worst_xi = std::max(worst_xi, std::abs(d.xi[static_cast<std::size_t>(j)] - xi(j)));
    worst_rec = std::max(worst_rec, d.reconstruction_residual);
  }
  return {worst_xi < tol::bm_xi && worst_rec < tol::bm_reconstruction,
          "max |xi - xi0| " + fmt(worst_xi) + ", reconstruction " + fmt(worst_rec) + " (n = 2, 8, 32)"};
}

std::pair<bool, std::string> c3_single_mode() {
  const CavityParams p;  // γ_i = γ/8
  double worst = 0.0, worst_xi = 0.0, top_db = 0.0;
  for (double e : {0.05, 0.2, 0.35, 0.45, 0.49, 0.499, 0.4999}) {
    const auto s = core_scattering(single_mode_generator(p, e));
    const auto m = output_moments(s);
    const double xi = testing::cw_xi(e, p.gamma());
    const double vmin = homodyne(m, Eigen::VectorXcd::Ones(1)).min_variance;
    worst = std::max(worst, std::abs(vmin - squeezed_variance(xi, p)));
    worst_xi = std::max(worst_xi, std::abs(bloch_messiah(s).xi[0] - xi) / xi);
    top_db = std::max(top_db, squeezing_db(vmin));
  }
  return {worst < tol::cw_variance && top_db <= tol::cw_db_ceiling,
          "max variance error " + fmt(worst) + ", highest " + fmt(top_db) + " dB, xi relative error " +
              fmt(worst_xi)};
}

std::pair<bool, std::string> c4_homodyne() {
  const auto& r = default_runs().coarse;
  const CavityParams p;
  double worst = 0.0;
  for (std::size_t k = 0; k < 5; ++k) {
    const auto h = homodyne(r.moments, characteristic_modes(r.decomposition, k).second);
    worst = std::max(worst, std::abs(h.min_variance - squeezed_variance(r.decomposition.xi[k], p)));
  }
  return {worst < tol::homodyne_abs, "max |V_hom - V_closed| over 5 modes " + fmt(worst)};
}

std::pair<bool, std::string> c5_threshold() {
  const auto t0 = clock_type::now();
  std::vector<double> deltas(24), ratio(24);
  for (std::size_t i = 0; i < 24; ++i) {
    deltas[i] = 0.1 * std::pow(1e4, static_cast<double>(i) / 23.0);
    PointSpec s;
    s.delta = deltas[i];
    ratio[i] = threshold_power_ratio(s.delta, s.params, threshold_grid(s), PowerDefinition::temporal_peak);
  }
  const double secs = seconds_since(t0);
  std::size_t rises = 0;
  for (std::size_t i = 1; i < ratio.size(); ++i)
    if (ratio[i] > ratio[i - 1]) ++rises;
  const bool ok = rises == 0 && std::abs(ratio.front() - 1.0) <= tol::threshold_anchor &&
                  ratio.back() < tol::threshold_floor && secs < tol::runtime_c5;
  const auto peak = std::max_element(ratio.begin(), ratio.end());
  return {ok, "p_ratio(0.1) " + fmt(ratio.front()) + ", p_ratio(1000) " + fmt(ratio.back()) + ", max " +
                  fmt(*peak) + " at delta " + fmt(deltas[static_cast<std::size_t>(peak - ratio.begin())]) + ", " +
                  std::to_string(rises) + " increases in 23 steps, " + fmt(secs) + " s"};
}

struct Sweep {
  std::vector<double> x, k, fwhm;
};

Sweep sweep(const std::vector<double>& xs, const std::function<PointSpec(double)>& make) {
  Sweep s;
  for (double x : xs) {
    const PointResult r = run_point(make(x));
    s.x.push_back(x);
    s.k.push_back(r.mode_number.value);
    s.fwhm.push_back(mode_fwhm(characteristic_modes(r.decomposition, 0).second));
  }
  return s;
}

std::vector<double> log_points(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
  v.back() = hi;
  return v;
}

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1]) return false;
  return true;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v[i]);
  return s;
}

const Sweep& delta_sweep() {
  static const Sweep s = sweep(log_points(0.5, 16.0, 8), [](double d) {
    PointSpec p;
    p.delta = d;
    return p;
  });
  return s;
}

std::pair<bool, std::string> c6_mode_number() {
  const Sweep low = sweep({0.001, 0.01, 0.05, 0.1}, [](double f) {
    PointSpec p;
    p.power_fraction = f;
    return p;
  });
  const Sweep high = sweep({0.1, 0.3, 0.5, 0.7, 0.9, 0.99}, [](double f) {
    PointSpec p;
    p.power_fraction = f;
    return p;
  });
  const auto [lo_k, hi_k] = std::minmax_element(low.k.begin(), low.k.end());
  const double flat = (*hi_k - *lo_k) / *lo_k;
  bool strict = true;
  for (std::size_t i = 1; i < high.k.size(); ++i) strict = strict && high.k[i] < high.k[i - 1];

  const Sweep& by_delta = delta_sweep();
  const Sweep by_gp = sweep(log_points(0.5, 16.0, 8), [](double gp) {
    PointSpec p;
    p.delta = 16.0;
    p.params.gamma_pc *= gp / p.params.gamma_p;
    p.params.gamma_p = gp;
    return p;
  });

  PointSpec anchor_spec;
  anchor_spec.delta = 16.0;
  const double anchor = run_point(anchor_spec).mode_number.value;

  const bool ok = flat < tol::k_flat && strict && nonincreasing(by_delta.k) && nonincreasing(by_gp.k) &&
                  anchor < tol::k_ceiling && std::abs(anchor - tol::k_anchor) < tol::k_anchor_rel * tol::k_anchor;
  return {ok, "K flat within " + fmt(flat) + " for P <= 0.1; K(P) [" + join(high.k) + "]; K(delta) [" +
                  join(by_delta.k) + "]; K(gamma_p) [" + join(by_gp.k) + "]; K(16) " + fmt(anchor)};
}

std::pair<bool, std::string> c7_fwhm() {
  const Sweep& s = delta_sweep();
  bool nondecreasing = true;
  for (std::size_t i = 1; i < s.fwhm.size(); ++i) nondecreasing = nondecreasing && s.fwhm[i] >= s.fwhm[i - 1];
  const std::size_t n = s.x.size();
  const double first = (s.fwhm[1] - s.fwhm[0]) / (s.x[1] - s.x[0]);
  const double last = (s.fwhm[n - 1] - s.fwhm[n - 2]) / (s.x[n - 1] - s.x[n - 2]);
  const double ratio = last / first;
  return {nondecreasing && std::abs(ratio) < tol::fwhm_slope_ratio,
          "fwhm(delta) [" + join(s.fwhm) + "], slope ratio " + fmt(ratio)};
}

std::pair<bool, std::string> c8_lo() {
  PointSpec cw;
  cw.delta = 0.1;
  const PointResult rc = run_point(cw);
  LoConfig lc;
  lc.delta_lo = default_lo_bandwidth(cw.delta);
  const double unfiltered = overlap(filtered_lo(lc, rc.grid), characteristic_modes(rc.decomposition, 0).second, true).overlap;

  PointSpec wide;
  wide.delta = 32.0;
  const PointResult rw = run_point(wide);
  const ModeShape target = characteristic_modes(rw.decomposition, 0).second;
  LoConfig lw;
  lw.delta_lo = default_lo_bandwidth(wide.delta);
  const FilterOptimum best = optimize_filter(lw, target);
  const FilterOptimum again = optimize_filter(lw, target);
  LoConfig shaped = lw;
  shaped.gamma_f = best.gamma_f;
  shaped.delay = best.delay;
  const double measured = measured_squeezing(rw.moments, filtered_lo(shaped, rw.grid));
  const double matched = squeezing_db(rw.variance(0, wide.params));
  const double gap = matched - measured;
  const bool deterministic = again.gamma_f == best.gamma_f && again.overlap == best.overlap && again.delay == best.delay;

  const bool ok = unfiltered > tol::overlap_cw && best.overlap > tol::overlap_broadband && gap < tol::lo_gap_db &&
                  deterministic;
  return {ok, "unfiltered overlap at delta 0.1 " + fmt(unfiltered) + ", optimized overlap at delta 32 " +
                  fmt(best.overlap) + " (gamma_f " + fmt(best.gamma_f) + "), gap " + fmt(gap) + " dB, " +
                  (deterministic ? "deterministic" : "NOT deterministic")};
}

std::pair<bool, std::string> c9_nondegenerate() {
  PointSpec s;
  s.signal.points = 128;
  const PointResult deg = run_point(s);
  s.nondegenerate = true;
  const PointResult joint = run_point(s);
  std::vector<double> doubled;
  for (double x : deg.decomposition.xi) doubled.insert(doubled.end(), {x, x});
  std::sort(doubled.begin(), doubled.end(), std::greater<>());
  std::vector<double> j = joint.decomposition.xi;
  std::sort(j.begin(), j.end(), std::greater<>());
  double worst = j.size() == doubled.size() ? 0.0 : INFINITY;
  for (std::size_t k = 0; k < std::min(j.size(), doubled.size()); ++k) worst = std::max(worst, std::abs(j[k] - doubled[k]));
  return {worst < tol::nondegenerate_xi, "max deviation " + fmt(worst) + " over " + std::to_string(j.size()) + " values"};
}

struct CliRun {
  int code;
  std::string out;
};

CliRun run_tool(std::vector<std::string> args) {
  args.insert(args.begin(), "ringsqz");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str() + err.str()};
}

// Largest rel_ value in a named column of a CSV table.
double column_max(const std::string& csv, const std::string& name) {
  std::istringstream in(csv);
  std::string line;
  int col = -1;
  double worst = -1.0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (col < 0) {
      const auto it = std::find(cells.begin(), cells.end(), name);
      if (it == cells.end()) return NAN;
      col = static_cast<int>(it - cells.begin());
      continue;
    }
    worst = std::max(worst, std::stod(cells.at(static_cast<std::size_t>(col))));
  }
  return worst;
}

std::pair<bool, std::string> c10_cli() {
  const std::vector<std::vector<std::string>> commands = {
      {"threshold", "--sweep-count", "4", "--both-defs"},
      {"modes"},
      {"squeeze", "--sweep-count", "3"},
      {"squeeze", "--sweep-var", "mode"},
      {"mode-number", "--sweep-count", "3"},
      {"mode-number", "--sweep-var", "delta", "--sweep-count", "3"},
      {"lo", "--sweep-count", "3"},
      {"convergence"},
  };
  std::size_t identical = 0;
  for (auto args : commands) {
    args.insert(args.end(), {"--grid-points", "96", "--threshold-points", "96", "--threads", "2"});
    const CliRun a = run_tool(args);
    const CliRun b = run_tool(args);
    if (a.out == b.out && !a.out.empty()) ++identical;
  }
  const CliRun conv = run_tool({"convergence"});
  const double dk = column_max(conv.out, "rel_K");
  const double dp = column_max(conv.out, "rel_p_ratio");
  const double dd = column_max(conv.out, "rel_db_1");
  const bool converged = dk < tol::convergence && dp < tol::convergence && dd < tol::convergence;
  return {identical == commands.size() && converged && conv.code == 0,
          std::to_string(identical) + "/" + std::to_string(commands.size()) +
              " tables byte-identical on rerun; convergence at defaults rel_K " + fmt(dk) + ", rel_p_ratio " +
              fmt(dp) + ", rel_db_1 " + fmt(dd)};
}

}  // namespace

int main() {
  Report rep;
  guarded(rep, 1, "symplectic certification", c1_symplectic);
  guarded(rep, 2, "Bloch-Messiah oracle", c2_bloch_messiah);
  guarded(rep, 3, "single-mode closed form", c3_single_mode);
  guarded(rep, 4, "homodyne cross-module identity", c4_homodyne);
  guarded(rep, 5, "threshold behaviour", c5_threshold);
  guarded(rep, 6, "mode-number trends", c6_mode_number);
  guarded(rep, 7, "FWHM saturation", c7_fwhm);
  guarded(rep, 8, "LO shaping", c8_lo);
  guarded(rep, 9, "non-degenerate equivalence", c9_nondegenerate);
  guarded(rep, 10, "determinism and convergence", c10_cli);
  std::cout << (10 - rep.failed) << "/10 criteria passed" << std::endl;
  return rep.failed == 0 ? 0 : 1;
}
