#include "ringsqz/cli/commands.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ringsqz/decomposition.hpp"
#include "ringsqz/lo_shaping.hpp"
#include "ringsqz/observables.hpp"
#include "ringsqz/pipeline.hpp"
#include "ringsqz/threshold.hpp"

namespace ringsqz::cli {

namespace {

using Row = std::vector<double>;
using PointFn = std::function<std::vector<Row>(const PointSpec&, double)>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs fn(i) for i in [0, n) on `threads` workers. Results keep index order;
// the first failing index rethrows.
template <class T>
std::vector<T> parallel_map(std::size_t n, std::size_t threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t k = std::max<std::size_t>(1, std::min(threads, n));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < k; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Evaluates fn over the sweep (or the single configured point) on the given
// grid, then optionally again on the doubled grid.
Table sweep_table(const RunConfig& cfg, std::vector<Column> columns, const PointFn& fn) {
  std::vector<double> xs;
  std::vector<PointSpec> specs;
  if (cfg.sweep_var.empty() || cfg.sweep_var == "mode") {
    xs.push_back(kNaN);
    specs.push_back(cfg.point());
  } else {
    for (double x : sweep_values(cfg.sweep())) {
      xs.push_back(x);
      specs.push_back(cfg.point(cfg.sweep_var, x));
    }
  }
  for (const auto& s : specs) s.validate();

  auto evaluate = [&](bool fine) {
    auto blocks = parallel_map<std::vector<Row>>(specs.size(), cfg.threads, [&](std::size_t i) {
      return fn(fine ? refined(specs[i]) : specs[i], xs[i]);
    });
    Table t;
    t.columns = columns;
    for (auto& b : blocks) {
      for (auto& r : b) t.rows.push_back(std::move(r));
    }
    return t;
  };
  Table base = evaluate(false);
  if (!cfg.convergence) return base;
  return with_convergence(base, evaluate(true));
}

std::vector<double> unwrap(std::vector<double> phase) {
  for (std::size_t j = 1; j < phase.size(); ++j) {
    const double d = phase[j] - phase[j - 1];
    phase[j] -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
  }
  return phase;
}

double first_mode_fwhm(const PointResult& r) {
  if (r.decomposition.axis.sectors != 1) return kNaN;
  return mode_fwhm(characteristic_modes(r.decomposition, 0).second);
}

double db_of(const PointResult& r, std::size_t k, const CavityParams& p) {
  return squeezing_db(r.variance(k, p));
}

}  // namespace

Table cmd_threshold(const RunConfig& cfg) {
  std::vector<PowerDefinition> defs;
  std::vector<Column> cols = {{"delta", false}};
  if (cfg.both_defs) {
    defs = {PowerDefinition::temporal_peak, PowerDefinition::pulse_energy};
    cols.push_back({"p_ratio_peak"});
    cols.push_back({"p_ratio_energy"});
  } else {
    defs = {parse_power_definition(cfg.power_def)};
    cols.push_back({"p_ratio"});
  }
  cols.push_back({"lambda0"});
  return sweep_table(cfg, cols, [defs](const PointSpec& s, double x) {
    Row row = {x};
    const FrequencyGrid g = threshold_grid(s);
    double lambda0 = 0.0;
    for (auto d : defs) {
      const auto t = threshold_amplitude(cplx(1.0), s.delta, s.params, g, d);
      row.push_back(t.p_ratio);
      lambda0 = t.lambda0;
    }
    row.push_back(lambda0);
    return std::vector<Row>{row};
  });
}

Table cmd_modes(const RunConfig& cfg) {
  std::vector<Column> cols = {{"nu", false}};
  for (std::size_t k = 1; k <= cfg.modes; ++k) {
    cols.push_back({"abs_f" + std::to_string(k)});
    cols.push_back({"arg_f" + std::to_string(k)});
  }
  auto table = [&](const PointSpec& s) {
    const PointResult r = run_point(s);
    const std::size_t n = r.grid.size();
    if (cfg.modes > n) throw std::invalid_argument("more modes requested than grid points");
    Table t;
    t.columns = cols;
    t.rows.resize(n);
    for (std::size_t j = 0; j < n; ++j) t.rows[j] = {r.grid[j]};
    for (std::size_t k = 0; k < cfg.modes; ++k) {
      const ModeShape f = characteristic_modes(r.decomposition, k).second;
      std::vector<double> ph(n);
      for (std::size_t j = 0; j < n; ++j) ph[j] = std::arg(f.amplitude[j]);
      ph = unwrap(std::move(ph));
      for (std::size_t j = 0; j < n; ++j) {
        t.rows[j].push_back(std::abs(f.amplitude[j]));
        t.rows[j].push_back(ph[j]);
      }
      t.notes.emplace_back("xi_" + std::to_string(k + 1), format_number(r.decomposition.xi[k]));
    }
    return t;
  };
  const PointSpec spec = cfg.point();
  spec.validate();
  Table base = table(spec);
  if (!cfg.convergence) return base;
  return with_convergence(base, table(refined(spec)));
}

Table cmd_squeeze(const RunConfig& cfg) {
  const CavityParams params = cfg.cavity;
  if (cfg.sweep_var == "mode") {
    std::vector<std::size_t> ks;
    for (double x : sweep_values(cfg.sweep())) ks.push_back(static_cast<std::size_t>(std::lround(x)));
    return sweep_table(cfg, {{"mode", false}, {"xi"}, {"variance"}, {"db"}},
                       [ks, params](const PointSpec& s, double) {
                         const PointResult r = run_point(s);
                         std::vector<Row> rows;
                         for (std::size_t k : ks) {
                           if (k < 1 || k > r.decomposition.size()) {
                             throw std::out_of_range("mode index " + std::to_string(k) + " out of range");
                           }
                           rows.push_back({static_cast<double>(k), r.decomposition.xi[k - 1],
                                           r.variance(k - 1, params), db_of(r, k - 1, params)});
                         }
                         return rows;
                       });
  }
  std::vector<Column> cols = {{"power", false}};
  for (std::size_t k = 1; k <= cfg.modes; ++k) {
    cols.push_back({"xi_" + std::to_string(k)});
    cols.push_back({"db_" + std::to_string(k)});
  }
  const std::size_t nmodes = cfg.modes;
  return sweep_table(cfg, cols, [nmodes, params](const PointSpec& s, double x) {
    const PointResult r = run_point(s);
    Row row = {x};
    for (std::size_t k = 0; k < nmodes; ++k) {
      row.push_back(r.decomposition.xi.at(k));
      row.push_back(db_of(r, k, params));
    }
    return std::vector<Row>{row};
  });
}

Table cmd_mode_number(const RunConfig& cfg) {
  std::vector<Column> cols = {{cfg.sweep_var, false}, {"K"}, {"xi_1"}, {"db_1"}, {"fwhm_1"}, {"p_ratio"}};
  return sweep_table(cfg, cols, [](const PointSpec& s, double x) {
    const PointResult r = run_point(s);
    return std::vector<Row>{{x, r.mode_number.value, r.decomposition.xi[0], db_of(r, 0, s.params),
                             first_mode_fwhm(r), r.threshold.p_ratio}};
  });
}

Table cmd_lo(const RunConfig& cfg) {
  std::vector<Column> cols = {{"delta", false},  {"overlap_unfiltered"}, {"overlap"},
                              {"gamma_f"},       {"delay"},              {"db_unfiltered"},
                              {"db_measured"},   {"db_matched"},         {"at_boundary", false}};
  const double lo_bw = cfg.lo_bandwidth;
  const bool match = cfg.lo_match_pump;
  const double fixed_gf = cfg.gamma_f;
  return sweep_table(cfg, cols, [=](const PointSpec& s, double x) {
    const PointResult r = run_point(s);
    const ModeShape target = characteristic_modes(r.decomposition, 0).second;
    LoConfig lo;
    lo.delta_lo = lo_bw > 0.0 ? lo_bw : default_lo_bandwidth(s.delta, match);

    const OverlapResult plain = overlap(filtered_lo(lo, r.grid), target, true);
    LoConfig unfiltered = lo;
    unfiltered.delay = -plain.delay;

    FilterOptimum best;
    if (fixed_gf > 0.0) {
      LoConfig f = lo;
      f.gamma_f = fixed_gf;
      const OverlapResult o = overlap(filtered_lo(f, r.grid), target, true);
      best = {fixed_gf, -o.delay, o.overlap, false};
    } else {
      best = optimize_filter(lo, target);
    }
    LoConfig shaped = lo;
    shaped.gamma_f = best.gamma_f;
    shaped.delay = best.delay;

    return std::vector<Row>{{x, plain.overlap, best.overlap, best.gamma_f, best.delay,
                             measured_squeezing(r.moments, filtered_lo(unfiltered, r.grid)),
                             measured_squeezing(r.moments, filtered_lo(shaped, r.grid)),
                             db_of(r, 0, s.params), best.at_boundary ? 1.0 : 0.0}};
  });
}

Table cmd_convergence(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.convergence = true;
  std::vector<Column> cols = {{"delta", false}, {"K"}, {"p_ratio"}, {"db_1"}, {"xi_1"}, {"fwhm_1"}};
  return sweep_table(c, cols, [](const PointSpec& s, double) {
    const PointResult r = run_point(s);
    return std::vector<Row>{{s.delta, r.mode_number.value, r.threshold.p_ratio, db_of(r, 0, s.params),
                             r.decomposition.xi[0], first_mode_fwhm(r)}};
  });
}

Table run_command(const RunConfig& cfg) {
  if (cfg.command == "threshold") return cmd_threshold(cfg);
  if (cfg.command == "modes") return cmd_modes(cfg);
  if (cfg.command == "squeeze") return cmd_squeeze(cfg);
  if (cfg.command == "mode-number") return cmd_mode_number(cfg);
  if (cfg.command == "lo") return cmd_lo(cfg);
  if (cfg.command == "convergence") return cmd_convergence(cfg);
  throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

}  // namespace ringsqz::cli
