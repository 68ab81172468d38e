#include "ringsqz/cli/config.hpp"

#include <cmath>
#include <cstdio>

#include "ringsqz/threshold.hpp"

namespace ringsqz::cli {

namespace {

struct SweepDefault {
  const char* command;
  const char* var;
  double min, max;
  std::size_t count;
  const char* spacing;
};

constexpr SweepDefault kSweepDefaults[] = {
    {"threshold", "delta", 0.1, 1000.0, 24, "log"},
    {"squeeze", "power", 0.1, 0.99, 10, "lin"},
    {"mode-number", "power", 0.01, 0.99, 12, "lin"},
    {"mode-number", "delta", 0.5, 16.0, 8, "log"},
    {"mode-number", "gamma_p", 0.5, 16.0, 8, "log"},
    {"lo", "delta", 0.1, 32.0, 10, "log"},
};

bool allowed_var(const std::string& command, const std::string& var) {
  if (command == "threshold" || command == "lo") return var == "delta";
  if (command == "squeeze") return var == "power" || var == "mode";
  if (command == "mode-number") return var == "power" || var == "delta" || var == "gamma_p";
  return var.empty();
}

void require(bool ok, const char* key, const std::string& msg) {
  if (!ok) throw ConfigInvalid(key, msg);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> sweep_values(const SweepSpec& s) {
  std::vector<double> v(s.count);
  if (s.count == 1) {
    v[0] = s.min;
    return v;
  }
  const double last = static_cast<double>(s.count - 1);
  for (std::size_t i = 0; i < s.count; ++i) {
    const double t = static_cast<double>(i) / last;
    v[i] = s.spacing == Spacing::log ? s.min * std::pow(s.max / s.min, t) : s.min + (s.max - s.min) * t;
  }
  v.back() = s.max;
  return v;
}

void RunConfig::resolve() {
  for (const auto& d : kSweepDefaults) {
    if (command != d.command) continue;
    if (sweep_var.empty()) sweep_var = d.var;
    if (sweep_var == d.var) {
      if (!sweep_min) sweep_min = d.min;
      if (!sweep_max) sweep_max = d.max;
      if (!sweep_count) sweep_count = d.count;
      if (sweep_spacing.empty()) sweep_spacing = d.spacing;
    }
  }
  if (sweep_var == "mode") {
    if (!sweep_min) sweep_min = 1;
    if (!sweep_max) sweep_max = 10;
    if (!sweep_count) sweep_count = static_cast<std::size_t>(*sweep_max - *sweep_min) + 1;
    if (sweep_spacing.empty()) sweep_spacing = "lin";
  }
  if (sweep_spacing.empty() && !sweep_var.empty()) sweep_spacing = "lin";
}

void RunConfig::validate() const {
  require(std::isfinite(cavity.gamma_i) && cavity.gamma_i >= 0.0, "gamma-i", "must be >= 0");
  require(positive(cavity.gamma_c), "gamma-c", "must be > 0");
  require(positive(cavity.gamma_p), "gamma-p", "must be > 0");
  require(positive(cavity.gamma_pc) && cavity.gamma_pc <= cavity.gamma_p, "gamma-pc",
          "must lie in (0, gamma-p]");
  require(positive(cavity.kappa), "kappa", "must be > 0");
  require(positive(delta), "delta", "must be > 0");
  require(std::isfinite(power_fraction) && power_fraction >= 0.0 && power_fraction < 1.0,
          "power-fraction",
          "must lie in [0, 1); at or above threshold the output is no longer squeezed vacuum");
  require(grid_points >= 2, "grid-points", "must be >= 2");
  require(threshold_points >= 2, "threshold-points", "must be >= 2");
  require(grid_span == 0.0 || positive(grid_span), "grid-span", "must be > 0 (0 selects the default)");
  require(threshold_span == 0.0 || positive(threshold_span), "threshold-span",
          "must be > 0 (0 selects the default)");
  try {
    parse_power_definition(power_def);
  } catch (const std::invalid_argument&) {
    throw ConfigInvalid("power-def", "expected peak or energy, got '" + power_def + "'");
  }
  require(lo_bandwidth == 0.0 || positive(lo_bandwidth), "lo-bandwidth",
          "must be > 0 (0 selects the default)");
  require(gamma_f == 0.0 || positive(gamma_f), "gamma-f", "must be > 0 (0 optimises the filter)");
  require(modes >= 1, "modes", "must be >= 1");
  require(threads >= 1, "threads", "must be >= 1");
  require(positive(convergence_tol), "convergence-tol", "must be > 0");
  require(!(nondegenerate && (command == "modes" || command == "lo")), "nondegenerate",
          "not supported by '" + command + "'");

  require(allowed_var(command, sweep_var), "sweep-var",
          "'" + sweep_var + "' cannot be swept by '" + command + "'");
  if (sweep_var.empty()) return;
  require(sweep_spacing == "lin" || sweep_spacing == "log", "sweep-spacing",
          "expected lin or log, got '" + sweep_spacing + "'");
  require(sweep_min && sweep_max && sweep_count, "sweep-var",
          "sweeping '" + sweep_var + "' needs sweep-min, sweep-max and sweep-count");
  require(*sweep_count >= 1, "sweep-count", "must be >= 1");
  require(std::isfinite(*sweep_min) && std::isfinite(*sweep_max) && *sweep_min <= *sweep_max,
          "sweep-max", "must be >= sweep-min");
  if (sweep_spacing == "log") require(*sweep_min > 0.0, "sweep-min", "log spacing needs a positive minimum");
  if (sweep_var == "power") {
    require(*sweep_min >= 0.0, "sweep-min", "power fraction must be >= 0");
    require(*sweep_max < 1.0, "sweep-max",
            "power fraction must stay below 1; at or above threshold the output is no longer "
            "squeezed vacuum");
  } else if (sweep_var == "mode") {
    require(*sweep_min >= 1.0 && *sweep_max <= static_cast<double>(grid_points) &&
                std::floor(*sweep_min) == *sweep_min && std::floor(*sweep_max) == *sweep_max,
            "sweep-min", "mode indices must be integers in [1, grid-points]");
  } else {
    require(*sweep_min > 0.0, "sweep-min", sweep_var + " must be > 0");
  }
}

SweepSpec RunConfig::sweep() const {
  SweepSpec s;
  s.var = sweep_var;
  s.min = sweep_min.value_or(0.0);
  s.max = sweep_max.value_or(0.0);
  s.count = sweep_count.value_or(1);
  s.spacing = sweep_spacing == "log" ? Spacing::log : Spacing::linear;
  return s;
}

PointSpec RunConfig::point() const {
  PointSpec p;
  p.params = cavity;
  p.delta = delta;
  p.power_fraction = power_fraction;
  if (grid_span > 0.0) p.signal.span = grid_span;
  p.signal.points = grid_points;
  if (threshold_span > 0.0) p.threshold.span = threshold_span;
  p.threshold.points = threshold_points;
  p.power_def = parse_power_definition(power_def);
  p.nondegenerate = nondegenerate;
  return p;
}

PointSpec RunConfig::point(const std::string& var, double value) const {
  PointSpec p = point();
  if (var == "delta") {
    p.delta = value;
  } else if (var == "power") {
    p.power_fraction = value;
  } else if (var == "gamma_p") {
    // Keep the pump coupling ratio fixed.
    p.params.gamma_pc = cavity.gamma_pc * value / cavity.gamma_p;
    p.params.gamma_p = value;
  } else if (!var.empty() && var != "mode") {
    throw ConfigInvalid("sweep-var", "unknown variable '" + var + "'");
  }
  return p;
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  auto s = [](const std::string& v) { return "\"" + v + "\""; };
  auto z = [](std::size_t v) { return std::to_string(v); };
  std::vector<std::pair<std::string, std::string>> e = {
      {"gamma-i", format_number(cavity.gamma_i)},
      {"gamma-c", format_number(cavity.gamma_c)},
      {"gamma-p", format_number(cavity.gamma_p)},
      {"gamma-pc", format_number(cavity.gamma_pc)},
      {"kappa", format_number(cavity.kappa)},
      {"delta", format_number(delta)},
      {"power-fraction", format_number(power_fraction)},
      {"grid-points", z(grid_points)},
      {"grid-span", format_number(grid_span)},
      {"threshold-points", z(threshold_points)},
      {"threshold-span", format_number(threshold_span)},
      {"power-def", s(power_def)},
      {"both-defs", b(both_defs)},
      {"lo-bandwidth", format_number(lo_bandwidth)},
      {"lo-match-pump", b(lo_match_pump)},
      {"gamma-f", format_number(gamma_f)},
      {"modes", z(modes)},
      {"nondegenerate", b(nondegenerate)},
  };
  if (!sweep_var.empty()) {
    e.emplace_back("sweep-var", s(sweep_var));
    e.emplace_back("sweep-min", format_number(*sweep_min));
    e.emplace_back("sweep-max", format_number(*sweep_max));
    e.emplace_back("sweep-count", z(*sweep_count));
    e.emplace_back("sweep-spacing", s(sweep_spacing));
  }
  e.emplace_back("threads", z(threads));
  e.emplace_back("convergence", b(convergence));
  e.emplace_back("convergence-tol", format_number(convergence_tol));
  return e;
}

}  // namespace ringsqz::cli
