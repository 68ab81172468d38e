#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ringsqz/cli/commands.hpp"

namespace ringsqz::cli {

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNotConverged = 3;

// key -> line number for `key = value` lines of a config file.
std::map<std::string, int> scan_config_lines(const std::string& path) {
  std::map<std::string, int> lines;
  std::ifstream in(path);
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    const auto eq = line.find('=');
    const auto hash = line.find('#');
    if (eq == std::string::npos || (hash != std::string::npos && hash < eq)) continue;
    std::string key = line.substr(0, eq);
    const auto b = key.find_first_not_of(" \t");
    const auto e = key.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    key = key.substr(b, e - b + 1);
    for (auto& c : key) {
      if (c == '_') c = '-';
    }
    lines[key] = no;
  }
  return lines;
}

bool on_command_line(int argc, const char* const* argv, const std::string& key) {
  const std::string flag = "--" + key;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

Header make_header(const RunConfig& cfg) {
  Header h = {{"ringsqz", kVersion}, {"command", cfg.command}};
  for (auto& kv : cfg.entries()) h.push_back(std::move(kv));
  return h;
}

// True when every gated rel_ column stays below tol.
bool converged(const Table& t, double tol) {
  for (const char* name : {"rel_K", "rel_p_ratio", "rel_db_1"}) {
    std::size_t c = 0;
    try {
      c = t.index(name);
    } catch (const std::out_of_range&) {
      continue;
    }
    for (const auto& r : t.rows) {
      if (!(r[c] < tol)) return false;
    }
  }
  return true;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pulsed squeezed-vacuum generation in a ring cavity: threshold, supermodes, "
               "squeezing and LO shaping sweeps",
               "ringsqz"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML config file with flat keys matching the long options");
  app.allow_config_extras(CLI::config_extras_mode::error);

  RunConfig cfg;
  bool print_config = false;
  double sweep_min = 0.0, sweep_max = 0.0;
  std::size_t sweep_count = 0;

  auto* g = "Cavity";
  app.add_option("--gamma-i", cfg.cavity.gamma_i, "Intrinsic loss rate")->group(g)->capture_default_str();
  app.add_option("--gamma-c", cfg.cavity.gamma_c, "Coupling rate")->group(g)->capture_default_str();
  app.add_option("--gamma-p", cfg.cavity.gamma_p, "Pump-mode linewidth")->group(g)->capture_default_str();
  app.add_option("--gamma-pc", cfg.cavity.gamma_pc, "Pump coupling rate")->group(g)->capture_default_str();
  app.add_option("--kappa", cfg.cavity.kappa, "Nonlinear coupling rate")->group(g)->capture_default_str();

  g = "Pump";
  app.add_option("--delta", cfg.delta, "Pump amplitude FWHM")->group(g)->capture_default_str();
  app.add_option("--power-fraction", cfg.power_fraction, "Intra-cavity power over threshold, in [0, 1)")
      ->group(g)
      ->capture_default_str();
  app.add_option("--power-def", cfg.power_def, "Threshold power definition: peak | energy")
      ->group(g)
      ->capture_default_str();
  app.add_flag("--both-defs", cfg.both_defs, "threshold: report both power definitions")->group(g);

  g = "Grid";
  app.add_option("--grid-points", cfg.grid_points, "Signal grid points")->group(g)->capture_default_str();
  app.add_option("--grid-span", cfg.grid_span, "Signal grid span (0: derived)")->group(g)->capture_default_str();
  app.add_option("--threshold-points", cfg.threshold_points, "Threshold grid points")
      ->group(g)
      ->capture_default_str();
  app.add_option("--threshold-span", cfg.threshold_span, "Threshold grid span (0: derived)")
      ->group(g)
      ->capture_default_str();

  g = "Local oscillator";
  app.add_option("--lo-bandwidth", cfg.lo_bandwidth, "Unfiltered LO amplitude FWHM (0: delta/sqrt 2)")
      ->group(g)
      ->capture_default_str();
  app.add_flag("--lo-match-pump", cfg.lo_match_pump, "Use the pump bandwidth for the LO")->group(g);
  app.add_option("--gamma-f", cfg.gamma_f, "Fixed filter linewidth (0: optimise)")->group(g)->capture_default_str();

  g = "Sweep";
  app.add_option("--sweep-var", cfg.sweep_var, "delta | power | gamma_p | mode")->group(g);
  auto* o_min = app.add_option("--sweep-min", sweep_min, "First sweep value")->group(g);
  auto* o_max = app.add_option("--sweep-max", sweep_max, "Last sweep value")->group(g);
  auto* o_count = app.add_option("--sweep-count", sweep_count, "Number of sweep points")->group(g);
  app.add_option("--sweep-spacing", cfg.sweep_spacing, "lin | log")->group(g);

  g = "Output";
  app.add_option("--modes", cfg.modes, "Number of characteristic modes to report")->group(g)->capture_default_str();
  app.add_flag("--nondegenerate", cfg.nondegenerate, "Signal/idler pair with identical parameters")->group(g);
  app.add_option("--out", cfg.out, "CSV output path (default stdout)")->group(g);
  app.add_option("--json", cfg.json, "Also write the table as JSON to this path")->group(g);
  app.add_option("--threads", cfg.threads, "Worker threads for sweep points")->group(g)->capture_default_str();
  app.add_flag("--convergence", cfg.convergence, "Rerun on the doubled grid and append rel_ columns")->group(g);
  app.add_option("--convergence-tol", cfg.convergence_tol, "Tolerance for the convergence gate")
      ->group(g)
      ->capture_default_str();
  app.add_flag("--print-config", print_config, "Print the resolved configuration and exit")->group(g);

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"threshold", "Threshold power ratio against pump bandwidth"},
      {"modes", "Spectral amplitude and phase of the first output supermodes"},
      {"squeeze", "Squeezing against pump power, or per mode (--sweep-var mode)"},
      {"mode-number", "Effective mode number against power, delta or gamma_p"},
      {"lo", "Filtered local oscillator overlap and measured squeezing"},
      {"convergence", "K, threshold ratio and first-mode squeezing under grid doubling"},
  };
  for (const auto& s : subs) {
    app.add_subcommand(s.name, s.help)->fallthrough()->callback([&cfg, name = s.name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return code == 0 ? 0 : kExitConfig;
  }
  if (o_min->count()) cfg.sweep_min = sweep_min;
  if (o_max->count()) cfg.sweep_max = sweep_max;
  if (o_count->count()) cfg.sweep_count = sweep_count;

  cfg.resolve();
  try {
    cfg.validate();
  } catch (const ConfigInvalid& e) {
    const auto* co = app.get_config_ptr();
    const std::string file = co->count() ? co->as<std::string>() : std::string();
    if (!file.empty() && !on_command_line(argc, argv, e.key())) {
      const auto lines = scan_config_lines(file);
      if (auto it = lines.find(e.key()); it != lines.end()) {
        err << file << ":" << it->second << ": " << e.what() << '\n';
        return kExitConfig;
      }
    }
    err << "--" << e.what() << '\n';
    return kExitConfig;
  }

  if (print_config) {
    out << "# ringsqz " << kVersion << " " << cfg.command << '\n';
    for (const auto& [k, v] : cfg.entries()) out << k << " = " << v << '\n';
    return 0;
  }

  Table table;
  try {
    table = run_command(cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  const Header header = make_header(cfg);
  if (cfg.out.empty()) {
    write_csv(out, header, table);
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      err << "error: cannot write " << cfg.out << '\n';
      return kExitRuntime;
    }
    write_csv(f, header, table);
  }
  if (!cfg.json.empty()) {
    std::ofstream f(cfg.json);
    if (!f) {
      err << "error: cannot write " << cfg.json << '\n';
      return kExitRuntime;
    }
    write_json(f, header, table);
  }

  if ((cfg.convergence || cfg.command == "convergence") && !converged(table, cfg.convergence_tol)) {
    err << "convergence: relative change above " << format_number(cfg.convergence_tol) << '\n';
    return kExitNotConverged;
  }
  return 0;
}

}  // namespace ringsqz::cli
