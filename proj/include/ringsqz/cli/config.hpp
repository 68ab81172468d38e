#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ringsqz/grid.hpp"
#include "ringsqz/pipeline.hpp"

namespace ringsqz::cli {

inline constexpr const char* kVersion = "0.1.0";

// A configuration value that fails validation. `key` is the flat config key.
class ConfigInvalid : public std::invalid_argument {
 public:
  ConfigInvalid(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

enum class Spacing { linear, log };

struct SweepSpec {
  std::string var;  // delta | power | gamma_p | mode
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;
  Spacing spacing = Spacing::linear;
};

std::vector<double> sweep_values(const SweepSpec& s);

struct RunConfig {
  std::string command;

  CavityParams cavity;
  double delta = 4.0;
  double power_fraction = 0.99;

  std::size_t grid_points = 512;
  double grid_span = 0.0;  // 0: derived
  std::size_t threshold_points = 512;
  double threshold_span = 0.0;
  std::string power_def = "peak";
  bool both_defs = false;

  double lo_bandwidth = 0.0;  // 0: derived from delta
  bool lo_match_pump = false;
  double gamma_f = 0.0;       // 0: optimise

  std::size_t modes = 3;
  bool nondegenerate = false;

  // Sweep axis; unset fields take the command's default.
  std::string sweep_var;
  std::optional<double> sweep_min;
  std::optional<double> sweep_max;
  std::optional<std::size_t> sweep_count;
  std::string sweep_spacing;

  std::size_t threads = 1;
  bool convergence = false;
  double convergence_tol = 0.01;
  std::string out;
  std::string json;

  /// Fills command-specific defaults (sweep axis).
  void resolve();
  /// Throws ConfigInvalid on the first bad value.
  void validate() const;
  SweepSpec sweep() const;
  PointSpec point() const;
  /// Point with one swept variable replaced.
  PointSpec point(const std::string& var, double value) const;
  /// Flat key/value pairs in a stable order, values as written to a config file.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

std::string format_number(double v);

}  // namespace ringsqz::cli
