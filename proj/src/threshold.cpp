#include "ringsqz/threshold.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "detail/linalg.hpp"
#include "ringsqz/system_matrices.hpp"

namespace ringsqz {

PowerDefinition parse_power_definition(std::string_view name) {
  if (name == "peak" || name == "temporal_peak") return PowerDefinition::temporal_peak;
  if (name == "energy" || name == "pulse_energy") return PowerDefinition::pulse_energy;
  throw std::invalid_argument("unknown power definition '" + std::string(name) +
                              "' (expected peak or energy)");
}

std::string_view to_string(PowerDefinition def) {
  switch (def) {
    case PowerDefinition::temporal_peak: return "peak";
    case PowerDefinition::pulse_energy: return "energy";
  }
  return "?";
}

double max_gain(const Eigen::MatrixXcd& e) { return detail::spectral_norm(e); }

double threshold_power(const PumpField& at_threshold, const CavityParams& params,
                       PowerDefinition def) {
  // A CW line of kernel weight A has time amplitude A/(2π) under the
  // step/(2π) transform, and reaches threshold at κA = γ/2.
  const double cw_amp = params.gamma() / (2.0 * params.kappa * 2.0 * std::numbers::pi);
  const double p_cw = cw_amp * cw_amp;
  switch (def) {
    case PowerDefinition::temporal_peak:
      return temporal_profile(at_threshold).peak_power / p_cw;
    case PowerDefinition::pulse_energy: {
      double sum = 0.0;
      for (const auto& a : at_threshold.amplitude) sum += std::norm(a);
      const double energy = at_threshold.grid.step() / (2.0 * std::numbers::pi) * sum;
      return params.gamma() * energy / p_cw;
    }
  }
  throw std::invalid_argument("unknown power definition");
}

ThresholdResult threshold_amplitude(cplx pump_peak, double delta, const CavityParams& params,
                                    const FrequencyGrid& grid, PowerDefinition def) {
  params.validate();
  if (pump_peak == cplx(0.0)) throw std::invalid_argument("threshold probe amplitude is zero");
  if (params.kappa == 0.0) throw std::invalid_argument("kappa = 0: no parametric gain, no threshold");
  const PumpField probe =
      intracavity_pump(gaussian_pump_input(delta, pump_peak, pump_grid_for(grid)), params);
  ThresholdResult r;
  r.lambda0 = max_gain(coupling_kernel(probe, grid, params.kappa));
  if (!(r.lambda0 > 0.0)) {
    throw std::invalid_argument("pump has no overlap with the signal grid");
  }
  r.amplitude_scale = 0.5 * params.gamma() / r.lambda0;
  r.p_ratio = threshold_power(probe.scaled(r.amplitude_scale), params, def);
  return r;
}

double threshold_power_ratio(double delta, const CavityParams& params, const FrequencyGrid& grid,
                             PowerDefinition def) {
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  if (delta == 0.0) return 1.0;
  return threshold_amplitude(cplx(1.0), delta, params, grid, def).p_ratio;
}

}  // namespace ringsqz
