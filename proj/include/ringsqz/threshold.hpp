#pragma once

// Parametric oscillation threshold from the classical intra-cavity gain
// ⟨ȧ⟩ = −γ/2 ⟨a⟩ + E ⟨a⟩*: oscillation starts when the largest Takagi value
// of E reaches γ/2. Detuning does not enter this criterion.

#include <Eigen/Dense>
#include <string_view>

#include "ringsqz/grid.hpp"

namespace ringsqz {

enum class PowerDefinition {
  temporal_peak,  // max_t |ε(t)|²
  pulse_energy,   // γ · step/(2π) · Σ|ε(μ)|²
};

PowerDefinition parse_power_definition(std::string_view name);
std::string_view to_string(PowerDefinition def);

struct ThresholdResult {
  double lambda0 = 0.0;          // largest Takagi value of E at the probe
  double amplitude_scale = 0.0;  // (γ/2)/lambda0
  double p_ratio = 0.0;          // P_th / P_th,CW
};

/// Largest Takagi value of a complex symmetric matrix.
double max_gain(const Eigen::MatrixXcd& e);

/// Intra-cavity threshold power of a pump at threshold, normalised to the
/// CW threshold (γ/2κ)² carried through the same time-domain convention.
double threshold_power(const PumpField& at_threshold, const CavityParams& params,
                       PowerDefinition def);

/// Scales a Gaussian probe pump of FWHM `delta` to threshold on `grid`.
/// Throws std::invalid_argument for a zero probe.
ThresholdResult threshold_amplitude(cplx pump_peak, double delta, const CavityParams& params,
                                    const FrequencyGrid& grid,
                                    PowerDefinition def = PowerDefinition::temporal_peak);

/// P_th/P_th,CW for bandwidth `delta`; delta == 0 is the CW reference and
/// returns exactly 1.
double threshold_power_ratio(double delta, const CavityParams& params, const FrequencyGrid& grid,
                             PowerDefinition def = PowerDefinition::temporal_peak);

}  // namespace ringsqz
