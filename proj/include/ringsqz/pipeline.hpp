#pragma once

// One parameter point, end to end: threshold, pump scaling, generator,
// scattering, Bloch-Messiah and output moments.

#include <cstddef>
#include <optional>

#include "ringsqz/decomposition.hpp"
#include "ringsqz/grid.hpp"
#include "ringsqz/observables.hpp"
#include "ringsqz/system_matrices.hpp"
#include "ringsqz/threshold.hpp"

namespace ringsqz {

struct GridSpec {
  std::optional<double> span;  // unset: derived from the physical scales
  std::size_t points = 512;
};

struct PointSpec {
  CavityParams params;
  double delta = 4.0;           // pump amplitude FWHM
  double power_fraction = 0.99;  // P_cav / P_th
  GridSpec signal;
  GridSpec threshold;
  PowerDefinition power_def = PowerDefinition::temporal_peak;
  DecompositionOptions decomposition;
  bool nondegenerate = false;   // signal/idler pair with identical parameters

  /// Throws std::invalid_argument on the first violated precondition.
  void validate() const;
};

/// Signal grid: step min(δ, γ)/8 at 512 points, widened to cover the pump
/// resonance. An explicit span wins.
FrequencyGrid signal_grid(const PointSpec& spec);

/// Grid for the threshold search: span 16·max(δ, γ_p, γ).
FrequencyGrid threshold_grid(const PointSpec& spec);

/// Doubles the point count of both grids at fixed span.
PointSpec refined(PointSpec spec);

struct PointResult {
  FrequencyGrid grid;
  ThresholdResult threshold;
  double pump_scale = 0.0;  // input amplitude applied to a unit probe
  ScatteringMatrix scattering;
  SqueezingDecomposition decomposition;
  GaussianMoments moments;
  ModeNumber mode_number;

  double variance(std::size_t k, const CavityParams& params) const {
    return squeezed_variance(decomposition.xi.at(k), params);
  }
};

PointResult run_point(const PointSpec& spec);

}  // namespace ringsqz
