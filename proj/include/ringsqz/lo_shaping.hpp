#pragma once

// Local-oscillator shaping with a single Lorentzian filter cavity.

#include <limits>

#include "ringsqz/decomposition.hpp"
#include "ringsqz/observables.hpp"

namespace ringsqz {

struct LoConfig {
  double delta_lo = 1.0;  // amplitude FWHM of the unfiltered Gaussian LO
  double gamma_f = std::numeric_limits<double>::infinity();  // filter linewidth; inf = no filter
  double delay = 0.0;

  void validate() const;
};

/// Unfiltered LO bandwidth for pump bandwidth `delta`: the pump is the
/// second harmonic of the LO pulse, so δ_lo = δ/√2. `match_pump` selects δ_lo = δ.
double default_lo_bandwidth(double delta, bool match_pump = false);

/// L(ν) ∝ exp(−4 ln2 ν²/δ_lo²) · (γ_f/2)/(−iν + γ_f/2) · e^{iντ}, unit-normalised.
ModeShape filtered_lo(const LoConfig& cfg, const FrequencyGrid& grid);

struct OverlapResult {
  double overlap = 0.0;
  double delay = 0.0;
};

/// |step · Σ a* b e^{iντ}|², maximised over τ when `optimize_delay` is set.
/// Throws std::invalid_argument when the grids differ.
OverlapResult overlap(const ModeShape& a, const ModeShape& b, bool optimize_delay);

struct FilterOptimum {
  double gamma_f = 0.0;
  double delay = 0.0;  // LoConfig::delay that realises `overlap`
  double overlap = 0.0;
  bool at_boundary = false;  // the objective peaked at a bracket end
};

struct FilterSearch {
  double gamma_min = 1e-2;
  double gamma_max = 1e3;
  std::size_t coarse_points = 41;
  double rel_tol = 1e-4;
};

/// Maximises overlap(filtered_lo, target) over γ_f on a log axis, delay
/// co-optimised. Coarse log scan, then golden section around the best point.
FilterOptimum optimize_filter(const LoConfig& templ, const ModeShape& target,
                              const FilterSearch& search = {});

/// Squeezing in dB seen by homodyne detection with `lo`, at the best phase.
double measured_squeezing(const GaussianMoments& m, const ModeShape& lo);

}  // namespace ringsqz
