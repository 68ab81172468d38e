#pragma once

// Frequency axes, cavity rates and classical pump spectra.
//
// All rates are in units of the total signal decay rate, detunings are
// measured from the respective carrier (omega_0 for the signal, 2 omega_0 for
// the pump).

#include <complex>
#include <cstddef>
#include <vector>

namespace ringsqz {

using cplx = std::complex<double>;

/// Uniform midpoint grid of detunings centred on zero.
class FrequencyGrid {
 public:
  FrequencyGrid() = default;

  std::size_t size() const noexcept { return points_.size(); }
  double span() const noexcept { return span_; }
  double step() const noexcept { return step_; }
  const std::vector<double>& points() const noexcept { return points_; }
  double operator[](std::size_t j) const { return points_[j]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }

  friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) {
    return a.step_ == b.step_ && a.points_ == b.points_;
  }

  friend FrequencyGrid make_grid(double span, std::size_t n_points);

 private:
  double span_ = 0.0;
  double step_ = 0.0;
  std::vector<double> points_;
};

/// Grid of `n_points` midpoints ν_j = (j − (n−1)/2)·span/n.
/// Throws std::invalid_argument for span <= 0 or n_points < 2.
FrequencyGrid make_grid(double span, std::size_t n_points);

/// Pump-detuning lattice holding every pairwise sum of signal detunings.
///
/// The lattice has 2n−1 points at integer multiples of the signal step, so
/// ν_j + ν_k lands exactly on a lattice point.
FrequencyGrid pump_grid_for(const FrequencyGrid& signal);

struct CavityParams {
  double gamma_i = 0.125;  // intrinsic loss
  double gamma_c = 0.875;  // bus coupling
  double gamma_p = 2.0;    // total pump decay
  double gamma_pc = 2.0;   // pump bus coupling
  double kappa = 1.0;      // single-photon nonlinear rate

  double gamma() const noexcept { return gamma_i + gamma_c; }

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  /// Lossless cavity with total decay `gamma`.
  static CavityParams lossless(double gamma = 1.0);
};

enum class FieldKind { input, intracavity };

struct PumpField {
  FrequencyGrid grid;
  std::vector<cplx> amplitude;
  FieldKind kind = FieldKind::input;

  /// Amplitude at detuning `mu`, linear in complex amplitude between grid
  /// points. Throws CoverageError outside the grid.
  cplx at(double mu) const;

  PumpField scaled(cplx factor) const;
};

/// E_p(μ) = peak · exp(−4 ln2 · μ² / δ²), δ the amplitude FWHM.
PumpField gaussian_pump_input(double delta, cplx peak, const FrequencyGrid& grid);

/// Filters an input spectrum through the pump resonance:
/// ε(μ) = E_p(μ) · √γ_pc / (−iμ + γ_p/2).
PumpField intracavity_pump(const PumpField& input, const CavityParams& params);

struct TemporalProfile {
  std::vector<double> times;
  std::vector<cplx> samples;
  double dt = 0.0;
  double peak_power = 0.0;  // max_t |ε(t)|², refined between samples
  double peak_time = 0.0;
};

/// ε(t) = step/(2π) · Σ_m ε(μ_m) e^{−iμ_m t} over one period 2π/step,
/// sampled `oversample` times per grid point.
TemporalProfile temporal_profile(const PumpField& field, std::size_t oversample = 4);

/// Evaluates the time-domain field at a single instant.
cplx field_at_time(const PumpField& field, double t);

}  // namespace ringsqz
