#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ringsqz/decomposition.hpp"
#include "ringsqz/grid.hpp"
#include "ringsqz/system_matrices.hpp"

namespace ringsqz {

/// Output second moments with vacuum at every input port, in the discrete
/// mode basis (unit commutators).
struct GaussianMoments {
  Eigen::MatrixXcd m_aa;   // ⟨a_j a_k⟩
  Eigen::MatrixXcd m_ada;  // ⟨a_j† a_k⟩
  // a_out = Σ_p (A_p a_p + B_p a_p†) over the input ports. When present,
  // homodyne variances are summed from these instead of ½ + n − |m|, which
  // cancels catastrophically once sinh²ξ is large.
  std::vector<BogoliubovBlock> ports;
};

/// Minimum-phase quadrature variance of mode k behind the loss beamsplitter:
/// ½(γ_i/γ + (γ_c/γ) e^{−2ξ}). Vacuum is ½.
double squeezed_variance(double xi, const CavityParams& params);

/// Effective mode number (Σ sinh²ξ)² / Σ sinh⁴ξ.
struct ModeNumber {
  double value = 0.0;
  bool below_pair_generation = false;  // every ξ is zero; value is NaN
};

ModeNumber effective_mode_number(std::span<const double> xi);

GaussianMoments output_moments(const ScatteringMatrix& s);

struct HomodyneResult {
  double n_photons = 0.0;     // ⟨a_f† a_f⟩
  cplx pair = 0.0;            // ⟨a_f a_f⟩
  double min_variance = 0.0;
  double min_phase = 0.0;     // LO phase of the squeezed quadrature, in [0, π)
  double max_variance = 0.0;

  /// ½ + ⟨a†a⟩ + Re[e^{−2iφ}⟨aa⟩]
  double variance(double phase) const;
};

/// Quadrature statistics of a_f = step · Σ_j lo_j* a_out,j.
/// Throws std::invalid_argument if `lo` is not unit-normalised.
HomodyneResult homodyne(const GaussianMoments& m, const ModeShape& lo);

/// Same, for a unit vector l in the discrete mode basis: a_f = l† a_out.
HomodyneResult homodyne(const GaussianMoments& m, const Eigen::VectorXcd& l);

double homodyne_variance(const GaussianMoments& m, const ModeShape& lo, double phase);

/// Intensity FWHM of |f|² with linear interpolation between grid points.
/// Throws AmbiguousFwhm if the profile crosses half maximum more than twice,
/// std::invalid_argument if a crossing falls off the grid.
double mode_fwhm(const ModeShape& mode);

/// Same, for an arbitrary nonnegative profile on a grid.
double profile_fwhm(const FrequencyGrid& grid, std::span<const double> intensity);

/// −10 log10(variance / ½); squeezing is positive.
double squeezing_db(double variance);

}  // namespace ringsqz
