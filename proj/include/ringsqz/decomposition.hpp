#pragma once

// Bloch-Messiah factorisation of a multimode Bogoliubov map into input
// and output unitaries around independent single-mode squeezers.

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "ringsqz/grid.hpp"
#include "ringsqz/system_matrices.hpp"

namespace ringsqz {

struct DecompositionOptions {
  double symplectic_gate = 1e-6;      // applied to the input map
  double reconstruction_gate = 1e-6;  // applied to the factorisation
  double degeneracy_tol = 1e-8;       // relative to the largest singular value
  double xi_floor = 1e-12;            // smaller amplitudes are clamped to zero
};

/// core = [[P, 0], [0, P*]] · [[ch, e^{iθ}sh], [e^{−iθ}sh, ch]] · [[Q†, 0], [0, Qᵀ]].
///
/// Columns are ordered by descending ξ; ties go to the column of Q with the
/// smaller spectral centroid. Each column of Q has its largest-magnitude
/// entry real positive, and P carries the same column phase.
struct SqueezingDecomposition {
  ModeAxis axis;
  std::vector<double> xi;
  std::vector<double> theta;  // in [0, 2π)
  Eigen::MatrixXcd q_unitary;
  Eigen::MatrixXcd p_unitary;
  std::vector<double> singular_values;  // σ_k of A in final column order
  double reconstruction_residual = 0.0;

  std::size_t size() const noexcept { return xi.size(); }
};

/// Reassembles the 2n×2n core from the factors.
BogoliubovBlock reassemble(const SqueezingDecomposition& dec);

/// Factorises an exactly-or-nearly symplectic core. Throws
/// DecompositionUnreliable when either gate in `opts` is exceeded.
SqueezingDecomposition bloch_messiah(const BogoliubovBlock& core, const ModeAxis& axis,
                                     const DecompositionOptions& opts = {});

SqueezingDecomposition bloch_messiah(const ScatteringMatrix& s,
                                     const DecompositionOptions& opts = {});

/// Unit-normalised spectral profile: step · Σ|f|² = 1.
struct ModeShape {
  FrequencyGrid grid;
  std::vector<cplx> amplitude;

  double norm() const;  // step · Σ|f|²
};

/// Builds a unit-normalised ModeShape from an arbitrary profile.
/// Throws std::invalid_argument for a zero profile or size mismatch.
ModeShape normalized_mode(const FrequencyGrid& grid, std::vector<cplx> amplitude);

/// k-th input (Q) and output (P) characteristic modes of a single-band
/// decomposition. Throws std::out_of_range for k >= n.
std::pair<ModeShape, ModeShape> characteristic_modes(const SqueezingDecomposition& dec,
                                                     std::size_t k);

}  // namespace ringsqz
