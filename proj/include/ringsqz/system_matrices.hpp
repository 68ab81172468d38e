#pragma once

// Discretised frequency-domain generator of the cavity equations of motion
// and the input-output maps built from it.

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "ringsqz/grid.hpp"

namespace ringsqz {

/// Labels of the n modes a generator acts on. `sectors` is 1 for a single
/// band and 2 for a signal/idler pair laid out one after the other.
struct ModeAxis {
  std::vector<double> detuning;
  double step = 1.0;
  std::size_t sectors = 1;
  std::optional<FrequencyGrid> grid;

  std::size_t size() const noexcept { return detuning.size(); }
  static ModeAxis from_grid(const FrequencyGrid& g, std::size_t sectors = 1);
};

/// M = [[D, E], [E†, D*]] with D diagonal and E complex symmetric.
struct BlockMatrix {
  ModeAxis axis;
  Eigen::VectorXcd d;        // D_jj = iν_j − γ_j/2
  Eigen::MatrixXcd e;        // E_jk = κ ε(ν_j + ν_k) · step
  Eigen::VectorXd gamma_c;   // per-mode bus coupling
  Eigen::VectorXd gamma_i;   // per-mode intrinsic loss

  std::size_t size() const noexcept { return static_cast<std::size_t>(d.size()); }
  Eigen::VectorXd gamma() const { return gamma_c + gamma_i; }
  Eigen::MatrixXcd assembled() const;
};

/// E_jk = κ · ε(ν_j + ν_k) · step on the signal grid.
/// Throws CoverageError if the pump grid misses a pairwise sum.
Eigen::MatrixXcd coupling_kernel(const PumpField& pump, const FrequencyGrid& grid, double kappa);

BlockMatrix build_generator(const PumpField& pump, const CavityParams& params,
                            const FrequencyGrid& grid);

/// Generator from explicit pieces; `e` must be square and symmetric.
BlockMatrix assemble_generator(ModeAxis axis, const Eigen::VectorXd& gamma_c,
                               const Eigen::VectorXd& gamma_i, Eigen::MatrixXcd e);

/// Single-mode generator at zero detuning with coupling `e`.
BlockMatrix single_mode_generator(const CavityParams& params, cplx e);

/// 2n×2n map [[A, B], [B*, A*]] acting on (a, a†).
struct BogoliubovBlock {
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd b;

  std::size_t size() const noexcept { return static_cast<std::size_t>(a.rows()); }
  Eigen::MatrixXcd assembled() const;
};

enum IoBlock : std::size_t { out_from_in = 0, out_from_loss = 1, drop_from_in = 2, drop_from_loss = 3 };

struct ScatteringMatrix {
  ModeAxis axis;
  BogoliubovBlock core;                 // I + γ M⁻¹
  std::array<BogoliubovBlock, 4> io;    // indexed by IoBlock
  double symplectic_residual = 0.0;
};

/// Lossless core between the two loss beamsplitters, plus the four port
/// blocks obtained by conjugating it with those beamsplitters.
/// Throws ThresholdError when M is numerically singular.
ScatteringMatrix core_scattering(const BlockMatrix& m);

/// max(‖AA† − BB† − I‖, ‖ABᵀ − BAᵀ‖) / ‖A‖², spectral norms.
double symplectic_residual(const BogoliubovBlock& s);
double symplectic_residual(const ScatteringMatrix& s);

/// Upper bound on the largest real part of M's spectrum:
/// max_j(−γ_j/2) + ‖E‖. Negative means stable.
double stability_bound(const BlockMatrix& m);

/// Largest real part of M's eigenvalues (dense eigensolver).
double max_real_eigenvalue(const BlockMatrix& m);

/// Throws ThresholdError unless every eigenvalue of M has negative real part.
void require_stable(const BlockMatrix& m);

}  // namespace ringsqz
