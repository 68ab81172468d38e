#pragma once

// Non-degenerate down-conversion: signal a₁ and idler a₂ on a shared
// detuning grid, each driven by the other's conjugate.

#include "ringsqz/decomposition.hpp"
#include "ringsqz/system_matrices.hpp"

namespace ringsqz {

/// Generator over (a₁, a₂, a₁†, a₂†). The coupling block is [[0, E], [E, 0]],
/// so the layout and every downstream routine match the degenerate case
/// with 2n modes.
struct JointBlockMatrix {
  std::size_t n = 0;  // points per band
  BlockMatrix m;
};

/// Throws std::invalid_argument if the two parameter sets disagree on κ.
JointBlockMatrix build_joint_generator(const PumpField& pump, const CavityParams& signal,
                                       const CavityParams& idler, const FrequencyGrid& grid);

/// Largest Takagi value of the joint coupling block.
double joint_max_gain(const JointBlockMatrix& jm);

/// Split of a joint characteristic mode across the two bands.
struct JointMode {
  std::vector<cplx> signal;  // on the shared grid, step-normalised jointly
  std::vector<cplx> idler;
  double signal_weight = 0.0;
  double idler_weight = 0.0;
};

/// k-th input (Q) mode of a two-band decomposition.
JointMode joint_input_mode(const SqueezingDecomposition& dec, std::size_t k);

}  // namespace ringsqz
