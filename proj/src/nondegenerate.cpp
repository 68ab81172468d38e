#include "ringsqz/nondegenerate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ringsqz/threshold.hpp"

namespace ringsqz {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

JointBlockMatrix build_joint_generator(const PumpField& pump, const CavityParams& signal,
                                       const CavityParams& idler, const FrequencyGrid& grid) {
  signal.validate();
  idler.validate();
  if (signal.kappa != idler.kappa) {
    throw std::invalid_argument("signal and idler must share the nonlinear rate kappa");
  }
  const auto n = static_cast<Eigen::Index>(grid.size());
  const MatrixXcd e = coupling_kernel(pump, grid, signal.kappa);
  MatrixXcd joint = MatrixXcd::Zero(2 * n, 2 * n);
  joint.topRightCorner(n, n) = e;
  joint.bottomLeftCorner(n, n) = e.transpose();

  VectorXd gc(2 * n), gi(2 * n);
  gc << VectorXd::Constant(n, signal.gamma_c), VectorXd::Constant(n, idler.gamma_c);
  gi << VectorXd::Constant(n, signal.gamma_i), VectorXd::Constant(n, idler.gamma_i);

  JointBlockMatrix jm;
  jm.n = grid.size();
  jm.m = assemble_generator(ModeAxis::from_grid(grid, 2), gc, gi, std::move(joint));
  return jm;
}

double joint_max_gain(const JointBlockMatrix& jm) { return max_gain(jm.m.e); }

JointMode joint_input_mode(const SqueezingDecomposition& dec, std::size_t k) {
  if (dec.axis.sectors != 2) throw std::invalid_argument("decomposition is not two-band");
  if (k >= dec.size()) throw std::out_of_range("mode index " + std::to_string(k) + " out of range");
  const std::size_t n = dec.size() / 2;
  const double f = 1.0 / std::sqrt(dec.axis.step);
  JointMode mode;
  mode.signal.resize(n);
  mode.idler.resize(n);
  const auto kk = static_cast<Eigen::Index>(k);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx s = dec.q_unitary(static_cast<Eigen::Index>(j), kk);
    const cplx i = dec.q_unitary(static_cast<Eigen::Index>(j + n), kk);
    mode.signal[j] = s * f;
    mode.idler[j] = i * f;
    mode.signal_weight += std::norm(s);
    mode.idler_weight += std::norm(i);
  }
  return mode;
}

}  // namespace ringsqz
