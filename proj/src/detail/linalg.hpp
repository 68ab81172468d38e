#pragma once

#include <Eigen/Dense>

namespace ringsqz::detail {

// Largest singular value.
inline double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace ringsqz::detail
