#pragma once

#include <Eigen/Dense>

namespace ringsqz {

/// Autonne-Takagi factorization S = U · diag(values) · Uᵀ of a complex
/// symmetric matrix, U unitary, values real, nonnegative and descending.
struct TakagiResult {
  Eigen::MatrixXcd u;
  Eigen::VectorXd values;
};

/// Throws std::invalid_argument if ‖S − Sᵀ‖ > 1e-10 ‖S‖.
TakagiResult takagi(const Eigen::MatrixXcd& sym);

}  // namespace ringsqz
