#include "ringsqz/takagi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ringsqz {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;

// A con-eigenvector S ū = t u with u = a + ib is an eigenvector [a; b] of the
// real symmetric embedding [[Re S, Im S], [Im S, −Re S]] with eigenvalue t.
// Eigenvalues come in ± pairs, so the top half yields all Takagi values.
// Vectors belonging to distinct nonzero values are automatically orthogonal
// as complex vectors; the (near-)null space is rebuilt as an orthogonal
// complement because the real embedding mixes u and iu there.
TakagiResult takagi(const MatrixXcd& sym) {
  if (sym.rows() != sym.cols()) throw std::invalid_argument("takagi: matrix must be square");
  const Index n = sym.rows();
  TakagiResult out;
  if (n == 0) return out;

  const double norm = sym.norm();
  if ((sym - sym.transpose()).norm() > 1e-10 * norm) {
    throw std::invalid_argument("takagi: matrix is not symmetric");
  }
  const MatrixXcd s = 0.5 * (sym + sym.transpose());

  MatrixXd h(2 * n, 2 * n);
  h.topLeftCorner(n, n) = s.real();
  h.topRightCorner(n, n) = s.imag();
  h.bottomLeftCorner(n, n) = s.imag();
  h.bottomRightCorner(n, n) = -s.real();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);

  // Eigenvalues ascend; walk down from the top.
  const double t_max = std::max(es.eigenvalues()(2 * n - 1), 0.0);
  const double tiny = 32.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                      std::max(t_max, norm);
  Index rank = 0;
  while (rank < n && es.eigenvalues()(2 * n - 1 - rank) > tiny) ++rank;

  MatrixXcd big(n, rank);
  out.values = Eigen::VectorXd::Zero(n);
  for (Index k = 0; k < rank; ++k) {
    const Index col = 2 * n - 1 - k;
    big.col(k).real() = es.eigenvectors().col(col).head(n);
    big.col(k).imag() = es.eigenvectors().col(col).tail(n);
    out.values(k) = es.eigenvalues()(col);
  }

  // Re-orthonormalise and complete to a unitary. Householder QR with the
  // diagonal of R made positive keeps each column's phase.
  Eigen::HouseholderQR<MatrixXcd> qr(big);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(n, n);
  const MatrixXcd& r = qr.matrixQR();
  for (Index k = 0; k < rank; ++k) {
    const std::complex<double> rkk = r(k, k);
    if (std::abs(rkk) > 0.0) q.col(k) *= rkk / std::abs(rkk);
  }
  out.u = std::move(q);
  return out;
}

}  // namespace ringsqz
