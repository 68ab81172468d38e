#include "ringsqz/system_matrices.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "detail/linalg.hpp"
#include "ringsqz/errors.hpp"

namespace ringsqz {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

ModeAxis ModeAxis::from_grid(const FrequencyGrid& g, std::size_t sectors) {
  ModeAxis axis;
  axis.step = g.step();
  axis.sectors = sectors;
  axis.grid = g;
  axis.detuning.reserve(g.size() * sectors);
  for (std::size_t s = 0; s < sectors; ++s) {
    axis.detuning.insert(axis.detuning.end(), g.points().begin(), g.points().end());
  }
  return axis;
}

MatrixXcd BlockMatrix::assembled() const {
  const auto n = static_cast<Eigen::Index>(size());
  MatrixXcd m = MatrixXcd::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n).diagonal() = d;
  m.topRightCorner(n, n) = e;
  m.bottomLeftCorner(n, n) = e.adjoint();
  m.bottomRightCorner(n, n).diagonal() = d.conjugate();
  return m;
}

MatrixXcd coupling_kernel(const PumpField& pump, const FrequencyGrid& grid, double kappa) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  const double w = kappa * grid.step();
  MatrixXcd e(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j; k < n; ++k) {
      const cplx v = w * pump.at(grid[j] + grid[k]);
      e(j, k) = v;
      e(k, j) = v;
    }
  }
  return e;
}

BlockMatrix assemble_generator(ModeAxis axis, const VectorXd& gamma_c, const VectorXd& gamma_i,
                               MatrixXcd e) {
  const auto n = static_cast<Eigen::Index>(axis.size());
  if (e.rows() != n || e.cols() != n || gamma_c.size() != n || gamma_i.size() != n) {
    throw std::invalid_argument("generator pieces disagree on the mode count");
  }
  if ((e - e.transpose()).norm() > 1e-12 * std::max(1.0, e.norm())) {
    throw std::invalid_argument("coupling block must be symmetric");
  }
  BlockMatrix m;
  m.d.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    m.d(j) = cplx(-0.5 * (gamma_c(j) + gamma_i(j)), axis.detuning[static_cast<std::size_t>(j)]);
  }
  m.axis = std::move(axis);
  m.e = std::move(e);
  m.gamma_c = gamma_c;
  m.gamma_i = gamma_i;
  return m;
}

BlockMatrix build_generator(const PumpField& pump, const CavityParams& params,
                            const FrequencyGrid& grid) {
  params.validate();
  const auto n = static_cast<Eigen::Index>(grid.size());
  return assemble_generator(ModeAxis::from_grid(grid), VectorXd::Constant(n, params.gamma_c),
                            VectorXd::Constant(n, params.gamma_i),
                            coupling_kernel(pump, grid, params.kappa));
}

BlockMatrix single_mode_generator(const CavityParams& params, cplx e) {
  ModeAxis axis;
  axis.detuning = {0.0};
  MatrixXcd em(1, 1);
  em(0, 0) = e;
  return assemble_generator(std::move(axis), VectorXd::Constant(1, params.gamma_c),
                            VectorXd::Constant(1, params.gamma_i), em);
}

MatrixXcd BogoliubovBlock::assembled() const {
  const auto n = a.rows();
  MatrixXcd s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = a;
  s.topRightCorner(n, n) = b;
  s.bottomLeftCorner(n, n) = b.conjugate();
  s.bottomRightCorner(n, n) = a.conjugate();
  return s;
}

namespace {

// diag(l) · x · diag(r)
MatrixXcd scale(const VectorXd& l, const MatrixXcd& x, const VectorXd& r) {
  return l.asDiagonal() * x * r.asDiagonal();
}

}  // namespace

ScatteringMatrix core_scattering(const BlockMatrix& m) {
  const VectorXcd dbar_inv = m.d.conjugate().cwiseInverse();

  // Schur complement of the diagonal D* block:
  //   M⁻¹ = [[X, Y], [Y*, X*]],  X = (D − E D*⁻¹ E*)⁻¹,  Y = −X E D*⁻¹.
  const MatrixXcd e_dinv = m.e * dbar_inv.asDiagonal();
  MatrixXcd schur = -e_dinv * m.e.conjugate();
  schur.diagonal() += m.d;
  Eigen::PartialPivLU<MatrixXcd> lu(schur);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    throw ThresholdError("generator is singular (rcond " + std::to_string(rcond) +
                         "): pump at or above threshold");
  }
  const MatrixXcd x = lu.inverse();
  const MatrixXcd y = -x * e_dinv;

  const VectorXd gamma = m.gamma();
  const VectorXd root = gamma.cwiseSqrt();
  ScatteringMatrix s;
  s.axis = m.axis;
  s.core.a = scale(root, x, root);
  s.core.a.diagonal().array() += 1.0;
  s.core.b = scale(root, y, root);

  const VectorXd rc = (m.gamma_c.array() / gamma.array()).sqrt().matrix();
  const VectorXd ri = (m.gamma_i.array() / gamma.array()).sqrt().matrix();
  const VectorXd rcri = rc.cwiseProduct(ri);
  const MatrixXcd& ca = s.core.a;
  const MatrixXcd& cb = s.core.b;

  auto& oi = s.io[out_from_in];
  oi.a = scale(rc, ca, rc);
  oi.a.diagonal() += ri.cwiseProduct(ri).cast<cplx>();
  oi.b = scale(rc, cb, rc);

  auto& ol = s.io[out_from_loss];
  ol.a = scale(rc, ca, ri);
  ol.a.diagonal() -= rcri.cast<cplx>();
  ol.b = scale(rc, cb, ri);

  auto& di = s.io[drop_from_in];
  di.a = scale(ri, ca, rc);
  di.a.diagonal() -= rcri.cast<cplx>();
  di.b = scale(ri, cb, rc);

  auto& dl = s.io[drop_from_loss];
  dl.a = scale(ri, ca, ri);
  dl.a.diagonal() += rc.cwiseProduct(rc).cast<cplx>();
  dl.b = scale(ri, cb, ri);

  s.symplectic_residual = symplectic_residual(s.core);
  return s;
}

double symplectic_residual(const BogoliubovBlock& s) {
  const auto n = s.a.rows();
  MatrixXcd norm_dev = s.a * s.a.adjoint() - s.b * s.b.adjoint();
  norm_dev -= MatrixXcd::Identity(n, n);
  const MatrixXcd sym_dev = s.a * s.b.transpose() - s.b * s.a.transpose();
  const double scale_a = detail::spectral_norm(s.a);
  const double denom = std::max(scale_a * scale_a, 1e-300);
  return std::max(detail::spectral_norm(norm_dev), detail::spectral_norm(sym_dev)) / denom;
}

double symplectic_residual(const ScatteringMatrix& s) { return symplectic_residual(s.core); }

double stability_bound(const BlockMatrix& m) {
  return -0.5 * m.gamma().minCoeff() + detail::spectral_norm(m.e);
}

double max_real_eigenvalue(const BlockMatrix& m) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(m.assembled(), false);
  return es.eigenvalues().real().maxCoeff();
}

void require_stable(const BlockMatrix& m) {
  if (stability_bound(m) < 0.0) return;
  const double re = max_real_eigenvalue(m);
  if (!(re < 0.0)) {
    throw ThresholdError("generator has an eigenvalue with real part " + std::to_string(re) +
                         ": pump at or above threshold");
  }
}

}  // namespace ringsqz
