#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "ringsqz/decomposition.hpp"
#include "ringsqz/grid.hpp"
#include "ringsqz/system_matrices.hpp"

namespace testing {

using Eigen::MatrixXcd;
using ringsqz::cplx;

// Haar-random unitary: QR of a complex Ginibre matrix with R's diagonal phases removed.
inline MatrixXcd haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixXcd z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<MatrixXcd> qr(z);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(n, n);
  const MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) q.col(k) *= std::abs(r(k, k)) / r(k, k);
  return q;
}

// Core of a Bogoliubov map built from known factors.
inline ringsqz::BogoliubovBlock compose(const MatrixXcd& p, const Eigen::VectorXd& xi,
                                        const Eigen::VectorXd& theta, const MatrixXcd& q) {
  const auto n = xi.size();
  Eigen::VectorXcd ch(n), sh(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    ch(k) = std::cosh(xi(k));
    sh(k) = std::polar(std::sinh(xi(k)), theta(k));
  }
  return {p * ch.asDiagonal() * q.adjoint(), p * sh.asDiagonal() * q.transpose()};
}

inline ringsqz::ModeAxis plain_axis(std::size_t n) {
  ringsqz::ModeAxis a;
  a.detuning.resize(n);
  for (std::size_t j = 0; j < n; ++j) a.detuning[j] = static_cast<double>(j);
  return a;
}

// Broadband intracavity pump of bandwidth delta scaled so that the largest
// singular value of E equals `gain` (threshold at gamma/2).
inline ringsqz::PumpField pump_with_gain(const ringsqz::FrequencyGrid& g, const ringsqz::CavityParams& p,
                                         double delta, double gain) {
  auto pump = ringsqz::intracavity_pump(ringsqz::gaussian_pump_input(delta, cplx(1.0), ringsqz::pump_grid_for(g)), p);
  Eigen::JacobiSVD<MatrixXcd> svd(ringsqz::coupling_kernel(pump, g, p.kappa));
  return pump.scaled(gain / svd.singularValues()(0));
}

// Single-mode CW squeezing amplitude at coupling |e| below γ/2:
// e^ξ = (γ/2 + |e|)/(γ/2 − |e|).
inline double cw_xi(double e, double gamma) {
  return std::log((0.5 * gamma + e) / (0.5 * gamma - e));
}

}  // namespace testing
