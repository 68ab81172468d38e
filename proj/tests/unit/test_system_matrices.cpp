#include <cmath>
#include <random>

#include "doctest.h"
#include "ringsqz/errors.hpp"
#include "ringsqz/system_matrices.hpp"
#include "support.hpp"

using namespace ringsqz;
using Eigen::MatrixXcd;

namespace {

// Bogoliubov identities for a map fed by two ports: Σ AA† − BB† = I and
// Σ ABᵀ − BAᵀ = 0.
double two_port_defect(const BogoliubovBlock& x, const BogoliubovBlock& y) {
  const auto n = x.a.rows();
  const MatrixXcd n1 = x.a * x.a.adjoint() - x.b * x.b.adjoint() + y.a * y.a.adjoint() -
                       y.b * y.b.adjoint() - MatrixXcd::Identity(n, n);
  const MatrixXcd n2 = x.a * x.b.transpose() - x.b * x.a.transpose() + y.a * y.b.transpose() -
                       y.b * y.a.transpose();
  return std::max(n1.cwiseAbs().maxCoeff(), n2.cwiseAbs().maxCoeff());
}

}  // namespace

TEST_SUITE("system_matrices") {

TEST_CASE("coupling kernel samples the pump on pairwise sums") {
  const auto g = make_grid(6.0, 12);
  CavityParams p;
  p.kappa = 0.7;
  const auto pump = intracavity_pump(gaussian_pump_input(2.0, cplx(0.3, 0.1), pump_grid_for(g)), p);
  const MatrixXcd e = coupling_kernel(pump, g, p.kappa);
  CHECK((e - e.transpose()).norm() == 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(std::abs(e(j, k) - p.kappa * g.step() * pump.at(g[j] + g[k])) < 1e-15);
    }
  }
  PumpField narrow{make_grid(1.0, 5), std::vector<cplx>(5, 1.0), FieldKind::intracavity};
  CHECK_THROWS_AS(coupling_kernel(narrow, g, 1.0), CoverageError);
}

TEST_CASE("generator layout") {
  const auto g = make_grid(4.0, 6);
  CavityParams p;
  const auto pump = testing::pump_with_gain(g, p, 2.0, 0.3);
  const BlockMatrix m = build_generator(pump, p, g);
  const MatrixXcd big = m.assembled();
  const auto n = static_cast<Eigen::Index>(g.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    CHECK(big(j, j) == cplx(-0.5 * p.gamma(), g[static_cast<std::size_t>(j)]));
    CHECK(big(n + j, n + j) == std::conj(big(j, j)));
  }
  CHECK((big.topRightCorner(n, n) - m.e).norm() == 0.0);
  CHECK((big.bottomLeftCorner(n, n) - m.e.adjoint()).norm() == 0.0);
  CHECK(big.topLeftCorner(n, n).imag().diagonal().sum() == doctest::Approx(0.0));
}

TEST_CASE("assemble_generator validates its input") {
  MatrixXcd e = MatrixXcd::Zero(3, 3);
  e(0, 1) = 1.0;
  CHECK_THROWS_AS(assemble_generator(testing::plain_axis(3), Eigen::VectorXd::Ones(3), Eigen::VectorXd::Zero(3), e),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_generator(testing::plain_axis(2), Eigen::VectorXd::Ones(3), Eigen::VectorXd::Zero(3),
                                     MatrixXcd::Zero(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("kappa = 0 gives a unitary diagonal core") {
  const auto g = make_grid(8.0, 32);
  CavityParams p;
  p.kappa = 0.0;
  const auto pump = intracavity_pump(gaussian_pump_input(2.0, cplx(1.0), pump_grid_for(g)), p);
  const auto s = core_scattering(build_generator(pump, p, g));
  CHECK(s.symplectic_residual < 1e-12);
  CHECK(s.core.b.norm() == 0.0);
  for (Eigen::Index j = 0; j < s.core.a.rows(); ++j) {
    const double nu = g[static_cast<std::size_t>(j)];
    const cplx expect = cplx(0.5, nu) / cplx(-0.5, nu);  // (iν + γ/2)/(iν − γ/2), γ = 1
    CHECK(std::abs(s.core.a(j, j) - expect) < 1e-14);
  }
  CHECK((s.core.a - MatrixXcd(s.core.a.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("single-mode CW core matches the hand 2x2 inverse") {
  const CavityParams p;  // γ = 1
  for (cplx e : {cplx(0.1, 0.0), cplx(0.2, 0.3), cplx(0.0, -0.45), cplx(0.4999, 0.0)}) {
    const auto s = core_scattering(single_mode_generator(p, e));
    const double q = std::norm(e) - 0.25;
    const cplx a = (std::norm(e) + 0.25) / q;
    const cplx b = e / q;
    CHECK(std::abs(s.core.a(0, 0) - a) < 1e-12 * std::abs(a));
    CHECK(std::abs(s.core.b(0, 0) - b) < 1e-12 * std::abs(a));
    CHECK(s.symplectic_residual < 1e-12);
    // cosh ξ = |A| with e^ξ = (γ/2 + |e|)/(γ/2 − |e|)
    CHECK(std::acosh(std::abs(s.core.a(0, 0))) ==
          doctest::Approx(testing::cw_xi(std::abs(e), 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("Schur-complement core equals I + G M^-1 G from a dense inverse") {
  const auto g = make_grid(10.0, 20);
  CavityParams p;
  p.gamma_i = 0.3;
  p.gamma_c = 0.7;
  const auto m = build_generator(testing::pump_with_gain(g, p, 3.0, 0.45), p, g);
  const MatrixXcd minv = m.assembled().fullPivLu().inverse();
  const auto s = core_scattering(m);
  const auto n = static_cast<Eigen::Index>(g.size());
  const MatrixXcd a = MatrixXcd::Identity(n, n) + p.gamma() * minv.topLeftCorner(n, n);
  const MatrixXcd b = p.gamma() * minv.topRightCorner(n, n);
  CHECK((s.core.a - a).norm() < 1e-12 * a.norm());
  CHECK((s.core.b - b).norm() < 1e-12 * a.norm());
}

TEST_CASE("port blocks are the loss beamsplitter around the core") {
  const auto g = make_grid(10.0, 24);
  CavityParams p;  // γ_i = 1/8
  const auto s = core_scattering(build_generator(testing::pump_with_gain(g, p, 4.0, 0.49), p, g));
  CHECK(two_port_defect(s.io[out_from_in], s.io[out_from_loss]) < 1e-11);
  CHECK(two_port_defect(s.io[drop_from_in], s.io[drop_from_loss]) < 1e-11);
  // Lossless limit: the output is the core.
  CavityParams l = CavityParams::lossless();
  const auto sl = core_scattering(build_generator(testing::pump_with_gain(g, l, 4.0, 0.3), l, g));
  CHECK((sl.io[out_from_in].a - sl.core.a).norm() < 1e-14);
  CHECK((sl.io[out_from_in].b - sl.core.b).norm() < 1e-14);
  CHECK(sl.io[out_from_loss].a.norm() < 1e-14);
}

TEST_CASE("property: symplectic residual stays at roundoff for random sub-threshold pumps") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 8 + 8 * static_cast<std::size_t>(trial);
    const auto g = make_grid(4.0 + 20.0 * u(rng), n);
    CavityParams p;
    p.gamma_p = 0.5 + 4.0 * u(rng);
    p.gamma_pc = p.gamma_p * (0.2 + 0.8 * u(rng));
    const auto pump = testing::pump_with_gain(g, p, 0.5 + 8.0 * u(rng), 0.5 * u(rng) * 0.999);
    const auto s = core_scattering(build_generator(pump, p, g));
    CHECK(s.symplectic_residual < 1e-11);
  }
}

TEST_CASE("stability: bound, eigenvalues and threshold errors") {
  const CavityParams p;
  CHECK(stability_bound(single_mode_generator(p, 0.3)) == doctest::Approx(-0.2));
  CHECK(max_real_eigenvalue(single_mode_generator(p, 0.3)) == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK_NOTHROW(require_stable(single_mode_generator(p, 0.3)));
  CHECK_THROWS_AS(require_stable(single_mode_generator(p, 0.6)), ThresholdError);
  CHECK_THROWS_AS(core_scattering(single_mode_generator(p, 0.5)), ThresholdError);

  // Detuning lets the bound be loose; the eigenvalue check decides.
  const auto g = make_grid(6.0, 12);
  const auto pump = testing::pump_with_gain(g, p, 2.0, 0.499);
  CHECK_NOTHROW(require_stable(build_generator(pump, p, g)));
  const auto over = build_generator(pump.scaled(1.2), p, g);
  CHECK(stability_bound(over) > 0.0);
  CHECK(max_real_eigenvalue(over) < 0.0);
  CHECK_NOTHROW(require_stable(over));
  CHECK_THROWS_AS(require_stable(build_generator(pump.scaled(10.0), p, g)), ThresholdError);
}

}
