#include "ringsqz/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ringsqz/errors.hpp"
#include "ringsqz/takagi.hpp"

namespace ringsqz {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

namespace {

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  return phi;
}

double centroid(const MatrixXcd& q, Index k, const std::vector<double>& detuning) {
  double c = 0.0;
  for (Index j = 0; j < q.rows(); ++j) c += std::norm(q(j, k)) * detuning[static_cast<std::size_t>(j)];
  return c;
}

double relative_mismatch(const BogoliubovBlock& x, const BogoliubovBlock& ref) {
  const double num = (x.a - ref.a).squaredNorm() + (x.b - ref.b).squaredNorm();
  const double den = ref.a.squaredNorm() + ref.b.squaredNorm();
  return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace

BogoliubovBlock reassemble(const SqueezingDecomposition& dec) {
  const auto n = static_cast<Index>(dec.size());
  Eigen::VectorXcd ch(n), sh(n);
  for (Index k = 0; k < n; ++k) {
    const double x = dec.xi[static_cast<std::size_t>(k)];
    ch(k) = std::cosh(x);
    sh(k) = std::polar(std::sinh(x), dec.theta[static_cast<std::size_t>(k)]);
  }
  BogoliubovBlock out;
  out.a = dec.p_unitary * ch.asDiagonal() * dec.q_unitary.adjoint();
  out.b = dec.p_unitary * sh.asDiagonal() * dec.q_unitary.transpose();
  return out;
}

SqueezingDecomposition bloch_messiah(const ScatteringMatrix& s, const DecompositionOptions& opts) {
  return bloch_messiah(s.core, s.axis, opts);
}

SqueezingDecomposition bloch_messiah(const BogoliubovBlock& core, const ModeAxis& axis,
                                     const DecompositionOptions& opts) {
  const auto n = static_cast<Index>(core.size());
  if (core.b.rows() != n || core.b.cols() != n || static_cast<Index>(axis.size()) != n) {
    throw std::invalid_argument("bloch_messiah: block sizes disagree");
  }
  const double symp = symplectic_residual(core);
  if (!(symp <= opts.symplectic_gate)) {
    throw DecompositionUnreliable("map is not symplectic within the gate", symp);
  }

  Eigen::BDCSVD<MatrixXcd> svd(core.a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  MatrixXcd p = svd.matrixU();
  MatrixXcd q = svd.matrixV();
  const VectorXd sigma = svd.singularValues();

  // C = P† B Q* is block diagonal over groups of equal σ; inside a group it
  // is complex symmetric and its Takagi vectors rotate P and Q together.
  const MatrixXcd c = p.adjoint() * core.b * q.conjugate();
  const double tol = opts.degeneracy_tol * sigma(0);
  Index start = 0;
  while (start < n) {
    Index stop = start + 1;
    while (stop < n && sigma(stop - 1) - sigma(stop) <= tol) ++stop;
    const Index len = stop - start;
    if (len > 1) {
      const MatrixXcd block = c.block(start, start, len, len);
      const TakagiResult tk = takagi(0.5 * (block + block.transpose()));
      p.middleCols(start, len) = p.middleCols(start, len) * tk.u;
      q.middleCols(start, len) = q.middleCols(start, len) * tk.u;
    }
    start = stop;
  }

  SqueezingDecomposition dec;
  dec.axis = axis;
  dec.xi.resize(static_cast<std::size_t>(n));
  dec.theta.resize(static_cast<std::size_t>(n));
  dec.singular_values.resize(static_cast<std::size_t>(n));
  const MatrixXcd bq = core.b * q.conjugate();
  const MatrixXcd aq = core.a * q;
  for (Index k = 0; k < n; ++k) {
    // Pin the gauge: largest entry of Q's column real positive. A symmetric
    // pump makes |Q| mirror-symmetric, so near-ties go to the lowest index
    // instead of to whichever entry roundoff favours.
    const double top = q.col(k).cwiseAbs2().maxCoeff();
    Index jmax = 0;
    while (std::norm(q(jmax, k)) < top * (1.0 - 1e-9)) ++jmax;
    const double phi = std::arg(q(jmax, k));
    const std::complex<double> ph = std::polar(1.0, -phi);
    q.col(k) *= ph;
    p.col(k) *= ph;

    // bq and aq were formed before the column phase was applied.
    const std::complex<double> ckk = p.col(k).dot(bq.col(k)) * std::conj(ph);
    const std::complex<double> akk = p.col(k).dot(aq.col(k)) * ph;
    const auto ku = static_cast<std::size_t>(k);
    double x = std::asinh(std::abs(ckk));
    double th = std::arg(ckk);
    if (x < opts.xi_floor) {
      x = 0.0;
      th = 0.0;
    }
    dec.xi[ku] = x;
    dec.theta[ku] = wrap_phase(th);
    dec.singular_values[ku] = akk.real();
  }
  dec.p_unitary = std::move(p);
  dec.q_unitary = std::move(q);

  // Order by ξ, ties by centroid of the input mode.
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return dec.xi[static_cast<std::size_t>(a)] > dec.xi[static_cast<std::size_t>(b)];
  });
  constexpr double kTie = 1e-10;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() &&
           dec.xi[static_cast<std::size_t>(order[j - 1])] - dec.xi[static_cast<std::size_t>(order[j])] <= kTie) {
      ++j;
    }
    if (j - i > 1) {
      std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(i),
                       order.begin() + static_cast<std::ptrdiff_t>(j), [&](Index a, Index b) {
                         return centroid(dec.q_unitary, a, axis.detuning) <
                                centroid(dec.q_unitary, b, axis.detuning);
                       });
    }
    i = j;
  }
  SqueezingDecomposition sorted;
  sorted.axis = axis;
  sorted.p_unitary.resize(n, n);
  sorted.q_unitary.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    const auto su = static_cast<std::size_t>(src);
    sorted.p_unitary.col(k) = dec.p_unitary.col(src);
    sorted.q_unitary.col(k) = dec.q_unitary.col(src);
    sorted.xi.push_back(dec.xi[su]);
    sorted.theta.push_back(dec.theta[su]);
    sorted.singular_values.push_back(dec.singular_values[su]);
  }

  sorted.reconstruction_residual = relative_mismatch(reassemble(sorted), core);
  if (!(sorted.reconstruction_residual <= opts.reconstruction_gate)) {
    throw DecompositionUnreliable("Bloch-Messiah reconstruction failed",
                                  sorted.reconstruction_residual);
  }
  return sorted;
}

double ModeShape::norm() const {
  double s = 0.0;
  for (const auto& a : amplitude) s += std::norm(a);
  return s * grid.step();
}

ModeShape normalized_mode(const FrequencyGrid& grid, std::vector<cplx> amplitude) {
  if (amplitude.size() != grid.size()) {
    throw std::invalid_argument("mode profile and grid sizes differ");
  }
  ModeShape m{grid, std::move(amplitude)};
  const double nrm = m.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw std::invalid_argument("mode profile is zero");
  const double f = 1.0 / std::sqrt(nrm);
  for (auto& a : m.amplitude) a *= f;
  return m;
}

std::pair<ModeShape, ModeShape> characteristic_modes(const SqueezingDecomposition& dec,
                                                     std::size_t k) {
  if (k >= dec.size()) {
    throw std::out_of_range("mode index " + std::to_string(k) + " out of range (n = " +
                            std::to_string(dec.size()) + ")");
  }
  if (!dec.axis.grid || dec.axis.sectors != 1) {
    throw std::invalid_argument("characteristic_modes needs a single-band frequency grid");
  }
  const auto& g = *dec.axis.grid;
  const double f = 1.0 / std::sqrt(g.step());
  const auto kk = static_cast<Index>(k);
  auto column = [&](const MatrixXcd& u) {
    std::vector<cplx> v(g.size());
    for (Index j = 0; j < u.rows(); ++j) v[static_cast<std::size_t>(j)] = u(j, kk) * f;
    return ModeShape{g, std::move(v)};
  };
  return {column(dec.q_unitary), column(dec.p_unitary)};
}

}  // namespace ringsqz
