#include "ringsqz/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ringsqz/errors.hpp"

namespace ringsqz {

double squeezed_variance(double xi, const CavityParams& params) {
  if (xi < 0.0) throw std::invalid_argument("squeezing amplitude must be >= 0");
  const double g = params.gamma();
  return 0.5 * (params.gamma_i / g + params.gamma_c / g * std::exp(-2.0 * xi));
}

ModeNumber effective_mode_number(std::span<const double> xi) {
  double s2 = 0.0;
  double s4 = 0.0;
  for (double x : xi) {
    const double s = std::sinh(x);
    s2 += s * s;
    s4 += s * s * s * s;
  }
  if (!(s4 > 0.0)) return {std::numeric_limits<double>::quiet_NaN(), true};
  return {s2 * s2 / s4, false};
}

GaussianMoments output_moments(const ScatteringMatrix& s) {
  // a_out = A a_in + B a_in† + C a_i + D a_i†, ⟨a a†⟩ = I, ⟨a† a⟩ = 0.
  const auto& in = s.io[out_from_in];
  const auto& loss = s.io[out_from_loss];
  GaussianMoments m;
  m.m_aa = in.a * in.b.transpose() + loss.a * loss.b.transpose();
  m.m_ada = in.b.conjugate() * in.b.transpose() + loss.b.conjugate() * loss.b.transpose();
  m.ports = {in, loss};
  return m;
}

double HomodyneResult::variance(double phase) const {
  return 0.5 + n_photons + (std::polar(1.0, -2.0 * phase) * pair).real();
}

HomodyneResult homodyne(const GaussianMoments& m, const ModeShape& lo) {
  const auto n = static_cast<Eigen::Index>(lo.amplitude.size());
  if (m.m_aa.rows() != n) throw std::invalid_argument("LO and moments live on different grids");
  const double nrm = lo.norm();
  if (std::abs(nrm - 1.0) > 1e-9) {
    throw std::invalid_argument("LO mode is not unit-normalised (norm " + std::to_string(nrm) + ")");
  }
  // Discrete LO vector with unit 2-norm.
  Eigen::VectorXcd l(n);
  const double w = std::sqrt(lo.grid.step());
  for (Eigen::Index j = 0; j < n; ++j) l(j) = lo.amplitude[static_cast<std::size_t>(j)] * w;
  return homodyne(m, l);
}

HomodyneResult homodyne(const GaussianMoments& m, const Eigen::VectorXcd& l) {
  if (m.m_aa.rows() != l.size()) throw std::invalid_argument("LO and moments have different sizes");
  if (std::abs(l.norm() - 1.0) > 1e-9) throw std::invalid_argument("LO vector is not unit-normalised");
  HomodyneResult r;
  // ⟨a_f† a_f⟩ = Σ l_j l_k* ⟨a_j† a_k⟩,  ⟨a_f a_f⟩ = Σ l_j* l_k* ⟨a_j a_k⟩
  r.n_photons = (l.transpose() * m.m_ada * l.conjugate())(0, 0).real();
  r.pair = (l.adjoint() * m.m_aa * l.conjugate())(0, 0);
  double phi = 0.5 * (std::arg(r.pair) + std::numbers::pi);
  phi = std::fmod(phi, std::numbers::pi);
  if (phi < 0.0) phi += std::numbers::pi;
  r.min_phase = phi;
  if (m.ports.empty()) {
    r.min_variance = 0.5 + r.n_photons - std::abs(r.pair);
    r.max_variance = 0.5 + r.n_photons + std::abs(r.pair);
    return r;
  }
  // X_φ = Σ_p (c_p·a_p + h.c.)/√2 with c_p = e^{−iφ} l†A_p + e^{iφ} (l†B_p)*,
  // so the vacuum variance is ½ Σ_p ‖c_p‖².
  const cplx ph = std::polar(1.0, -phi);
  double vmin = 0.0;
  double vmax = 0.0;
  for (const auto& p : m.ports) {
    const Eigen::RowVectorXcd u = ph * (l.adjoint() * p.a);
    const Eigen::RowVectorXcd w = std::conj(ph) * (l.adjoint() * p.b).conjugate();
    vmin += (u + w).squaredNorm();
    vmax += (u - w).squaredNorm();
  }
  r.min_variance = 0.5 * vmin;
  r.max_variance = 0.5 * vmax;
  return r;
}

double homodyne_variance(const GaussianMoments& m, const ModeShape& lo, double phase) {
  return homodyne(m, lo).variance(phase);
}

double profile_fwhm(const FrequencyGrid& grid, std::span<const double> f) {
  if (f.size() != grid.size() || f.empty()) throw std::invalid_argument("profile/grid size mismatch");
  const double peak = *std::max_element(f.begin(), f.end());
  if (!(peak > 0.0)) throw std::invalid_argument("profile is zero");
  const double half = 0.5 * peak;

  std::vector<double> crossings;
  for (std::size_t j = 0; j + 1 < f.size(); ++j) {
    const bool a = f[j] >= half;
    const bool b = f[j + 1] >= half;
    if (a != b) {
      const double w = (half - f[j]) / (f[j + 1] - f[j]);
      crossings.push_back(grid[j] + w * grid.step());
    }
  }
  if (f.front() >= half || f.back() >= half) {
    throw std::invalid_argument("profile is above half maximum at the grid edge");
  }
  if (crossings.size() != 2) throw AmbiguousFwhm(std::move(crossings));
  return crossings[1] - crossings[0];
}

double mode_fwhm(const ModeShape& mode) {
  std::vector<double> intensity(mode.amplitude.size());
  std::transform(mode.amplitude.begin(), mode.amplitude.end(), intensity.begin(),
                 [](cplx a) { return std::norm(a); });
  return profile_fwhm(mode.grid, intensity);
}

double squeezing_db(double variance) {
  if (!(variance > 0.0)) {
    throw std::invalid_argument("variance must be positive, got " + std::to_string(variance));
  }
  return -10.0 * std::log10(variance / 0.5);
}

}  // namespace ringsqz
