#include "ringsqz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "detail/golden.hpp"
#include "ringsqz/errors.hpp"

namespace ringsqz {

FrequencyGrid make_grid(double span, std::size_t n_points) {
  if (!(span > 0.0) || !std::isfinite(span)) {
    throw std::invalid_argument("grid span must be positive and finite, got " + std::to_string(span));
  }
  if (n_points < 2) {
    throw std::invalid_argument("grid needs at least 2 points, got " + std::to_string(n_points));
  }
  FrequencyGrid g;
  g.span_ = span;
  g.step_ = span / static_cast<double>(n_points);
  g.points_.resize(n_points);
  const double centre = 0.5 * static_cast<double>(n_points - 1);
  for (std::size_t j = 0; j < n_points; ++j) {
    g.points_[j] = (static_cast<double>(j) - centre) * g.step_;
  }
  return g;
}

FrequencyGrid pump_grid_for(const FrequencyGrid& signal) {
  const std::size_t m = 2 * signal.size() - 1;
  return make_grid(signal.step() * static_cast<double>(m), m);
}

void CavityParams::validate() const {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
  };
  require(std::isfinite(gamma_i) && gamma_i >= 0.0, "gamma_i must be >= 0");
  require(std::isfinite(gamma_c) && gamma_c > 0.0, "gamma_c must be > 0");
  require(std::isfinite(gamma_p) && gamma_p > 0.0, "gamma_p must be > 0");
  require(std::isfinite(gamma_pc) && gamma_pc > 0.0 && gamma_pc <= gamma_p,
          "gamma_pc must lie in (0, gamma_p]");
  require(std::isfinite(kappa) && kappa >= 0.0, "kappa must be >= 0");
}

CavityParams CavityParams::lossless(double gamma) {
  CavityParams p;
  p.gamma_i = 0.0;
  p.gamma_c = gamma;
  p.gamma_p = 2.0 * gamma;
  p.gamma_pc = p.gamma_p;
  return p;
}

cplx PumpField::at(double mu) const {
  const double step = grid.step();
  const double pos = (mu - grid.front()) / step;
  const double last = static_cast<double>(grid.size() - 1);
  constexpr double kSnap = 1e-9;
  if (pos < -kSnap || pos > last + kSnap) {
    throw CoverageError("pump grid [" + std::to_string(grid.front()) + ", " +
                        std::to_string(grid.back()) + "] does not cover detuning " +
                        std::to_string(mu));
  }
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) < kSnap) {
    return amplitude[static_cast<std::size_t>(std::clamp(nearest, 0.0, last))];
  }
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const double w = pos - static_cast<double>(i);
  return (1.0 - w) * amplitude[i] + w * amplitude[i + 1];
}

PumpField PumpField::scaled(cplx factor) const {
  PumpField out = *this;
  for (auto& a : out.amplitude) a *= factor;
  return out;
}

PumpField gaussian_pump_input(double delta, cplx peak, const FrequencyGrid& grid) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("pump bandwidth delta must be > 0, got " + std::to_string(delta));
  }
  PumpField f{grid, std::vector<cplx>(grid.size()), FieldKind::input};
  const double c = 4.0 * std::numbers::ln2 / (delta * delta);
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const double mu = grid[m];
    f.amplitude[m] = peak * std::exp(-c * mu * mu);
  }
  return f;
}

PumpField intracavity_pump(const PumpField& input, const CavityParams& params) {
  if (input.kind != FieldKind::input) {
    throw std::invalid_argument("intracavity_pump expects an input-kind field");
  }
  PumpField f{input.grid, std::vector<cplx>(input.grid.size()), FieldKind::intracavity};
  const double root = std::sqrt(params.gamma_pc);
  for (std::size_t m = 0; m < f.amplitude.size(); ++m) {
    f.amplitude[m] = input.amplitude[m] * root / cplx(0.5 * params.gamma_p, -input.grid[m]);
  }
  return f;
}

cplx field_at_time(const PumpField& field, double t) {
  const auto& g = field.grid;
  // e^{-i μ_m t} by recurrence from the first point.
  const cplx rot = std::polar(1.0, -g.step() * t);
  cplx phase = std::polar(1.0, -g.front() * t);
  cplx acc = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) {
    acc += field.amplitude[m] * phase;
    phase *= rot;
  }
  return acc * (g.step() / (2.0 * std::numbers::pi));
}

TemporalProfile temporal_profile(const PumpField& field, std::size_t oversample) {
  const auto& g = field.grid;
  oversample = std::max<std::size_t>(oversample, 1);
  const std::size_t nt = g.size() * oversample;
  const double period = 2.0 * std::numbers::pi / g.step();

  TemporalProfile p;
  p.dt = period / static_cast<double>(nt);
  p.times.resize(nt);
  p.samples.resize(nt);
  std::size_t best = 0;
  for (std::size_t k = 0; k < nt; ++k) {
    const double t = -0.5 * period + static_cast<double>(k) * p.dt;
    p.times[k] = t;
    p.samples[k] = field_at_time(field, t);
    if (std::norm(p.samples[k]) > std::norm(p.samples[best])) best = k;
  }
  auto power = [&](double t) { return std::norm(field_at_time(field, t)); };
  const double t0 = p.times[best];
  auto [tpk, ppk] = detail::golden_maximize(power, t0 - p.dt, t0 + p.dt, 1e-10 * period);
  if (ppk >= std::norm(p.samples[best])) {
    p.peak_time = tpk;
    p.peak_power = ppk;
  } else {
    p.peak_time = t0;
    p.peak_power = std::norm(p.samples[best]);
  }
  return p;
}

}  // namespace ringsqz
