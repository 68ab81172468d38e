#include "ringsqz/lo_shaping.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "detail/golden.hpp"

namespace ringsqz {

void LoConfig::validate() const {
  if (!(delta_lo > 0.0)) throw std::invalid_argument("LO bandwidth must be > 0");
  if (!(gamma_f > 0.0)) throw std::invalid_argument("filter linewidth must be > 0");
  if (!std::isfinite(delay)) throw std::invalid_argument("LO delay must be finite");
}

double default_lo_bandwidth(double delta, bool match_pump) {
  return match_pump ? delta : delta / std::numbers::sqrt2;
}

ModeShape filtered_lo(const LoConfig& cfg, const FrequencyGrid& grid) {
  cfg.validate();
  const double c = 4.0 * std::numbers::ln2 / (cfg.delta_lo * cfg.delta_lo);
  std::vector<cplx> v(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double nu = grid[j];
    cplx a = std::exp(-c * nu * nu);
    if (std::isfinite(cfg.gamma_f)) a *= (0.5 * cfg.gamma_f) / cplx(0.5 * cfg.gamma_f, -nu);
    v[j] = a * std::polar(1.0, nu * cfg.delay);
  }
  return normalized_mode(grid, std::move(v));
}

namespace {

// step · Σ c_j e^{iν_j τ}
cplx delayed_sum(const std::vector<cplx>& c, const FrequencyGrid& g, double tau) {
  const cplx rot = std::polar(1.0, g.step() * tau);
  cplx ph = std::polar(1.0, g.front() * tau);
  cplx acc = 0.0;
  for (const auto& x : c) {
    acc += x * ph;
    ph *= rot;
  }
  return acc * g.step();
}

}  // namespace

OverlapResult overlap(const ModeShape& a, const ModeShape& b, bool optimize_delay) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("overlap: modes live on different grids");
  std::vector<cplx> c(a.amplitude.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = std::conj(a.amplitude[j]) * b.amplitude[j];

  auto value = [&](double tau) { return std::norm(delayed_sum(c, a.grid, tau)); };
  if (!optimize_delay) return {value(0.0), 0.0};

  // |Σ c e^{iντ}| has period 2π/step; scan one period symmetric about zero.
  const double period = 2.0 * std::numbers::pi / a.grid.step();
  const std::size_t samples = 8 * c.size();
  const double dtau = period / static_cast<double>(samples);
  double best_tau = 0.0;
  double best = value(0.0);
  for (std::size_t k = 0; k < samples; ++k) {
    const double tau = -0.5 * period + static_cast<double>(k) * dtau;
    const double v = value(tau);
    if (v > best) {
      best = v;
      best_tau = tau;
    }
  }
  auto [tau, v] = detail::golden_maximize(value, best_tau - dtau, best_tau + dtau, 1e-12 * period);
  if (v >= best) return {v, tau};
  return {best, best_tau};
}

FilterOptimum optimize_filter(const LoConfig& templ, const ModeShape& target,
                              const FilterSearch& search) {
  templ.validate();
  if (!(search.gamma_min > 0.0) || !(search.gamma_max > search.gamma_min) || search.coarse_points < 3) {
    throw std::invalid_argument("invalid filter search bracket");
  }
  auto evaluate = [&](double log_g) {
    LoConfig cfg = templ;
    cfg.gamma_f = std::exp(log_g);
    cfg.delay = 0.0;
    return overlap(filtered_lo(cfg, target.grid), target, true);
  };

  const double lo = std::log(search.gamma_min);
  const double hi = std::log(search.gamma_max);
  const double dx = (hi - lo) / static_cast<double>(search.coarse_points - 1);
  std::size_t best_i = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < search.coarse_points; ++i) {
    const double v = evaluate(lo + static_cast<double>(i) * dx).overlap;
    if (v > best) {
      best = v;
      best_i = i;
    }
  }

  FilterOptimum out;
  if (best_i == 0 || best_i + 1 == search.coarse_points) {
    const double x = lo + static_cast<double>(best_i) * dx;
    const auto r = evaluate(x);
    out = {std::exp(x), -r.delay, r.overlap, true};
    return out;
  }
  const double x0 = lo + static_cast<double>(best_i - 1) * dx;
  const double x1 = lo + static_cast<double>(best_i + 1) * dx;
  const double x = detail::golden_maximize([&](double t) { return evaluate(t).overlap; }, x0, x1,
                                           std::log1p(search.rel_tol))
                       .first;
  const auto r = evaluate(x);
  // τ rotates the target; the LO itself needs the opposite delay.
  out = {std::exp(x), -r.delay, r.overlap, false};
  return out;
}

double measured_squeezing(const GaussianMoments& m, const ModeShape& lo) {
  return squeezing_db(homodyne(m, lo).min_variance);
}

}  // namespace ringsqz
