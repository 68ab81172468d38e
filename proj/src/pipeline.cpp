#include "ringsqz/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ringsqz/nondegenerate.hpp"

namespace ringsqz {

void PointSpec::validate() const {
  params.validate();
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("delta must be positive, got " + std::to_string(delta));
  }
  if (!(power_fraction >= 0.0 && power_fraction < 1.0)) {
    throw std::invalid_argument("power fraction must lie in [0, 1) so the output stays squeezed "
                                "vacuum, got " + std::to_string(power_fraction));
  }
  for (const GridSpec* g : {&signal, &threshold}) {
    if (g->points < 2) throw std::invalid_argument("grid needs at least 2 points");
    if (g->span && !(*g->span > 0.0)) throw std::invalid_argument("grid span must be positive");
  }
}

FrequencyGrid signal_grid(const PointSpec& spec) {
  const double g = spec.params.gamma();
  const double span =
      spec.signal.span.value_or(std::max(64.0 * std::min(spec.delta, g), 4.0 * std::max(spec.params.gamma_p, g)));
  return make_grid(span, spec.signal.points);
}

FrequencyGrid threshold_grid(const PointSpec& spec) {
  const double span = spec.threshold.span.value_or(
      16.0 * std::max({spec.delta, spec.params.gamma_p, spec.params.gamma()}));
  return make_grid(span, spec.threshold.points);
}

PointSpec refined(PointSpec spec) {
  // Pin the spans first so doubling refines rather than rescales.
  spec.signal.span = signal_grid(spec).span();
  spec.threshold.span = threshold_grid(spec).span();
  spec.signal.points *= 2;
  spec.threshold.points *= 2;
  return spec;
}

PointResult run_point(const PointSpec& spec) {
  spec.validate();
  PointResult r;
  r.grid = signal_grid(spec);
  r.threshold = threshold_amplitude(cplx(1.0), spec.delta, spec.params, threshold_grid(spec),
                                    spec.power_def);
  r.pump_scale = r.threshold.amplitude_scale * std::sqrt(spec.power_fraction);

  const PumpField pump = intracavity_pump(
      gaussian_pump_input(spec.delta, cplx(r.pump_scale), pump_grid_for(r.grid)), spec.params);
  const BlockMatrix m = spec.nondegenerate
                            ? build_joint_generator(pump, spec.params, spec.params, r.grid).m
                            : build_generator(pump, spec.params, r.grid);
  require_stable(m);
  r.scattering = core_scattering(m);
  r.decomposition = bloch_messiah(r.scattering, spec.decomposition);
  r.moments = output_moments(r.scattering);
  r.mode_number = effective_mode_number(r.decomposition.xi);
  return r;
}

}  // namespace ringsqz
