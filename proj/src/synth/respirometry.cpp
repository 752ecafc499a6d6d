#include "fishbit/synth/respirometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fishbit/analysis/solubility.hpp"
#include "fishbit/error.hpp"

namespace fishbit::synth {

double Mo2Curve::at(double speed) const {
  if (speed <= knee_bls) return resting + gain * speed;
  return resting + gain * knee_bls - decline * (speed - knee_bls);
}

analysis::SpeedStep respirometry_step(const StepTraceSpec& spec, std::uint64_t seed) {
  if (!(spec.sample_interval_s > 0.0) || !(spec.measure_seconds > 0.0)) {
    throw Error(Errc::InvalidConfig, "trace duration and interval must be positive");
  }
  analysis::SpeedStep step;
  step.speed_bls = spec.speed_bls;
  step.temp_c = spec.temp_c;
  step.salinity_psu = spec.salinity_psu;
  step.chamber_volume_l = spec.chamber_volume_l;
  step.fish_mass_kg = spec.fish_mass_kg;

  const double solubility = analysis::o2_solubility_mg_per_l(spec.temp_c, spec.salinity_psu);
  const double free_volume = spec.chamber_volume_l - spec.fish_mass_kg;
  const double slope_mg_l_per_h = -spec.planted_mo2 * spec.fish_mass_kg / free_volume;
  const double slope_pct_per_s = slope_mg_l_per_h / solubility * 100.0 / 3600.0;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const auto n = static_cast<std::size_t>(std::floor(spec.measure_seconds / spec.sample_interval_s));
  step.o2.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * spec.sample_interval_s;
    double sat = spec.start_saturation_pct + slope_pct_per_s * t;
    if (spec.noise_pct > 0.0) sat += spec.noise_pct * noise(rng);
    step.o2.push_back({t, std::clamp(sat, 0.0, 100.0)});
  }
  return step;
}

std::vector<analysis::SpeedStep> respirometry_protocol(std::span<const double> speeds,
                                                       const Mo2Curve& curve,
                                                       const StepTraceSpec& base,
                                                       std::uint64_t seed) {
  std::vector<analysis::SpeedStep> steps;
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    StepTraceSpec spec = base;
    spec.speed_bls = speeds[i];
    spec.planted_mo2 = curve.at(speeds[i]);
    steps.push_back(respirometry_step(spec, seed + i));
  }
  return steps;
}

}  // namespace fishbit::synth
