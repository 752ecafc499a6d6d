#include "fishbit/synth/models.hpp"

#include <algorithm>
#include <cmath>

#include "fishbit/error.hpp"

namespace fishbit::synth {

double SwimModel::amplitude(double speed) const { return amp_a * std::exp(amp_b * speed); }

SpeciesPreset species_preset(std::string_view name) {
  SpeciesPreset p;
  p.name = std::string(name);
  if (name == "sea_bream") {
    p.breathing.base_freq = 2.35;
    p.breathing.speed_gain = 0.35;
    p.swim.amp_a = 0.01;
    p.swim.amp_b = 0.6;
  } else if (name == "sea_bass") {
    // Lower breathing rate and a flatter activity curve at high speed.
    p.breathing.base_freq = 2.0;
    p.breathing.speed_gain = 0.3;
    p.breathing.amplitude = 0.045;
    p.swim.amp_a = 0.01;
    p.swim.amp_b = 0.5;
    p.swim.tailbeat_base = 1.4;
  } else {
    throw Error(Errc::InvalidPreset, "unknown species preset '" + std::string(name) + "'");
  }
  return p;
}

std::vector<std::string> species_preset_names() { return {"sea_bream", "sea_bass"}; }

void validate(const SpeciesPreset& p) {
  auto fail = [&](const std::string& why) {
    throw Error(Errc::InvalidPreset, "preset '" + p.name + "': " + why);
  };
  const auto& b = p.breathing;
  const auto& s = p.swim;
  if (!(b.base_freq >= 0.5 && b.base_freq <= 5.0)) fail("breathing.base_freq outside [0.5, 5] Hz");
  if (b.freq_jitter < 0.0 || b.noise_std < 0.0 || b.amplitude < 0.0) {
    fail("breathing jitter, noise and amplitude must be non-negative");
  }
  if (!(b.jitter_interval > 0.0)) fail("breathing.jitter_interval must be positive");
  if (b.harmonic2_fraction < 0.0 || b.harmonic2_fraction >= 0.25) {
    fail("breathing.harmonic2_fraction must be in [0, 0.25)");
  }
  if (s.speed_bls < 0.0) fail("swim.speed_bls must be non-negative");
  if (!(s.amp_a >= 0.0) || !(s.amp_b > 0.0)) {
    fail("swim amplitude curve must be increasing (amp_a >= 0, amp_b > 0)");
  }
  if (s.turn_event_rate < 0.0 || s.turn_amplitude < 0.0 || s.noise_std < 0.0) {
    fail("swim turn rate, turn amplitude and noise must be non-negative");
  }
  if (!(s.turn_kernel_seconds > 0.0)) fail("swim.turn_kernel_seconds must be positive");
  if (!(s.tailbeat_base > 0.0) || s.tailbeat_slope < 0.0) fail("tail-beat frequency must be positive");
}

double breathing_frequency(const BreathingModel& model, double speed, const FatigueModel& fatigue) {
  if (!fatigue.enabled || speed <= fatigue.breathing_knee_bls) {
    return model.base_freq + model.speed_gain * speed;
  }
  const double peak = model.base_freq + model.speed_gain * fatigue.breathing_knee_bls;
  return peak - fatigue.breathing_decline * (speed - fatigue.breathing_knee_bls);
}

double tail_amplitude(const SwimModel& model, double speed, const FatigueModel& fatigue) {
  if (!fatigue.enabled || speed <= fatigue.activity_knee_bls) return model.amplitude(speed);
  const double peak = model.amplitude(fatigue.activity_knee_bls);
  const double loss = fatigue.activity_decline * (speed - fatigue.activity_knee_bls);
  return peak * std::max(0.0, 1.0 - loss);
}

}  // namespace fishbit::synth
