#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fishbit::synth {

/// Opercular breathing on z: a fundamental at the breathing rate, a second
/// harmonic, per-segment frequency jitter and white noise.
struct BreathingModel {
  double base_freq = 2.35;          // Hz at rest
  double freq_jitter = 0.02;        // Hz std, redrawn every jitter_interval
  double jitter_interval = 10.0;    // s
  double amplitude = 0.05;          // g
  double harmonic2_fraction = 0.15; // < 0.25 keeps two extrema per cycle
  double noise_std = 0.002;         // g
  double speed_gain = 0.35;         // Hz per BL/s
  double static_offset = 0.98;      // g, gravity share on z
};

/// Swimming on x/y: tail-beat sinusoid whose amplitude grows as a*exp(b*speed),
/// plus Poisson turn events smoothed by a short Hann kernel.
struct SwimModel {
  double speed_bls = 0.0;
  double tailbeat_base = 1.5;       // Hz at speed 0
  double tailbeat_slope = 0.8;      // Hz per BL/s
  double amp_a = 0.01;              // g
  double amp_b = 0.6;               // 1 / (BL/s)
  double y_ratio = 0.5;             // y amplitude relative to x
  double turn_event_rate = 0.05;    // events/s
  double turn_amplitude = 0.03;     // g, mean of the exponential magnitude
  double turn_kernel_seconds = 0.2;
  double noise_std = 0.0005;        // g
  double static_offset_x = 0.10;    // g
  double static_offset_y = -0.05;   // g

  double tailbeat_freq(double speed) const { return tailbeat_base + tailbeat_slope * speed; }
  double amplitude(double speed) const;
};

struct SpeciesPreset {
  std::string name;
  BreathingModel breathing;
  SwimModel swim;
};

/// Breathing and activity knees past which the fish tires.
struct FatigueModel {
  bool enabled = false;
  double breathing_knee_bls = 4.0;
  double breathing_decline = 0.5;  // Hz per BL/s beyond the knee
  double activity_knee_bls = 5.0;
  double activity_decline = 0.35;  // fractional amplitude loss per BL/s beyond the knee
};

/// "sea_bream" or "sea_bass". Throws InvalidPreset.
SpeciesPreset species_preset(std::string_view name);
std::vector<std::string> species_preset_names();

/// Throws InvalidPreset on any out-of-range parameter.
void validate(const SpeciesPreset& preset);

/// Breathing rate at a swimming speed, with an optional fatigue knee.
double breathing_frequency(const BreathingModel& model, double speed,
                           const FatigueModel& fatigue = {});

/// Tail-beat amplitude at a speed, with an optional fatigue knee.
double tail_amplitude(const SwimModel& model, double speed, const FatigueModel& fatigue = {});

}  // namespace fishbit::synth
