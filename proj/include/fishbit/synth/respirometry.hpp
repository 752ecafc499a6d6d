#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fishbit/analysis/respirometry.hpp"

namespace fishbit::synth {

/// Planted MO2 (mgO2/kg/h) vs speed: linear rise to a knee, then a decline.
struct Mo2Curve {
  double resting = 150.0;
  double gain = 25.0;      // per BL/s
  double knee_bls = 4.5;
  double decline = 40.0;   // per BL/s beyond the knee

  double at(double speed) const;
};

struct StepTraceSpec {
  double speed_bls = 1.0;
  double planted_mo2 = 240.0;
  double temp_c = 20.0;
  double salinity_psu = 37.0;
  double chamber_volume_l = 10.0;
  double fish_mass_kg = 0.25;
  double start_saturation_pct = 95.0;
  double noise_pct = 0.0;          // Gaussian std of the probe reading, % saturation
  double measure_seconds = 210.0;
  double sample_interval_s = 1.0;
};

/// Sealed-chamber trace whose exact least-squares MO2 is `planted_mo2`
/// (when noise_pct = 0): the formula in analysis::mo2_from_step inverted.
analysis::SpeedStep respirometry_step(const StepTraceSpec& spec, std::uint64_t seed = 0);

/// One step per speed with MO2 taken from `curve`.
std::vector<analysis::SpeedStep> respirometry_protocol(std::span<const double> speeds,
                                                       const Mo2Curve& curve,
                                                       const StepTraceSpec& base,
                                                       std::uint64_t seed);

}  // namespace fishbit::synth
