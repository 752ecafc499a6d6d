#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fishbit/device/simulator.hpp"
#include "fishbit/signal/types.hpp"
#include "fishbit/synth/models.hpp"

namespace fishbit::synth {

struct GroundTruthFrame {
  double start_s = 0.0;
  double breath_freq = 0.0;  // mean instantaneous breathing rate over the frame, Hz
  double jerk_energy = 0.0;  // exact jerk energy of the noise-free x/y motion, g
};

struct GroundTruth {
  double frame_seconds = 10.0;
  std::vector<GroundTruthFrame> frames;
};

struct SynthOutput {
  signal::AccelSeries series;
  GroundTruth truth;
};

/// Per-segment drive of the generator.
struct SegmentParams {
  double breath_freq = 2.0;
  double tail_amplitude = 0.0;
  double tailbeat_freq = 1.5;
};

/// Stateful generator: consecutive next() calls continue every phase, the
/// jitter schedule and in-flight turn events, so segments join seamlessly.
class SignalGenerator {
 public:
  SignalGenerator(SpeciesPreset preset, double fs, std::uint64_t seed, double start_s = 0.0,
                  double truth_frame_seconds = 10.0);

  SegmentParams params_at(double speed, const FatigueModel& fatigue = {}) const;

  SynthOutput next(double duration_s, const SegmentParams& params);

  double time() const noexcept { return static_cast<double>(sample_index_) / fs_; }

 private:
  struct TurnEvent {
    double t0;
    double gx;
    double gy;
  };

  double draw_jitter();
  double turn_kernel(double dt) const;

  SpeciesPreset preset_;
  double fs_;
  double truth_frame_seconds_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> unit_normal_{0.0, 1.0};

  std::int64_t sample_index_ = 0;
  double breath_phase_ = 0.0;
  double harmonic_phase_ = 0.0;
  double tail_phase_ = 0.0;
  double y_phase_offset_ = 0.0;
  double jitter_offset_ = 0.0;
  std::int64_t next_jitter_sample_ = 0;
  double next_turn_time_ = 0.0;
  std::vector<TurnEvent> turns_;
};

/// `duration` seconds at the preset's own swim speed. Throws InvalidPreset.
SynthOutput generate(const SpeciesPreset& preset, double duration, double fs, std::uint64_t seed);

struct ProtocolStep {
  double speed = 0.0;
  signal::AccelSeries series;
  double true_breath_freq = 0.0;
  double true_tail_amplitude = 0.0;
  GroundTruth truth;
};

/// Swim-tunnel protocol: one continuous recording split into steps of
/// `step_seconds` at each speed. Throws InvalidSpeeds unless speeds ascend.
std::vector<ProtocolStep> swim_protocol(const SpeciesPreset& preset, std::span<const double> speeds,
                                        double step_seconds, double fs, std::uint64_t seed,
                                        const FatigueModel& fatigue = {});

/// Device sample source that synthesises each requested window on demand.
/// Each window is seeded from (seed, start sample) so requests are order-free.
device::SampleSource synth_source(SpeciesPreset preset, double fs, std::uint64_t seed);

}  // namespace fishbit::synth
