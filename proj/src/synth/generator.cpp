#include "fishbit/synth/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fishbit/error.hpp"
#include "fishbit/signal/estimators.hpp"

namespace fishbit::synth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// splitmix64 finaliser, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

SignalGenerator::SignalGenerator(SpeciesPreset preset, double fs, std::uint64_t seed,
                                 double start_s, double truth_frame_seconds)
    : preset_(std::move(preset)), fs_(fs), truth_frame_seconds_(truth_frame_seconds), rng_(seed) {
  validate(preset_);
  if (!(fs > 0.0)) throw Error(Errc::InvalidConfig, "fs must be positive");
  if (!(truth_frame_seconds > 0.0)) throw Error(Errc::InvalidConfig, "truth frame must be positive");
  sample_index_ = std::llround(start_s * fs);

  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  breath_phase_ = phase(rng_);
  harmonic_phase_ = phase(rng_);
  tail_phase_ = phase(rng_);
  y_phase_offset_ = phase(rng_);

  const auto interval = std::max<std::int64_t>(1, std::llround(preset_.breathing.jitter_interval * fs));
  next_jitter_sample_ = (sample_index_ / interval) * interval;
  if (preset_.swim.turn_event_rate > 0.0) {
    std::exponential_distribution<double> gap(preset_.swim.turn_event_rate);
    next_turn_time_ = time() + gap(rng_);
  }
}

SegmentParams SignalGenerator::params_at(double speed, const FatigueModel& fatigue) const {
  return {breathing_frequency(preset_.breathing, speed, fatigue),
          tail_amplitude(preset_.swim, speed, fatigue), preset_.swim.tailbeat_freq(speed)};
}

double SignalGenerator::draw_jitter() {
  const double sd = preset_.breathing.freq_jitter;
  return sd > 0.0 ? sd * unit_normal_(rng_) : 0.0;
}

double SignalGenerator::turn_kernel(double dt) const {
  const double width = preset_.swim.turn_kernel_seconds;
  if (dt < 0.0 || dt >= width) return 0.0;
  return 0.5 * (1.0 - std::cos(kTwoPi * dt / width));
}

SynthOutput SignalGenerator::next(double duration_s, const SegmentParams& params) {
  if (!(duration_s > 0.0)) throw Error(Errc::InvalidConfig, "duration must be positive");
  const auto n = static_cast<std::size_t>(std::llround(duration_s * fs_));
  const auto& b = preset_.breathing;
  const auto& s = preset_.swim;
  const auto jitter_interval = std::max<std::int64_t>(1, std::llround(b.jitter_interval * fs_));

  SynthOutput out;
  out.series.fs = fs_;
  out.series.samples.resize(n);
  std::vector<double> clean_x(n), clean_y(n), inst_freq(n);
  std::exponential_distribution<double> gap(s.turn_event_rate > 0.0 ? s.turn_event_rate : 1.0);
  std::exponential_distribution<double> magnitude(1.0);
  std::uniform_real_distribution<double> direction(0.0, kTwoPi);

  for (std::size_t i = 0; i < n; ++i) {
    const double t = time();
    if (sample_index_ >= next_jitter_sample_) {
      jitter_offset_ = draw_jitter();
      next_jitter_sample_ += jitter_interval;
    }
    const double f = std::max(0.0, params.breath_freq + jitter_offset_);
    inst_freq[i] = f;

    while (s.turn_event_rate > 0.0 && next_turn_time_ <= t) {
      const double m = s.turn_amplitude * magnitude(rng_);
      const double theta = direction(rng_);
      turns_.push_back({next_turn_time_, m * std::cos(theta), m * std::sin(theta)});
      next_turn_time_ += gap(rng_);
    }
    double turn_x = 0.0, turn_y = 0.0;
    for (const auto& ev : turns_) {
      const double k = turn_kernel(t - ev.t0);
      turn_x += k * ev.gx;
      turn_y += k * ev.gy;
    }
    std::erase_if(turns_, [&](const TurnEvent& ev) { return t - ev.t0 >= s.turn_kernel_seconds; });

    const double tail_x = params.tail_amplitude * std::cos(tail_phase_);
    const double tail_y = s.y_ratio * params.tail_amplitude * std::sin(tail_phase_ + y_phase_offset_);
    clean_x[i] = tail_x + turn_x;
    clean_y[i] = tail_y + turn_y;

    const double z = b.amplitude * (std::sin(breath_phase_) +
                                    b.harmonic2_fraction * std::sin(2.0 * breath_phase_ + harmonic_phase_));
    const double nz = unit_normal_(rng_);
    const double nx = unit_normal_(rng_);
    const double ny = unit_normal_(rng_);
    out.series.samples[i] = {s.static_offset_x + clean_x[i] + s.noise_std * nx,
                             s.static_offset_y + clean_y[i] + s.noise_std * ny,
                             b.static_offset + z + b.noise_std * nz};

    breath_phase_ = std::fmod(breath_phase_ + kTwoPi * f / fs_, kTwoPi);
    tail_phase_ = std::fmod(tail_phase_ + kTwoPi * params.tailbeat_freq / fs_, kTwoPi);
    ++sample_index_;
  }

  const double start = time() - static_cast<double>(n) / fs_;
  out.truth.frame_seconds = truth_frame_seconds_;
  const auto frame = static_cast<std::size_t>(std::llround(truth_frame_seconds_ * fs_));
  for (std::size_t k = 0; frame >= 2 && (k + 1) * frame <= n; ++k) {
    GroundTruthFrame g;
    g.start_s = start + static_cast<double>(k * frame) / fs_;
    double sum = 0.0;
    for (std::size_t i = k * frame; i < (k + 1) * frame; ++i) sum += inst_freq[i];
    g.breath_freq = sum / static_cast<double>(frame);
    g.jerk_energy = signal::jerk_energy_exact(std::span(clean_x).subspan(k * frame, frame),
                                              std::span(clean_y).subspan(k * frame, frame));
    out.truth.frames.push_back(g);
  }
  return out;
}

SynthOutput generate(const SpeciesPreset& preset, double duration, double fs, std::uint64_t seed) {
  SignalGenerator gen(preset, fs, seed);
  return gen.next(duration, gen.params_at(preset.swim.speed_bls));
}

std::vector<ProtocolStep> swim_protocol(const SpeciesPreset& preset, std::span<const double> speeds,
                                        double step_seconds, double fs, std::uint64_t seed,
                                        const FatigueModel& fatigue) {
  if (speeds.empty()) throw Error(Errc::InvalidSpeeds, "no speeds given");
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    if (speeds[i] < 0.0 || (i > 0 && !(speeds[i] > speeds[i - 1]))) {
      throw Error(Errc::InvalidSpeeds, "speeds must be non-negative and strictly ascending");
    }
  }
  SignalGenerator gen(preset, fs, seed);
  std::vector<ProtocolStep> steps;
  steps.reserve(speeds.size());
  for (const double speed : speeds) {
    const SegmentParams params = gen.params_at(speed, fatigue);
    auto out = gen.next(step_seconds, params);
    steps.push_back({speed, std::move(out.series), params.breath_freq, params.tail_amplitude,
                     std::move(out.truth)});
  }
  return steps;
}

device::SampleSource synth_source(SpeciesPreset preset, double fs, std::uint64_t seed) {
  validate(preset);
  return [preset = std::move(preset), fs, seed](double start_s, double duration_s) {
    const auto start_sample = static_cast<std::uint64_t>(std::llround(start_s * fs));
    SignalGenerator gen(preset, fs, mix_seed(seed, start_sample), start_s);
    return gen.next(duration_s, gen.params_at(preset.swim.speed_bls)).series;
  };
}

}  // namespace fishbit::synth
