#pragma once

#include <cstddef>
#include <vector>

namespace fishbit::signal {

/// Sensor full scale, in g.
inline constexpr double kFullScaleG = 8.0;

/// One tri-axial reading in g. z is the opercular (breathing) axis.
struct AccelSample {
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;

  bool operator==(const AccelSample&) const = default;
};

enum class Axis { X, Y, Z };

/// Uniformly sampled tri-axial series starting at t = 0.
struct AccelSeries {
  std::vector<AccelSample> samples;
  double fs = 100.0;

  std::size_t size() const noexcept { return samples.size(); }
  double duration() const noexcept { return static_cast<double>(samples.size()) / fs; }

  std::vector<double> channel(Axis axis) const;
  AccelSeries slice(std::size_t begin, std::size_t count) const;

  /// True if every component lies within the sensor full scale.
  bool within_full_scale() const noexcept;

  bool operator==(const AccelSeries&) const = default;
};

enum class Mode { Exact, Onboard };

const char* mode_name(Mode mode) noexcept;

struct EstimatorConfig {
  double fs = 100.0;
  double frame_seconds = 10.0;
  int frames_per_window = 12;
  double band_low = 0.5;
  double band_high = 8.0;
  double percentile = 0.25;
  /// Leading part of the first frame excluded from peak counting.
  double warmup_seconds = 2.0;
  bool filter_z = true;
  bool filter_xy = false;

  /// PC settings: T = 10 s, 120 s windows.
  static EstimatorConfig exact(double fs = 100.0);
  /// Firmware settings: T = 10.24 s (1024 samples at 100 Hz), 122.88 s windows.
  static EstimatorConfig onboard(double fs = 100.0);
  static EstimatorConfig for_mode(Mode mode, double fs = 100.0);

  std::size_t frame_samples() const;
  std::size_t window_samples() const;
  std::size_t warmup_samples() const;
  double window_seconds() const { return frame_seconds * frames_per_window; }

  /// Throws Error(InvalidConfig) on any violated invariant.
  void validate() const;
};

struct FrameEstimate {
  int peak_count = 0;
  double jerk_energy = 0.0;
};

struct WindowResult {
  double resp_freq = 0.0;  // breaths/s
  double activity = 0.0;   // g
  Mode mode = Mode::Exact;
  double window_start = 0.0;  // s since acquisition start

  bool operator==(const WindowResult&) const = default;
};

}  // namespace fishbit::signal
