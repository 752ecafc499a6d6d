#include "fishbit/signal/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fishbit/error.hpp"

namespace fishbit::signal {

std::vector<double> AccelSeries::channel(Axis axis) const {
  std::vector<double> out(samples.size());
  std::transform(samples.begin(), samples.end(), out.begin(), [axis](const AccelSample& s) {
    switch (axis) {
      case Axis::X: return s.ax;
      case Axis::Y: return s.ay;
      case Axis::Z: break;
    }
    return s.az;
  });
  return out;
}

AccelSeries AccelSeries::slice(std::size_t begin, std::size_t count) const {
  if (begin > samples.size() || count > samples.size() - begin) {
    throw Error(Errc::InsufficientData, "slice [" + std::to_string(begin) + ", +" +
                                            std::to_string(count) + ") exceeds series of " +
                                            std::to_string(samples.size()) + " samples");
  }
  AccelSeries out;
  out.fs = fs;
  out.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(begin),
                     samples.begin() + static_cast<std::ptrdiff_t>(begin + count));
  return out;
}

bool AccelSeries::within_full_scale() const noexcept {
  return std::all_of(samples.begin(), samples.end(), [](const AccelSample& s) {
    return std::abs(s.ax) <= kFullScaleG && std::abs(s.ay) <= kFullScaleG &&
           std::abs(s.az) <= kFullScaleG;
  });
}

const char* mode_name(Mode mode) noexcept { return mode == Mode::Exact ? "exact" : "onboard"; }

EstimatorConfig EstimatorConfig::exact(double fs) {
  EstimatorConfig cfg;
  cfg.fs = fs;
  cfg.frame_seconds = 10.0;
  return cfg;
}

EstimatorConfig EstimatorConfig::onboard(double fs) {
  EstimatorConfig cfg;
  cfg.fs = fs;
  cfg.frame_seconds = 1024.0 / 100.0;
  return cfg;
}

EstimatorConfig EstimatorConfig::for_mode(Mode mode, double fs) {
  return mode == Mode::Exact ? exact(fs) : onboard(fs);
}

std::size_t EstimatorConfig::frame_samples() const {
  return static_cast<std::size_t>(std::llround(frame_seconds * fs));
}

std::size_t EstimatorConfig::window_samples() const {
  return frame_samples() * static_cast<std::size_t>(std::max(frames_per_window, 0));
}

std::size_t EstimatorConfig::warmup_samples() const {
  return static_cast<std::size_t>(std::llround(warmup_seconds * fs));
}

void EstimatorConfig::validate() const {
  auto fail = [](const std::string& why) { throw Error(Errc::InvalidConfig, why); };
  if (!(fs > 0.0) || !std::isfinite(fs)) fail("fs must be positive");
  if (!(band_low > 0.0 && band_low < band_high && band_high < fs / 2.0)) {
    fail("band edges must satisfy 0 < low < high < fs/2");
  }
  if (frames_per_window < 1) fail("frames_per_window must be >= 1");
  const double samples = frame_seconds * fs;
  if (!(samples >= 2.0) || std::abs(samples - std::round(samples)) > 1e-6) {
    fail("frame_seconds * fs must be an integer sample count >= 2");
  }
  if (!(percentile > 0.0 && percentile <= 1.0)) fail("percentile must be in (0, 1]");
  if (warmup_seconds < 0.0 || warmup_samples() >= frame_samples()) {
    fail("warm-up must be shorter than one frame");
  }
}

}  // namespace fishbit::signal
