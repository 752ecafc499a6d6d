#include "fishbit/signal/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fishbit/error.hpp"
#include "fishbit/signal/filter.hpp"

namespace fishbit::signal {

namespace {

void require_frames(std::size_t available, const EstimatorConfig& cfg) {
  if (available < cfg.window_samples()) {
    throw Error(Errc::InsufficientData,
                "need " + std::to_string(cfg.frames_per_window) + " frames of " +
                    std::to_string(cfg.frame_samples()) + " samples, got " +
                    std::to_string(available) + " samples");
  }
}

void require_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::FrameTooShort, "x and y frames differ in length");
  }
  if (x.size() < 2) throw Error(Errc::FrameTooShort, "frame needs at least 2 samples");
}

// Mean of the first difference of c.
double diff_mean(std::span<const double> c) {
  double sum = 0.0;
  for (std::size_t n = 1; n < c.size(); ++n) sum += c[n] - c[n - 1];
  return sum / static_cast<double>(c.size() - 1);
}

double diff_variance(std::span<const double> c) {
  const double mu = diff_mean(c);
  double ss = 0.0;
  for (std::size_t n = 1; n < c.size(); ++n) {
    const double e = (c[n] - c[n - 1]) - mu;
    ss += e * e;
  }
  return ss / static_cast<double>(c.size() - 1);
}

double diff_mean_abs_dev(std::span<const double> c) {
  const double mu = diff_mean(c);
  double sad = 0.0;
  for (std::size_t n = 1; n < c.size(); ++n) sad += std::abs((c[n] - c[n - 1]) - mu);
  return sad / static_cast<double>(c.size() - 1);
}

}  // namespace

std::size_t nearest_rank_index(std::size_t n, double q) {
  if (n == 0) throw Error(Errc::EmptyInput, "percentile of empty set");
  // Guard against q*n landing a hair above an integer.
  const double rank = std::ceil(q * static_cast<double>(n) - 1e-9);
  const auto k = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(n)));
  return k - 1;
}

double nearest_rank(std::vector<double> values, double q) {
  const std::size_t idx = nearest_rank_index(values.size(), q);
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(idx),
                   values.end());
  return values[idx];
}

int count_derivative_zero_crossings(std::span<const double> frame) {
  int crossings = 0;
  int prev_sign = 0;
  for (std::size_t n = 1; n < frame.size(); ++n) {
    const double d = frame[n] - frame[n - 1];
    const int sign = (d > 0.0) - (d < 0.0);
    if (sign == 0) continue;
    if (prev_sign != 0 && sign != prev_sign) ++crossings;
    prev_sign = sign;
  }
  return crossings;
}

int count_peaks_in_frame(std::span<const double> frame) {
  if (frame.size() < 2) throw Error(Errc::FrameTooShort, "frame needs at least 2 samples");
  return count_derivative_zero_crossings(frame) / 2;
}

std::vector<int> frame_peak_counts(std::span<const double> z, const EstimatorConfig& cfg) {
  cfg.validate();
  require_frames(z.size(), cfg);
  const std::size_t frame = cfg.frame_samples();
  const auto window = z.first(cfg.window_samples());

  std::vector<double> filtered;
  std::span<const double> source = window;
  if (cfg.filter_z) {
    filtered = bandpass_filter(window, cfg);
    source = filtered;
  }

  std::vector<int> counts(static_cast<std::size_t>(cfg.frames_per_window));
  for (std::size_t k = 0; k < counts.size(); ++k) {
    std::size_t begin = k * frame;
    const std::size_t end = begin + frame;
    if (k == 0 && cfg.filter_z) begin += cfg.warmup_samples();
    counts[k] = count_peaks_in_frame(source.subspan(begin, end - begin));
  }
  return counts;
}

double respiratory_frequency(std::span<const double> z, const EstimatorConfig& cfg) {
  const std::vector<int> counts = frame_peak_counts(z, cfg);
  const double peaks = nearest_rank(std::vector<double>(counts.begin(), counts.end()),
                                    cfg.percentile);
  return std::min(peaks / cfg.frame_seconds, cfg.band_high);
}

double jerk_energy_exact(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y);
  return std::sqrt(diff_variance(x) + diff_variance(y));
}

double jerk_energy_onboard(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y);
  return diff_mean_abs_dev(x) + diff_mean_abs_dev(y);
}

std::vector<double> frame_jerk_energies(std::span<const double> x, std::span<const double> y,
                                        const EstimatorConfig& cfg, Mode mode) {
  cfg.validate();
  if (x.size() != y.size()) throw Error(Errc::InsufficientData, "x and y lengths differ");
  require_frames(x.size(), cfg);
  const std::size_t frame = cfg.frame_samples();
  const std::size_t total = cfg.window_samples();

  std::vector<double> fx, fy;
  std::span<const double> sx = x.first(total), sy = y.first(total);
  if (cfg.filter_xy) {
    fx = bandpass_filter(sx, cfg);
    fy = bandpass_filter(sy, cfg);
    sx = fx;
    sy = fy;
  }

  std::vector<double> energies(static_cast<std::size_t>(cfg.frames_per_window));
  for (std::size_t k = 0; k < energies.size(); ++k) {
    const auto fxk = sx.subspan(k * frame, frame);
    const auto fyk = sy.subspan(k * frame, frame);
    energies[k] = mode == Mode::Exact ? jerk_energy_exact(fxk, fyk) : jerk_energy_onboard(fxk, fyk);
  }
  return energies;
}

double activity_index(std::span<const double> x, std::span<const double> y,
                      const EstimatorConfig& cfg, Mode mode) {
  return nearest_rank(frame_jerk_energies(x, y, cfg, mode), cfg.percentile);
}

WindowResult process_window(const AccelSeries& window, const EstimatorConfig& cfg, Mode mode,
                            double window_start) {
  if (std::abs(window.fs - cfg.fs) > 1e-9) {
    throw Error(Errc::InvalidConfig, "series fs " + std::to_string(window.fs) +
                                         " does not match estimator fs " + std::to_string(cfg.fs));
  }
  const auto x = window.channel(Axis::X);
  const auto y = window.channel(Axis::Y);
  const auto z = window.channel(Axis::Z);
  WindowResult out;
  out.resp_freq = respiratory_frequency(z, cfg);
  out.activity = activity_index(x, y, cfg, mode);
  out.mode = mode;
  out.window_start = window_start;
  return out;
}

}  // namespace fishbit::signal
