#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fishbit/signal/types.hpp"

namespace fishbit::signal {

/// k-th smallest value with k = ceil(q * n) (nearest rank, k >= 1).
double nearest_rank(std::vector<double> values, double q);
std::size_t nearest_rank_index(std::size_t n, double q);

/// Number of strict sign changes in the first difference of `frame`.
/// Zero differences inherit the previous sign.
int count_derivative_zero_crossings(std::span<const double> frame);

/// floor(zero crossings of the first difference / 2). Throws FrameTooShort.
int count_peaks_in_frame(std::span<const double> frame);

/// Respiratory frequency (breaths/s) of the first N*T seconds of z.
/// Throws InsufficientData if fewer than N full frames are available.
double respiratory_frequency(std::span<const double> z, const EstimatorConfig& cfg);

/// Per-frame peak counts used by respiratory_frequency.
std::vector<int> frame_peak_counts(std::span<const double> z, const EstimatorConfig& cfg);

/// sqrt(sigma_x^2 + sigma_y^2) of the first differences (population std).
double jerk_energy_exact(std::span<const double> x, std::span<const double> y);

/// Firmware approximation: mean absolute deviation of the first differences,
/// summed over x and y. Uses add/sub/abs/divide only.
double jerk_energy_onboard(std::span<const double> x, std::span<const double> y);

std::vector<double> frame_jerk_energies(std::span<const double> x, std::span<const double> y,
                                        const EstimatorConfig& cfg, Mode mode);

/// 25th-percentile (cfg.percentile) of the per-frame jerk energies.
double activity_index(std::span<const double> x, std::span<const double> y,
                      const EstimatorConfig& cfg, Mode mode);

/// Full per-window pipeline: respiratory frequency from z, activity from x/y.
WindowResult process_window(const AccelSeries& window, const EstimatorConfig& cfg, Mode mode,
                            double window_start = 0.0);

}  // namespace fishbit::signal
