#pragma once

#include <cstddef>
#include <vector>

#include "fishbit/signal/types.hpp"

namespace fishbit::signal {

/// Number of complete back-to-back windows in a series of n samples.
std::size_t complete_windows(std::size_t n_samples, const EstimatorConfig& cfg);

/// Processes every complete window of `series` (window k starts at k*N*T s).
/// Windows are independent and run across OpenMP threads; the output order
/// and values do not depend on the thread count.
std::vector<WindowResult> process_series(const AccelSeries& series, const EstimatorConfig& cfg,
                                         Mode mode);

/// Single-threaded reference for process_series.
std::vector<WindowResult> process_series_serial(const AccelSeries& series,
                                                const EstimatorConfig& cfg, Mode mode);

}  // namespace fishbit::signal
