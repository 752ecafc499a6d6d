#include "fishbit/signal/batch.hpp"

#include <exception>

#include "fishbit/signal/estimators.hpp"

namespace fishbit::signal {

std::size_t complete_windows(std::size_t n_samples, const EstimatorConfig& cfg) {
  cfg.validate();
  return n_samples / cfg.window_samples();
}

std::vector<WindowResult> process_series_serial(const AccelSeries& series,
                                                const EstimatorConfig& cfg, Mode mode) {
  const std::size_t count = complete_windows(series.size(), cfg);
  const std::size_t len = cfg.window_samples();
  std::vector<WindowResult> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(process_window(series.slice(k * len, len), cfg, mode,
                                 static_cast<double>(k) * cfg.window_seconds()));
  }
  return out;
}

std::vector<WindowResult> process_series(const AccelSeries& series, const EstimatorConfig& cfg,
                                         Mode mode) {
  const std::size_t count = complete_windows(series.size(), cfg);
  const std::size_t len = cfg.window_samples();
  std::vector<WindowResult> out(count);
  std::exception_ptr failure;

  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long k = 0; k < n; ++k) {
    try {
      const auto idx = static_cast<std::size_t>(k);
      out[idx] = process_window(series.slice(idx * len, len), cfg, mode,
                                static_cast<double>(idx) * cfg.window_seconds());
    } catch (...) {
#pragma omp critical(fishbit_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace fishbit::signal
