#include "fishbit/device/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "fishbit/error.hpp"
#include "fishbit/signal/estimators.hpp"

namespace fishbit::device {

namespace {

std::size_t samples_for(double seconds, double fs) {
  return static_cast<std::size_t>(std::llround(seconds * fs));
}

signal::EstimatorConfig onboard_config(const DeviceConfig& cfg, std::size_t window_samples) {
  auto est = signal::EstimatorConfig::onboard(cfg.fs);
  est.frame_seconds = static_cast<double>(cfg.onboard_frame_samples) / cfg.fs;
  const auto fit = window_samples / cfg.onboard_frame_samples;
  est.frames_per_window = static_cast<int>(
      std::min<std::size_t>(fit, static_cast<std::size_t>(cfg.frames_per_window)));
  return est;
}

void acquire_raw(DeviceState& state, const signal::AccelSeries& data, std::size_t capacity,
                 const DeviceConfig& cfg) {
  for (const auto& sample : data.samples) {
    if (state.stored_records.size() >= capacity ||
        state.flash_used + kRawRecordBytes > cfg.flash_bytes) {
      state.status = DeviceStatus::Full;
      return;
    }
    state.stored_records.emplace_back(quantize_sample(sample, cfg));
    state.flash_used += kRawRecordBytes;
  }
}

}  // namespace

const char* device_status_name(DeviceStatus status) noexcept {
  switch (status) {
    case DeviceStatus::Idle: return "idle";
    case DeviceStatus::Acquiring: return "acquiring";
    case DeviceStatus::Full: return "full";
    case DeviceStatus::BatteryExhausted: return "battery_exhausted";
    case DeviceStatus::Done: return "done";
  }
  return "unknown";
}

std::size_t DeviceState::download_bytes() const noexcept { return kHeaderBytes + flash_used; }

SampleSource series_source(signal::AccelSeries series) {
  return [series = std::move(series)](double start_s, double duration_s) {
    const auto begin = samples_for(start_s, series.fs);
    const auto count = samples_for(duration_s, series.fs);
    return series.slice(begin, count);
  };
}

DeviceState run_schedule(const ScheduleProgram& program, const SampleSource& source,
                         const DeviceConfig& cfg, SimulationOptions options) {
  cfg.validate();
  const ScheduleValidation check = validate_schedule(program, cfg);
  if (options.strict && !check.feasible()) {
    std::string why;
    for (const auto& e : check.errors) why += (why.empty() ? "" : "; ") + e;
    throw Error(Errc::ScheduleInfeasible, why);
  }

  DeviceState state;
  state.warnings = check.warnings;
  for (const auto& e : check.errors) state.warnings.push_back("infeasible: " + e);

  const std::size_t window_samples = samples_for(program.window_seconds, cfg.fs);
  const std::size_t capacity = cfg.raw_capacity_samples();
  signal::EstimatorConfig est;
  if (program.mode == AcquisitionMode::Processed) {
    est = onboard_config(cfg, window_samples);
    if (est.frames_per_window < 1) {
      throw Error(Errc::ScheduleInfeasible, "window shorter than one on-board frame");
    }
  }

  // The logger clock ticks once per sample, so all bookkeeping is in integer ticks.
  const auto period_ticks = static_cast<std::int64_t>(samples_for(program.period_seconds, cfg.fs));
  const auto window_ticks = static_cast<std::int64_t>(window_samples);
  const auto battery_ticks =
      static_cast<std::int64_t>(samples_for(cfg.battery_active_seconds, cfg.fs));
  std::int64_t used_ticks = 0;
  auto seconds = [&](std::int64_t ticks) { return static_cast<double>(ticks) / cfg.fs; };

  const std::size_t windows = program.window_count();
  for (std::size_t k = 0; k < windows; ++k) {
    const std::int64_t start_tick = static_cast<std::int64_t>(k) * period_ticks;
    const double start = seconds(start_tick);
    state.elapsed = start;
    state.status = DeviceStatus::Acquiring;

    const std::int64_t left = battery_ticks - used_ticks;
    if (window_ticks > left) {
      // Battery dies part-way through this window; the partial window is lost.
      state.elapsed = seconds(start_tick + std::max<std::int64_t>(left, 0));
      state.battery_used = cfg.battery_active_seconds;
      state.status = DeviceStatus::BatteryExhausted;
      return state;
    }

    const signal::AccelSeries data = source(start, program.window_seconds);
    if (data.size() < window_samples) {
      throw Error(Errc::InsufficientData, "source returned " + std::to_string(data.size()) +
                                              " samples for a " +
                                              std::to_string(window_samples) + "-sample window");
    }

    if (program.mode == AcquisitionMode::Raw) {
      const std::size_t before = state.stored_records.size();
      acquire_raw(state, data.slice(0, window_samples), capacity, cfg);
      if (state.status == DeviceStatus::Full) {
        const auto stored = static_cast<std::int64_t>(state.stored_records.size() - before);
        used_ticks += stored;
        state.battery_used = seconds(used_ticks);
        state.elapsed = seconds(start_tick + stored);
        return state;
      }
    } else {
      const auto result = signal::process_window(data.slice(0, window_samples), est,
                                                 signal::Mode::Onboard, start);
      if (state.flash_used + kProcessedRecordBytes > cfg.flash_bytes) {
        state.status = DeviceStatus::Full;
        return state;
      }
      state.stored_records.emplace_back(quantize_window(result));
      state.flash_used += kProcessedRecordBytes;
    }
    used_ticks += window_ticks;
    state.battery_used = seconds(used_ticks);
    state.elapsed = seconds(start_tick + window_ticks);
    ++state.windows_completed;
  }

  state.elapsed = std::max(state.elapsed, program.total_duration_seconds);
  state.status = DeviceStatus::Done;
  return state;
}

}  // namespace fishbit::device
