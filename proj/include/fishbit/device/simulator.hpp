#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fishbit/device/config.hpp"
#include "fishbit/device/log_codec.hpp"
#include "fishbit/signal/types.hpp"

namespace fishbit::device {

enum class DeviceStatus { Idle, Acquiring, Full, BatteryExhausted, Done };

const char* device_status_name(DeviceStatus status) noexcept;

/// Simulated logger state. One simulation owns one state; not shared across threads.
struct DeviceState {
  double elapsed = 0.0;
  std::vector<LogRecord> stored_records;
  std::size_t flash_used = 0;  // record payload bytes; the header is added on download
  double battery_used = 0.0;   // seconds of active acquisition
  DeviceStatus status = DeviceStatus::Idle;
  std::size_t windows_completed = 0;
  std::vector<std::string> warnings;

  /// Size of the log produced by downloading this state.
  std::size_t download_bytes() const noexcept;
};

/// Supplies `duration_s` seconds of samples starting at `start_s`.
using SampleSource = std::function<signal::AccelSeries(double start_s, double duration_s)>;

/// Source backed by one recorded series; throws InsufficientData past its end.
SampleSource series_source(signal::AccelSeries series);

struct SimulationOptions {
  /// Refuse hard-infeasible programs. When false, raw runs fill to capacity
  /// and stop with status Full.
  bool strict = true;
};

/// Steps through every scheduled window. Raw mode stores quantized samples;
/// processed mode runs the on-board estimator per window and stores one
/// record each, until the battery budget is spent.
DeviceState run_schedule(const ScheduleProgram& program, const SampleSource& source,
                         const DeviceConfig& cfg, SimulationOptions options = {});

}  // namespace fishbit::device
