#include "fishbit/device/config.hpp"

#include <cmath>
#include <cstdio>

#include "fishbit/error.hpp"

namespace fishbit::device {

namespace {

std::string fmt_seconds(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

}  // namespace

std::size_t DeviceConfig::raw_capacity_samples() const {
  return static_cast<std::size_t>(std::llround(raw_capacity_seconds * fs));
}

void DeviceConfig::validate() const {
  if (fs == 0) throw Error(Errc::InvalidConfig, "fs must be positive");
  if (counts_per_g == 0 || 8u * counts_per_g > 32767u) {
    throw Error(Errc::InvalidConfig, "counts_per_g must map +/-8 g into int16");
  }
  if (!(raw_capacity_seconds >= 0.0) || raw_capacity_bytes() > flash_bytes) {
    throw Error(Errc::InvalidConfig, "raw buffer of " + std::to_string(raw_capacity_bytes()) +
                                         " bytes does not fit " + std::to_string(flash_bytes) +
                                         " bytes of flash");
  }
  if (!(battery_active_seconds > 0.0)) {
    throw Error(Errc::InvalidConfig, "battery_active_seconds must be positive");
  }
  if (onboard_frame_samples < 2 || frames_per_window < 1) {
    throw Error(Errc::InvalidConfig, "on-board frame must hold >= 2 samples and N >= 1");
  }
  if (static_cast<std::size_t>(onboard_frame_samples) * kRawSampleBytes > ram_bytes) {
    throw Error(Errc::InvalidConfig, "on-board frame buffer does not fit RAM");
  }
}

const char* acquisition_mode_name(AcquisitionMode mode) noexcept {
  return mode == AcquisitionMode::Raw ? "raw" : "processed";
}

std::size_t ScheduleProgram::window_count() const {
  if (!(window_seconds > 0.0) || !(period_seconds > 0.0) || total_duration_seconds < 0.0) {
    return 0;
  }
  // Starts at k*period for k >= 0 with start + window <= total.
  const double span = total_duration_seconds - window_seconds;
  if (span < 0.0) return 0;
  return static_cast<std::size_t>(std::floor(span / period_seconds + 1e-9)) + 1;
}

ScheduleProgram schedule_preset(std::string_view name) {
  constexpr double kDay = 86400.0;
  if (name == "burst-2d") return {120.0, 900.0, 2 * kDay, AcquisitionMode::Processed};
  if (name == "week-1") return {120.0, 3600.0, 7 * kDay, AcquisitionMode::Processed};
  if (name == "weeks-3") return {120.0, 10800.0, 21 * kDay, AcquisitionMode::Processed};
  // Back-to-back on-board windows of 12 x 1024 samples at 100 Hz.
  if (name == "continuous") return {122.88, 122.88, kDay, AcquisitionMode::Processed};
  throw Error(Errc::InvalidPreset, "unknown schedule preset '" + std::string(name) + "'");
}

std::vector<std::string> schedule_preset_names() {
  return {"burst-2d", "week-1", "weeks-3", "continuous"};
}

ScheduleValidation validate_schedule(const ScheduleProgram& program, const DeviceConfig& cfg) {
  ScheduleValidation v;
  if (!(program.window_seconds > 0.0)) v.errors.push_back("window_seconds must be positive");
  if (program.window_seconds > program.period_seconds + 1e-9) {
    v.errors.push_back("window_seconds exceeds period_seconds");
  }
  if (program.window_count() == 0) v.errors.push_back("program contains no complete window");
  v.active_seconds = program.active_seconds();

  if (program.mode == AcquisitionMode::Raw) {
    if (v.active_seconds > cfg.raw_capacity_seconds + 1e-9) {
      v.errors.push_back("raw recording of " + fmt_seconds(v.active_seconds) +
                         " exceeds raw capacity of " + fmt_seconds(cfg.raw_capacity_seconds));
    }
  } else if (v.active_seconds > cfg.battery_active_seconds + 1e-9) {
    v.warnings.push_back("active time " + fmt_seconds(v.active_seconds) +
                         " exceeds battery budget of " + fmt_seconds(cfg.battery_active_seconds) +
                         "; run will stop when the battery is exhausted");
  }
  return v;
}

}  // namespace fishbit::device
