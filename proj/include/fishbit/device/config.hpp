#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fishbit::device {

/// Bytes per stored raw sample: three int16 words.
inline constexpr std::size_t kRawSampleBytes = 6;

struct DeviceConfig {
  std::uint32_t flash_bytes = 262144;
  std::uint32_t ram_bytes = 32768;
  std::uint16_t fs = 100;
  /// 14-bit +/-8 g sensor output normalised into 16-bit words.
  std::uint16_t counts_per_g = 1024;
  double raw_capacity_seconds = 360.0;
  double battery_active_seconds = 21600.0;
  bool led_on_completion = true;
  /// On-board frame length (power of two) and frames per processed window.
  std::uint32_t onboard_frame_samples = 1024;
  int frames_per_window = 12;

  std::size_t raw_capacity_samples() const;
  std::size_t raw_capacity_bytes() const { return raw_capacity_samples() * kRawSampleBytes; }

  /// Throws Error(InvalidConfig).
  void validate() const;
};

enum class AcquisitionMode : std::uint8_t { Raw = 0, Processed = 1 };

const char* acquisition_mode_name(AcquisitionMode mode) noexcept;

struct ScheduleProgram {
  double window_seconds = 120.0;
  double period_seconds = 900.0;
  double total_duration_seconds = 0.0;
  AcquisitionMode mode = AcquisitionMode::Processed;

  /// Windows whose start lies inside the program and that end by its close.
  std::size_t window_count() const;
  double active_seconds() const { return static_cast<double>(window_count()) * window_seconds; }
};

/// Named programs: "burst-2d", "week-1", "weeks-3", "continuous".
ScheduleProgram schedule_preset(std::string_view name);
std::vector<std::string> schedule_preset_names();

struct ScheduleValidation {
  std::vector<std::string> errors;    // hard: run refuses
  std::vector<std::string> warnings;  // soft: run truncates
  double active_seconds = 0.0;

  bool feasible() const noexcept { return errors.empty(); }
};

ScheduleValidation validate_schedule(const ScheduleProgram& program, const DeviceConfig& cfg);

}  // namespace fishbit::device
