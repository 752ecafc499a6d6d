#include <cmath>

#include "doctest.h"
#include "fishbit/device/config.hpp"
#include "fishbit/device/simulator.hpp"
#include "fishbit/error.hpp"

using namespace fishbit;
using namespace fishbit::device;

namespace {

SampleSource quiet_source(double fs = 100.0) {
  return [fs](double, double duration) {
    signal::AccelSeries s;
    s.fs = fs;
    s.samples.assign(static_cast<std::size_t>(std::llround(duration * fs)), {0.1, -0.05, 0.98});
    return s;
  };
}

}  // namespace

TEST_CASE("raw capacity is six minutes at 100 Hz") {
  const DeviceConfig cfg;
  CHECK(cfg.raw_capacity_samples() == 36000);
  CHECK(cfg.raw_capacity_bytes() == 216000);
  CHECK(cfg.raw_capacity_bytes() + 14 <= cfg.flash_bytes);
}

TEST_CASE("schedule presets and their active time") {
  const DeviceConfig cfg;
  const auto week = schedule_preset("week-1");
  CHECK(week.window_count() == 168);
  auto v = validate_schedule(week, cfg);
  CHECK(v.feasible());
  CHECK(v.warnings.empty());
  CHECK(v.active_seconds == 20160.0);

  const auto weeks3 = schedule_preset("weeks-3");
  CHECK(weeks3.window_count() == 168);
  v = validate_schedule(weeks3, cfg);
  CHECK(v.feasible());
  CHECK(v.warnings.empty());
  CHECK(v.active_seconds == 20160.0);

  const auto burst = schedule_preset("burst-2d");
  CHECK(burst.window_count() == 192);
  v = validate_schedule(burst, cfg);
  CHECK(v.feasible());
  CHECK(v.warnings.size() == 1);
  CHECK(v.active_seconds == 23040.0);

  CHECK_THROWS_AS(schedule_preset("fortnight"), Error);
}

TEST_CASE("window longer than period is rejected") {
  ScheduleProgram p{300.0, 200.0, 3600.0, AcquisitionMode::Processed};
  CHECK_FALSE(validate_schedule(p, DeviceConfig{}).feasible());
}

TEST_CASE("raw acquisition of three 2-minute windows") {
  const DeviceConfig cfg;
  const ScheduleProgram p{120.0, 600.0, 1320.0, AcquisitionMode::Raw};
  const auto state = run_schedule(p, quiet_source(), cfg);
  CHECK(state.stored_records.size() == 36000);
  CHECK(state.flash_used == 216000);
  CHECK(state.download_bytes() == 216014);
  CHECK(state.status == DeviceStatus::Done);
  CHECK(state.windows_completed == 3);
  CHECK(state.battery_used == 360.0);
}

TEST_CASE("raw request beyond capacity") {
  const DeviceConfig cfg;
  const ScheduleProgram p{420.0, 420.0, 420.0, AcquisitionMode::Raw};
  try {
    run_schedule(p, quiet_source(), cfg);
    FAIL("expected ScheduleInfeasible");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ScheduleInfeasible);
  }
  const auto state = run_schedule(p, quiet_source(), cfg, {.strict = false});
  CHECK(state.status == DeviceStatus::Full);
  CHECK(state.stored_records.size() == 36000);
  CHECK(state.flash_used == 216000);
  CHECK(state.elapsed == doctest::Approx(360.0));
}

TEST_CASE("continuous processed recording runs out of battery at six hours") {
  const DeviceConfig cfg;
  const auto p = schedule_preset("continuous");
  const auto state = run_schedule(p, quiet_source(), cfg);
  CHECK(state.status == DeviceStatus::BatteryExhausted);
  CHECK(state.elapsed == 21600.0);
  CHECK(state.battery_used == 21600.0);
  CHECK(state.stored_records.size() == 175);
  CHECK(state.flash_used == 175 * 10);
}

TEST_CASE("week-long processed schedule") {
  const DeviceConfig cfg;
  const auto p = schedule_preset("week-1");
  const auto state = run_schedule(p, quiet_source(), cfg);
  CHECK(state.status == DeviceStatus::Done);
  CHECK(state.stored_records.size() == 168);
  CHECK(state.battery_used == 20160.0);
  CHECK(state.elapsed == 7 * 86400.0);
  // A 120 s window holds 11 whole 1024-sample frames.
  const auto& first = std::get<ProcessedRecord>(state.stored_records.front());
  CHECK(first.window_start_s == 0);
  CHECK(std::get<ProcessedRecord>(state.stored_records[1]).window_start_s == 3600);
}

TEST_CASE("burst schedule stops early on battery") {
  const DeviceConfig cfg;
  const auto state = run_schedule(schedule_preset("burst-2d"), quiet_source(), cfg);
  CHECK(state.status == DeviceStatus::BatteryExhausted);
  CHECK(state.stored_records.size() == 180);
  CHECK_FALSE(state.warnings.empty());
}

TEST_CASE("simulation is deterministic") {
  const DeviceConfig cfg;
  const ScheduleProgram p{122.88, 300.0, 1800.0, AcquisitionMode::Processed};
  const auto a = run_schedule(p, quiet_source(), cfg);
  const auto b = run_schedule(p, quiet_source(), cfg);
  CHECK(a.stored_records == b.stored_records);
  CHECK(a.elapsed == b.elapsed);
}

TEST_CASE("invalid device configuration") {
  DeviceConfig cfg;
  cfg.fs = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}
