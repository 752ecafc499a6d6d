#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fishbit::analysis {

struct O2Reading {
  double t_s = 0.0;
  double saturation_pct = 0.0;
};

/// One swim-tunnel speed step: the sealed-chamber O2 trace plus the
/// constants needed to turn it into MO2.
struct SpeedStep {
  double speed_bls = 0.0;
  std::vector<O2Reading> o2;  // measurement phase only
  double temp_c = 20.0;
  double salinity_psu = 37.0;
  double chamber_volume_l = 10.0;
  double fish_mass_kg = 0.25;

  /// Throws DegenerateInput on violated invariants.
  void validate() const;
};

struct Mo2Result {
  double mo2 = 0.0;                // mgO2 / kg / h
  double r2 = 0.0;                 // fit quality of the O2 decline
  double slope_mg_l_per_h = 0.0;   // dissolved O2 slope
  bool non_decreasing = false;     // O2 did not fall: chamber leak or empty chamber
};

inline constexpr std::size_t kMinMeasurementSamples = 30;

/// Least-squares slope of dissolved O2 (mg/L) against time (h); MO2 =
/// -slope * (V - M / 1 kg/L) / M. Throws InsufficientSamples.
Mo2Result mo2_from_step(const SpeedStep& step);

/// Intermittent-flow cycle. Only the sealed measurement phase is fitted.
struct MeasurementCycle {
  double flush_s = 60.0;
  double wait_s = 30.0;
  double measure_s = 210.0;

  double period() const { return flush_s + wait_s + measure_s; }
};

/// Readings of one cycle starting at `cycle_start_s` that fall in its measurement phase.
std::vector<O2Reading> measurement_phase(std::span<const O2Reading> readings,
                                         const MeasurementCycle& cycle, double cycle_start_s = 0.0);

struct RespirometryRun {
  std::vector<SpeedStep> steps;
  std::vector<double> mo2;
  std::vector<double> fit_r2;
  std::vector<bool> flagged;
};

/// Fits every step. Throws InvalidSpeeds unless speeds strictly ascend.
RespirometryRun evaluate_run(std::vector<SpeedStep> steps);

struct SeriesPeak {
  std::size_t index = 0;
  double speed = 0.0;
  double value = 0.0;
};

/// Argmax over speed, ties resolved toward the lower speed.
SeriesPeak argmax_lower_tie(std::span<const double> speeds, std::span<const double> values);

struct PeakSpeeds {
  SeriesPeak mmr;           // maximum metabolic rate
  SeriesPeak mrf;           // maximum respiratory frequency
  SeriesPeak max_activity;
};

/// Throws TooFewSteps below three steps, DegenerateInput on length mismatch.
PeakSpeeds detect_mmr_mrf(std::span<const double> speeds, std::span<const double> mo2,
                          std::span<const double> resp_freq, std::span<const double> activity);

PeakSpeeds detect_mmr_mrf(const RespirometryRun& run, std::span<const double> resp_freq,
                          std::span<const double> activity);

}  // namespace fishbit::analysis
