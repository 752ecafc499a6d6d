#include "fishbit/analysis/respirometry.hpp"

#include <algorithm>
#include <string>

#include "fishbit/analysis/solubility.hpp"
#include "fishbit/error.hpp"

namespace fishbit::analysis {

namespace {

constexpr double kWaterDensityKgPerL = 1.0;

}  // namespace

void SpeedStep::validate() const {
  if (!(fish_mass_kg > 0.0)) throw Error(Errc::DegenerateInput, "fish mass must be positive");
  if (!(chamber_volume_l > fish_mass_kg / kWaterDensityKgPerL)) {
    throw Error(Errc::DegenerateInput, "chamber volume must exceed the fish volume");
  }
  for (const auto& r : o2) {
    if (!(r.saturation_pct >= 0.0 && r.saturation_pct <= 100.0)) {
      throw Error(Errc::DegenerateInput,
                  "saturation " + std::to_string(r.saturation_pct) + " outside [0, 100]");
    }
  }
}

Mo2Result mo2_from_step(const SpeedStep& step) {
  if (step.o2.size() < kMinMeasurementSamples) {
    throw Error(Errc::InsufficientSamples, "measurement phase has " +
                                               std::to_string(step.o2.size()) + " samples, need " +
                                               std::to_string(kMinMeasurementSamples));
  }
  step.validate();
  const double solubility = o2_solubility_mg_per_l(step.temp_c, step.salinity_psu);

  // Two-pass centred least squares of DO (mg/L) on time (h).
  const auto n = static_cast<double>(step.o2.size());
  double t_mean = 0.0, c_mean = 0.0;
  for (const auto& r : step.o2) {
    t_mean += r.t_s / 3600.0;
    c_mean += r.saturation_pct / 100.0 * solubility;
  }
  t_mean /= n;
  c_mean /= n;
  double stt = 0.0, stc = 0.0, scc = 0.0;
  for (const auto& r : step.o2) {
    const double dt = r.t_s / 3600.0 - t_mean;
    const double dc = r.saturation_pct / 100.0 * solubility - c_mean;
    stt += dt * dt;
    stc += dt * dc;
    scc += dc * dc;
  }
  if (!(stt > 0.0)) throw Error(Errc::DegenerateInput, "O2 readings share one timestamp");

  Mo2Result out;
  out.slope_mg_l_per_h = stc / stt;
  // Identical readings leave rounding residue in the sums; treat them as flat.
  const bool flat = std::all_of(step.o2.begin(), step.o2.end(), [&](const O2Reading& r) {
    return r.saturation_pct == step.o2.front().saturation_pct;
  });
  if (flat) stc = scc = 0.0;
  out.r2 = scc > 0.0 ? (stc * stc) / (stt * scc) : 0.0;
  if (!(out.slope_mg_l_per_h < 0.0)) {
    out.non_decreasing = true;
    out.mo2 = 0.0;
    return out;
  }
  const double free_volume = step.chamber_volume_l - step.fish_mass_kg / kWaterDensityKgPerL;
  out.mo2 = -out.slope_mg_l_per_h * free_volume / step.fish_mass_kg;
  return out;
}

std::vector<O2Reading> measurement_phase(std::span<const O2Reading> readings,
                                         const MeasurementCycle& cycle, double cycle_start_s) {
  const double begin = cycle_start_s + cycle.flush_s + cycle.wait_s;
  const double end = begin + cycle.measure_s;
  std::vector<O2Reading> out;
  for (const auto& r : readings) {
    if (r.t_s >= begin && r.t_s < end) out.push_back(r);
  }
  return out;
}

RespirometryRun evaluate_run(std::vector<SpeedStep> steps) {
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (!(steps[i].speed_bls > steps[i - 1].speed_bls)) {
      throw Error(Errc::InvalidSpeeds, "respirometry steps must ascend in speed");
    }
  }
  RespirometryRun run;
  for (const auto& step : steps) {
    const Mo2Result r = mo2_from_step(step);
    run.mo2.push_back(r.mo2);
    run.fit_r2.push_back(r.r2);
    run.flagged.push_back(r.non_decreasing);
  }
  run.steps = std::move(steps);
  return run;
}

SeriesPeak argmax_lower_tie(std::span<const double> speeds, std::span<const double> values) {
  if (speeds.size() != values.size() || speeds.empty()) {
    throw Error(Errc::DegenerateInput, "speeds and values must be non-empty and equally long");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    // Strictly greater only, so the first (lowest-speed) maximum wins.
    if (values[i] > values[best]) best = i;
  }
  return {best, speeds[best], values[best]};
}

PeakSpeeds detect_mmr_mrf(std::span<const double> speeds, std::span<const double> mo2,
                          std::span<const double> resp_freq, std::span<const double> activity) {
  if (speeds.size() < 3) throw Error(Errc::TooFewSteps, "need at least 3 speed steps");
  for (std::size_t i = 1; i < speeds.size(); ++i) {
    if (!(speeds[i] > speeds[i - 1])) {
      throw Error(Errc::InvalidSpeeds, "speeds must ascend");
    }
  }
  return {argmax_lower_tie(speeds, mo2), argmax_lower_tie(speeds, resp_freq),
          argmax_lower_tie(speeds, activity)};
}

PeakSpeeds detect_mmr_mrf(const RespirometryRun& run, std::span<const double> resp_freq,
                          std::span<const double> activity) {
  std::vector<double> speeds;
  for (const auto& s : run.steps) speeds.push_back(s.speed_bls);
  return detect_mmr_mrf(speeds, run.mo2, resp_freq, activity);
}

}  // namespace fishbit::analysis
