#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fishbit/error.hpp"
#include "fishbit/signal/filter.hpp"
#include "oracles.hpp"

using namespace fishbit;
using namespace fishbit::signal;

namespace {

// |H(f)| of the same design computed independently with
// scipy.signal.butter(4, [wl, wh], 'bandpass', analog=True) + bilinear_zpk,
// with wl/wh chosen for -1 dB at 0.5 and 8 Hz (fs = 100).
struct FrozenGain {
  double freq;
  double gain;
};
constexpr FrozenGain kScipyGains[] = {
    {0.1, 0.002465885999604767}, {0.5, 0.891250938133983},   {2.0, 1.000000000000004},
    {8.0, 0.8912509381337446},   {16.0, 0.07642098225517124}, {20.0, 0.024545404982297823},
};

}  // namespace

TEST_CASE("band-pass response matches the independent design") {
  const BandpassFilter filter(100.0, 0.5, 8.0);
  CHECK(filter.sections().size() == 4);
  for (const auto& [freq, gain] : kScipyGains) {
    CAPTURE(freq);
    CHECK(std::abs(filter.response(freq)) == doctest::Approx(gain).epsilon(1e-9));
  }
}

TEST_CASE("passband loss stays within 1 dB and stopband targets hold") {
  const BandpassFilter filter(100.0, 0.5, 8.0);
  double worst_db = 0.0;
  for (double f = 0.5; f <= 8.0; f += 0.01) {
    worst_db = std::min(worst_db, 20.0 * std::log10(std::abs(filter.response(f))));
  }
  CHECK(worst_db >= -1.0 - 1e-9);
  CHECK(-20.0 * std::log10(std::abs(filter.response(0.1))) >= 20.0);
  CHECK(-20.0 * std::log10(std::abs(filter.response(16.0))) >= 20.0);
}

TEST_CASE("measured sine gain agrees with the frequency response") {
  const auto cfg = EstimatorConfig::exact();
  const BandpassFilter filter(cfg.fs, cfg.band_low, cfg.band_high);
  for (const double f : {0.7, 2.0, 5.0, 12.0, 20.0}) {
    CAPTURE(f);
    const auto y = bandpass_filter(oracle::sine(f, 1.0, 100.0, 6000), cfg);
    // Skip 20 s so the switch-on transient of the slow poles has died out.
    CHECK(oracle::fitted_amplitude(y, f, 100.0, 2000) ==
          doctest::Approx(std::abs(filter.response(f))).epsilon(1e-4));
  }
}

TEST_CASE("2 Hz passes and 20 Hz is rejected after the warm-up") {
  const auto cfg = EstimatorConfig::exact();
  const std::size_t warm = cfg.warmup_samples();
  const auto y2 = bandpass_filter(oracle::sine(2.0, 1.0, 100.0, 3000), cfg);
  const double a2 = oracle::fitted_amplitude(y2, 2.0, 100.0, warm);
  CHECK(a2 >= 0.89);
  CHECK(a2 <= 1.0);

  const auto y20 = bandpass_filter(oracle::sine(20.0, 1.0, 100.0, 3000), cfg);
  double peak20 = 0.0;
  for (std::size_t i = warm; i < y20.size(); ++i) peak20 = std::max(peak20, std::abs(y20[i]));
  CHECK(peak20 < 0.1);
}

TEST_CASE("constant offset is removed") {
  const auto cfg = EstimatorConfig::exact();
  const std::vector<double> dc(3000, 1.0);
  const auto y = bandpass_filter(dc, cfg);
  double mean_abs = 0.0;
  for (std::size_t i = cfg.warmup_samples(); i < y.size(); ++i) mean_abs += std::abs(y[i]);
  mean_abs /= static_cast<double>(y.size() - cfg.warmup_samples());
  CHECK(mean_abs < 1e-3);
}

TEST_CASE("offset added to a signal leaves the filtered output unchanged") {
  const auto cfg = EstimatorConfig::exact();
  auto x = oracle::sine(1.3, 0.2, 100.0, 2000, 0.4);
  const auto y0 = bandpass_filter(x, cfg);
  for (auto& v : x) v += 0.75;
  const auto y1 = bandpass_filter(x, cfg);
  double worst = 0.0;
  for (std::size_t i = 0; i < y0.size(); ++i) worst = std::max(worst, std::abs(y0[i] - y1[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("filter rejects invalid configuration and empty input") {
  auto cfg = EstimatorConfig::exact();
  const std::vector<double> x(100, 0.0);
  cfg.band_high = 60.0;
  CHECK_THROWS_AS(bandpass_filter(x, cfg), Error);
  try {
    bandpass_filter(x, cfg);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidConfig);
  }
  cfg = EstimatorConfig::exact();
  try {
    bandpass_filter(std::vector<double>{}, cfg);
    FAIL("expected EmptyInput");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyInput);
  }
}
