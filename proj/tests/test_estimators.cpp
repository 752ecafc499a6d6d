#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "fishbit/error.hpp"
#include "fishbit/signal/estimators.hpp"
#include "fishbit/signal/filter.hpp"
#include "oracles.hpp"

using namespace fishbit;
using namespace fishbit::signal;

namespace {

AccelSeries make_series(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& z, double fs = 100.0) {
  AccelSeries s;
  s.fs = fs;
  s.samples.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) s.samples[i] = {x[i], y[i], z[i]};
  return s;
}

// Band-limited random walk-ish signal: a few random sines plus noise.
std::vector<double> random_signal(std::mt19937_64& rng, std::size_t n, double fs) {
  std::uniform_real_distribution<double> freq(0.5, 6.0), amp(0.01, 0.2), ph(0.0, 6.28);
  std::normal_distribution<double> noise(0.0, 0.002);
  std::vector<double> v(n, 0.0);
  for (int k = 0; k < 3; ++k) {
    const double f = freq(rng), a = amp(rng), p = ph(rng);
    for (std::size_t i = 0; i < n; ++i) v[i] += a * std::sin(2.0 * std::numbers::pi * f * i / fs + p);
  }
  for (auto& e : v) e += noise(rng);
  return v;
}

}  // namespace

TEST_CASE("nearest-rank percentile") {
  CHECK(nearest_rank_index(12, 0.25) == 2);
  CHECK(nearest_rank_index(1, 0.25) == 0);
  CHECK(nearest_rank_index(4, 0.25) == 0);
  CHECK(nearest_rank_index(5, 0.25) == 1);
  CHECK(nearest_rank({12, 3, 7, 1, 9, 2, 11, 4, 10, 5, 8, 6}, 0.25) == 3.0);
  CHECK_THROWS_AS(nearest_rank({}, 0.25), Error);
}

TEST_CASE("peak counting on simple frames") {
  CHECK(count_peaks_in_frame(oracle::sine(2.0, 1.0, 100.0, 1000)) == 20);
  CHECK(count_peaks_in_frame(std::vector<double>(1000, 0.0)) == 0);
  // A flat stretch does not create a crossing.
  CHECK(count_derivative_zero_crossings(std::vector<double>{0, 1, 1, 1, 2, 1, 1, 0}) == 1);
  try {
    count_peaks_in_frame(std::vector<double>{1.0});
    FAIL("expected FrameTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::FrameTooShort);
  }
}

TEST_CASE("peak count of a noisy 2 Hz sine after band-pass") {
  // Fixture: over seeds 0..99, filter + count gives exactly 20 every time.
  const auto cfg = EstimatorConfig::exact();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.05, 0.05);
    auto z = oracle::sine(2.0, 1.0, 100.0, 1000);
    for (auto& v : z) v += u(rng);
    const auto y = bandpass_filter(z, cfg);
    CAPTURE(seed);
    CHECK(count_peaks_in_frame(y) == 20);
  }
}

TEST_CASE("respiratory frequency of clean and empty windows") {
  const auto cfg = EstimatorConfig::exact();
  CHECK(respiratory_frequency(oracle::sine(2.0, 1.0, 100.0, 12000), cfg) == 2.0);
  CHECK(respiratory_frequency(std::vector<double>(12000, 0.0), cfg) == 0.0);
  try {
    respiratory_frequency(std::vector<double>(11999, 0.0), cfg);
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientData);
  }
}

TEST_CASE("frequency recovery within one count per frame") {
  for (const Mode mode : {Mode::Exact, Mode::Onboard}) {
    const auto cfg = EstimatorConfig::for_mode(mode);
    for (const double f : {0.6, 1.0, 2.0, 3.0, 4.0, 5.0}) {
      CAPTURE(f);
      const auto z = oracle::sine(f, 0.05, 100.0, cfg.window_samples(), 0.3);
      CHECK(std::abs(respiratory_frequency(z, cfg) - f) <= 0.1);
    }
  }
}

TEST_CASE("white noise rate is capped at the upper band edge") {
  const auto cfg = EstimatorConfig::exact();
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> z(cfg.window_samples());
  for (auto& v : z) v = n(rng);
  CHECK(respiratory_frequency(z, cfg) <= cfg.band_high);
}

TEST_CASE("jerk energy fixtures") {
  const std::vector<double> zeros1000(1000, 0.0);
  const std::vector<double> c1(1000, 0.3), c2(1000, -0.7);
  CHECK(jerk_energy_exact(c1, c2) == 0.0);
  CHECK(jerk_energy_onboard(c1, c2) == 0.0);

  const auto x1000 = oracle::sine(2.0, 1.0, 100.0, 1000);
  const double exact = jerk_energy_exact(x1000, zeros1000);
  CHECK(exact == doctest::Approx(oracle::diff_std(x1000)).epsilon(1e-12));
  CHECK(exact == doctest::Approx(0.0887550110919763).epsilon(1e-12));
  CHECK(exact == doctest::Approx(0.0889).epsilon(0.005));

  const auto x1024 = oracle::sine(2.0, 1.0, 100.0, 1024);
  const std::vector<double> zeros1024(1024, 0.0);
  const double onboard = jerk_energy_onboard(x1024, zeros1024);
  CHECK(onboard == doctest::Approx(oracle::diff_mad(x1024)).epsilon(1e-12));
  CHECK(onboard == doctest::Approx(0.0797644015).epsilon(1e-9));
  CHECK(onboard == doctest::Approx(0.0800).epsilon(0.005));

  CHECK_THROWS_AS(jerk_energy_exact(std::vector<double>{1.0}, std::vector<double>{1.0}), Error);
  CHECK_THROWS_AS(jerk_energy_onboard(x1024, zeros1000), Error);
}

TEST_CASE("onboard to exact ratio on pure sinusoids") {
  const double expected = 2.0 / std::numbers::pi * std::numbers::sqrt2;
  for (double f = 0.5; f <= 8.0 + 1e-9; f += 0.25) {
    for (const double a : {0.01, 0.1, 1.0}) {
      const auto x = oracle::sine(f, a, 100.0, 1024, 0.7);
      const std::vector<double> zero(1024, 0.0);
      const double ratio = jerk_energy_onboard(x, zero) / jerk_energy_exact(x, zero);
      CAPTURE(f);
      CHECK(std::abs(ratio / expected - 1.0) < 0.01);
    }
  }
}

TEST_CASE("activity index picks the third smallest of twelve frame energies") {
  const auto cfg = EstimatorConfig::exact();
  const std::size_t L = cfg.frame_samples();
  const auto base = oracle::sine(1.5, 1.0, 100.0, L);
  const std::vector<double> zero(L, 0.0);
  const double unit = jerk_energy_exact(base, zero);

  std::vector<int> order(12);
  for (int i = 0; i < 12; ++i) order[i] = i + 1;
  std::mt19937_64 rng(3);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> x, y;
  for (const int k : order) {
    for (const double v : base) x.push_back(k * v);
  }
  y.assign(x.size(), 0.0);
  CHECK(activity_index(x, y, cfg, Mode::Exact) == doctest::Approx(3.0 * unit).epsilon(1e-12));

  // Identical frames give the single-frame energy.
  std::vector<double> same;
  for (int k = 0; k < 12; ++k) same.insert(same.end(), base.begin(), base.end());
  CHECK(activity_index(same, y, cfg, Mode::Exact) == doctest::Approx(unit).epsilon(1e-12));
}

TEST_CASE("process_window examples") {
  const auto cfg = EstimatorConfig::exact();
  const std::size_t n = cfg.window_samples();
  const std::vector<double> zero(n, 0.0);
  const auto s2 = oracle::sine(2.0, 1.0, 100.0, n);

  const auto r1 = process_window(make_series(zero, zero, s2), cfg, Mode::Exact);
  CHECK(r1.resp_freq == 2.0);
  CHECK(r1.activity == 0.0);

  const auto r2 = process_window(make_series(s2, zero, zero), cfg, Mode::Exact, 120.0);
  CHECK(r2.resp_freq == 0.0);
  CHECK(r2.activity == doctest::Approx(0.0889).epsilon(0.005));
  CHECK(r2.window_start == 120.0);

  const auto r3 = process_window(make_series(s2, zero, zero), cfg, Mode::Exact, 120.0);
  CHECK(r2 == r3);

  auto mismatched = make_series(zero, zero, s2);
  mismatched.fs = 50.0;
  CHECK_THROWS_AS(process_window(mismatched, cfg, Mode::Exact), Error);
}

TEST_CASE("scale covariance over random windows") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Mode mode = trial % 2 ? Mode::Onboard : Mode::Exact;
    const auto cfg = EstimatorConfig::for_mode(mode);
    const std::size_t n = cfg.window_samples();
    const auto x = random_signal(rng, n, 100.0);
    const auto y = random_signal(rng, n, 100.0);
    const auto z = random_signal(rng, n, 100.0);
    const double c = scale(rng);
    std::vector<double> xs(x), ys(y), zs(z);
    for (auto& v : xs) v *= c;
    for (auto& v : ys) v *= c;
    for (auto& v : zs) v *= c;
    CAPTURE(trial);
    CHECK(activity_index(xs, ys, cfg, mode) ==
          doctest::Approx(c * activity_index(x, y, cfg, mode)).epsilon(1e-10));
    CHECK(respiratory_frequency(zs, cfg) == respiratory_frequency(z, cfg));
  }
}

TEST_CASE("translation invariance over random windows") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> offset(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Mode mode = trial % 2 ? Mode::Onboard : Mode::Exact;
    const auto cfg = EstimatorConfig::for_mode(mode);
    const std::size_t n = cfg.window_samples();
    const auto x = random_signal(rng, n, 100.0);
    const auto y = random_signal(rng, n, 100.0);
    const auto z = random_signal(rng, n, 100.0);
    const double ox = offset(rng), oy = offset(rng), oz = offset(rng);
    std::vector<double> xs(x), ys(y), zs(z);
    for (auto& v : xs) v += ox;
    for (auto& v : ys) v += oy;
    for (auto& v : zs) v += oz;
    CAPTURE(trial);
    CHECK(activity_index(xs, ys, cfg, mode) ==
          doctest::Approx(activity_index(x, y, cfg, mode)).epsilon(1e-9));
    CHECK(respiratory_frequency(zs, cfg) == respiratory_frequency(z, cfg));
  }
}

TEST_CASE("rotation invariance of the exact jerk energy") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_signal(rng, 1000, 100.0);
    const auto y = random_signal(rng, 1000, 100.0);
    const double th = angle(rng);
    std::vector<double> xr(x.size()), yr(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      xr[i] = std::cos(th) * x[i] - std::sin(th) * y[i];
      yr[i] = std::sin(th) * x[i] + std::cos(th) * y[i];
    }
    const double e0 = jerk_energy_exact(x, y);
    const double e1 = jerk_energy_exact(xr, yr);
    CAPTURE(trial);
    CHECK(std::abs(e1 - e0) / e0 < 1e-9);
  }
}
