#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fishbit/analysis/pls_da.hpp"
#include "fishbit/error.hpp"
#include "fishbit/signal/batch.hpp"
#include "fishbit/synth/generator.hpp"
#include "fishbit/synth/features.hpp"
#include "oracles.hpp"

using namespace fishbit;
using namespace fishbit::analysis;

namespace {

std::vector<Condition> predicted_labels(const PlsModel& model, const Eigen::MatrixXd& x) {
  std::vector<Condition> out;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const std::vector<double> row{x(i, 0), x(i, 1)};
    out.push_back(classify(model, row).label);
  }
  return out;
}

Eigen::MatrixXd class_mean(const synth::LabeledFeatures& d, Condition c) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(1, d.x.cols());
  int n = 0;
  for (Eigen::Index i = 0; i < d.x.rows(); ++i) {
    if (d.labels[static_cast<std::size_t>(i)] == c) {
      m += d.x.row(i);
      ++n;
    }
  }
  return m / n;
}

}  // namespace

TEST_CASE("well separated clusters") {
  const auto d = synth::aerobic_anaerobic_features(20, 10.0, 5);
  const auto model = pls_da_fit(d.x, d.labels);
  CHECK(model.n_components == 2);
  CHECK(model.q2 > 0.9);
  CHECK(predicted_labels(model, d.x) == d.labels);
  for (const auto c : {Condition::Aerobic, Condition::Anaerobic}) {
    const Eigen::MatrixXd m = class_mean(d, c);
    const std::vector<double> row{m(0, 0), m(0, 1)};
    CHECK(classify(model, row).label == c);
  }
  // Anaerobic rows score higher on the first component.
  const auto anaerobic = class_mean(d, Condition::Anaerobic);
  CHECK(classify(model, std::vector<double>{anaerobic(0, 0), anaerobic(0, 1)}).score > 0.0);
}

TEST_CASE("moderately overlapping clusters") {
  const auto d = synth::aerobic_anaerobic_features(20, 2.4, 1);
  const auto model = pls_da_fit(d.x, d.labels);
  CHECK(model.r2y == doctest::Approx(0.619).epsilon(0.01));
  CHECK(model.q2 == doctest::Approx(0.560).epsilon(0.01));
  CHECK(model.r2y_cumulative.size() == 2);
  CHECK(model.r2y_cumulative.back() == doctest::Approx(model.r2y));
}

TEST_CASE("scores are orthogonal") {
  const auto d = synth::aerobic_anaerobic_features(20, 2.4, 2);
  const auto model = pls_da_fit(d.x, d.labels, {.compute_q2 = false});
  CHECK(std::abs(model.scores.col(0).dot(model.scores.col(1))) < 1e-8);
}

TEST_CASE("training fit and leave-one-out match least squares") {
  // With as many components as features, PLS fits equal OLS fits.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto d = synth::aerobic_anaerobic_features(15, 2.4, seed);
    const Eigen::MatrixXd y = one_hot(d.labels);
    const auto model = pls_da_fit(d.x, d.labels);
    CAPTURE(seed);
    CHECK(std::abs(model.r2y - oracle::ols_r2(d.x, y)) < 1e-10);
    CHECK(std::abs(model.q2 - oracle::ols_loo_q2(d.x, y)) < 1e-10);
    CHECK(std::abs(loo_q2(d.x, d.labels) - loo_q2_serial(d.x, d.labels)) == 0.0);
  }
}

TEST_CASE("shuffled labels lose predictive ability") {
  const auto d = synth::aerobic_anaerobic_features(20, 2.4, 1);
  std::mt19937_64 rng(17);
  auto labels = d.labels;
  double total = 0.0;
  for (int k = 0; k < 100; ++k) {
    std::shuffle(labels.begin(), labels.end(), rng);
    total += loo_q2(d.x, labels);
  }
  CHECK(total / 100.0 <= 0.0);
}

TEST_CASE("degenerate inputs") {
  auto d = synth::aerobic_anaerobic_features(10, 2.4, 3);
  Eigen::MatrixXd dup(d.x.rows(), 2);
  dup.col(0) = d.x.col(0);
  dup.col(1) = d.x.col(0);
  try {
    pls_da_fit(dup, d.labels);
    FAIL("expected SingularFeatures");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SingularFeatures);
  }

  const auto small = synth::aerobic_anaerobic_features(5, 2.4, 3);
  try {
    pls_da_fit(small.x, small.labels);
    FAIL("expected ClassImbalanceBelowMinimum");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ClassImbalanceBelowMinimum);
  }

  const PlsModel empty;
  try {
    classify(empty, std::vector<double>{1.0, 2.0});
    FAIL("expected UnfittedModel");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnfittedModel);
  }
}

TEST_CASE("midpoint of symmetric clusters sits on the boundary") {
  Eigen::MatrixXd x(12, 2);
  std::vector<Condition> labels;
  const double offsets[6][2] = {{0.1, 0.0}, {-0.1, 0.05}, {0.0, -0.1}, {0.2, 0.1}, {-0.2, -0.05}, {0.05, 0.2}};
  for (int i = 0; i < 6; ++i) {
    x.row(2 * i) << 3.0 + offsets[i][0], 0.04 + 0.01 * offsets[i][1];
    labels.push_back(Condition::Aerobic);
    x.row(2 * i + 1) << 2.0 - offsets[i][0], 0.08 - 0.01 * offsets[i][1];
    labels.push_back(Condition::Anaerobic);
  }
  const auto model = pls_da_fit(x, labels);
  const auto mid = classify(model, std::vector<double>{2.5, 0.06});
  CHECK(std::abs(mid.score) < 1e-12);
  CHECK(mid.response == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("classification is invariant under positive affine feature maps") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> scale(0.01, 100.0), shift(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = synth::aerobic_anaerobic_features(10, 2.0, 1000 + trial);
    const auto m0 = pls_da_fit(d.x, d.labels, {.compute_q2 = false});
    Eigen::MatrixXd x = d.x;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      x.col(j) = (x.col(j).array() * scale(rng) + shift(rng)).matrix();
    }
    const auto m1 = pls_da_fit(x, d.labels, {.compute_q2 = false});
    CAPTURE(trial);
    CHECK(predicted_labels(m0, d.x) == predicted_labels(m1, x));
    CHECK(std::abs(m0.r2y - m1.r2y) < 1e-9);
  }
}

TEST_CASE("swim protocol windows separate along the first component") {
  std::vector<double> speeds;
  for (double s = 1.0; s <= 6.0 + 1e-9; s += 0.5) speeds.push_back(s);
  synth::FatigueModel fatigue;
  fatigue.enabled = true;
  const auto steps = synth::swim_protocol(synth::species_preset("sea_bream"), speeds, 250.0, 100.0,
                                          1, fatigue);
  std::vector<std::array<double, 2>> rows;
  std::vector<Condition> labels;
  for (const auto& st : steps) {
    for (const auto& w : signal::process_series(st.series, signal::EstimatorConfig::exact(),
                                                signal::Mode::Exact)) {
      rows.push_back({w.resp_freq, w.activity});
      labels.push_back(st.speed > 4.0 ? Condition::Anaerobic : Condition::Aerobic);
    }
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), 2);
  for (std::size_t i = 0; i < rows.size(); ++i) x.row(static_cast<Eigen::Index>(i)) << rows[i][0], rows[i][1];
  const auto model = pls_da_fit(x, labels);
  const Eigen::MatrixXd t = model.transform(x);

  double a_lo = 1e300, a_hi = -1e300, n_lo = 1e300, n_hi = -1e300;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double s = t(static_cast<Eigen::Index>(i), 0);
    if (labels[i] == Condition::Aerobic) {
      a_lo = std::min(a_lo, s);
      a_hi = std::max(a_hi, s);
    } else {
      n_lo = std::min(n_lo, s);
      n_hi = std::max(n_hi, s);
    }
  }
  const double lo = std::max(a_lo, n_lo), hi = std::min(a_hi, n_hi);
  std::size_t inside = 0;
  for (Eigen::Index i = 0; i < t.rows(); ++i) inside += t(i, 0) >= lo && t(i, 0) <= hi;
  CHECK(static_cast<double>(inside) / static_cast<double>(labels.size()) < 0.1);
  CHECK(a_hi < n_lo);
}
