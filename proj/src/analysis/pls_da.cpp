#include "fishbit/analysis/pls_da.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "fishbit/error.hpp"

namespace fishbit::analysis {

namespace {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

// Fit without class-size checks or Q2; shared by the full fit and LOO folds.
PlsModel fit_core(const MatrixXd& x, const MatrixXd& y, const PlsOptions& opt) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  const int a_max = opt.n_components;
  if (n < 3 || p < 1) throw Error(Errc::DegenerateInput, "need at least 3 rows and 1 feature");
  if (a_max < 1 || a_max > p) {
    throw Error(Errc::InvalidConfig, "n_components must be in [1, number of features]");
  }

  PlsModel m;
  m.x_means = x.colwise().mean();
  MatrixXd e = x.rowwise() - m.x_means;
  m.x_stds = (e.array().square().colwise().sum() / static_cast<double>(n - 1)).sqrt();
  for (Eigen::Index j = 0; j < p; ++j) {
    const double scale = std::max(1.0, std::abs(m.x_means(j)));
    if (!(m.x_stds(j) > 1e-12 * scale)) {
      throw Error(Errc::SingularFeatures, "feature " + std::to_string(j) + " has zero variance");
    }
  }
  e = e.array().rowwise() / m.x_stds.array();

  m.y_means = y.colwise().mean();
  MatrixXd f = y.rowwise() - m.y_means;
  const double y_ss = f.squaredNorm();
  if (!(y_ss > 0.0)) throw Error(Errc::DegenerateInput, "response has a single class");
  const double x_ss = e.squaredNorm();

  m.weights.resize(p, a_max);
  m.loadings.resize(p, a_max);
  m.y_loadings.resize(y.cols(), a_max);
  m.scores.resize(n, a_max);

  for (int a = 0; a < a_max; ++a) {
    Eigen::Index start_col = 0;
    f.colwise().squaredNorm().maxCoeff(&start_col);
    VectorXd u = f.col(start_col);
    VectorXd w, t, c;
    for (int it = 0; it < opt.max_iterations; ++it) {
      w = e.transpose() * u;
      const double wn = w.norm();
      if (!(wn > 0.0)) throw Error(Errc::SingularFeatures, "X residual orthogonal to Y");
      w /= wn;
      t = e * w;
      c = f.transpose() * t / t.squaredNorm();
      VectorXd u_next = f * c / c.squaredNorm();
      const double change = (u_next - u).norm() / std::max(u_next.norm(), 1e-300);
      u = std::move(u_next);
      if (change < opt.tolerance) break;
    }
    const double tt = t.squaredNorm();
    if (!(tt > 1e-10 * x_ss)) {
      throw Error(Errc::SingularFeatures, "component " + std::to_string(a + 1) +
                                              " has no X variance left (collinear features)");
    }
    // Orient each component so that larger scores point to the anaerobic class.
    if (c(c.size() - 1) < 0.0) {
      w = -w;
      t = -t;
      c = -c;
    }
    const VectorXd pl = e.transpose() * t / tt;
    e -= t * pl.transpose();
    f -= t * c.transpose();

    m.weights.col(a) = w;
    m.loadings.col(a) = pl;
    m.y_loadings.col(a) = c;
    m.scores.col(a) = t;
    m.r2y_cumulative.push_back(1.0 - f.squaredNorm() / y_ss);
  }

  m.rotations = m.weights * (m.loadings.transpose() * m.weights).inverse();
  m.coefficients = m.rotations * m.y_loadings.transpose();
  m.r2y = m.r2y_cumulative.back();
  m.n_components = a_max;
  return m;
}

MatrixXd drop_row(const MatrixXd& m, Eigen::Index row) {
  MatrixXd out(m.rows() - 1, m.cols());
  out.topRows(row) = m.topRows(row);
  out.bottomRows(m.rows() - row - 1) = m.bottomRows(m.rows() - row - 1);
  return out;
}

double fold_press(const MatrixXd& x, const MatrixXd& y, Eigen::Index i, const PlsOptions& opt) {
  const PlsModel fold = fit_core(drop_row(x, i), drop_row(y, i), opt);
  const MatrixXd pred = fold.predict_response(x.row(i));
  return (y.row(i) - pred.row(0)).squaredNorm();
}

double total_ss(const MatrixXd& y) { return (y.rowwise() - y.colwise().mean()).squaredNorm(); }

void check_rows(const MatrixXd& x, std::span<const Condition> labels) {
  if (static_cast<std::size_t>(x.rows()) != labels.size()) {
    throw Error(Errc::DegenerateInput, "feature rows and labels differ in count");
  }
}

}  // namespace

const char* condition_name(Condition c) noexcept {
  return c == Condition::Aerobic ? "aerobic" : "anaerobic";
}

MatrixXd one_hot(std::span<const Condition> labels) {
  MatrixXd y = MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), 2);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    y(static_cast<Eigen::Index>(i), static_cast<int>(labels[i])) = 1.0;
  }
  return y;
}

MatrixXd PlsModel::transform(const MatrixXd& x) const {
  if (!fitted()) throw Error(Errc::UnfittedModel, "model has not been fitted");
  if (x.cols() != x_means.size()) throw Error(Errc::DegenerateInput, "feature count mismatch");
  const MatrixXd xs = (x.rowwise() - x_means).array().rowwise() / x_stds.array();
  return xs * rotations;
}

MatrixXd PlsModel::predict_response(const MatrixXd& x) const {
  if (!fitted()) throw Error(Errc::UnfittedModel, "model has not been fitted");
  if (x.cols() != x_means.size()) throw Error(Errc::DegenerateInput, "feature count mismatch");
  const MatrixXd xs = (x.rowwise() - x_means).array().rowwise() / x_stds.array();
  return (xs * coefficients).rowwise() + y_means;
}

double loo_q2_serial(const MatrixXd& x, std::span<const Condition> labels, const PlsOptions& opt) {
  check_rows(x, labels);
  const MatrixXd y = one_hot(labels);
  double press = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) press += fold_press(x, y, i, opt);
  return 1.0 - press / total_ss(y);
}

double loo_q2(const MatrixXd& x, std::span<const Condition> labels, const PlsOptions& opt) {
  check_rows(x, labels);
  const MatrixXd y = one_hot(labels);
  std::vector<double> press(static_cast<std::size_t>(x.rows()));
  std::exception_ptr failure;
  const auto n = static_cast<long long>(x.rows());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      press[static_cast<std::size_t>(i)] = fold_press(x, y, static_cast<Eigen::Index>(i), opt);
    } catch (...) {
#pragma omp critical(fishbit_loo_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  double total = 0.0;
  for (const double v : press) total += v;
  return 1.0 - total / total_ss(y);
}

PlsModel pls_da_fit(const MatrixXd& x, std::span<const Condition> labels, const PlsOptions& opt) {
  check_rows(x, labels);
  std::array<std::size_t, 2> counts{};
  for (const auto c : labels) ++counts[static_cast<std::size_t>(c)];
  if (counts[0] < opt.min_per_class || counts[1] < opt.min_per_class) {
    throw Error(Errc::ClassImbalanceBelowMinimum,
                "need " + std::to_string(opt.min_per_class) + " samples per class, got " +
                    std::to_string(counts[0]) + " aerobic / " + std::to_string(counts[1]) +
                    " anaerobic");
  }
  PlsModel m = fit_core(x, one_hot(labels), opt);
  if (opt.compute_q2) m.q2 = loo_q2(x, labels, opt);
  return m;
}

Classification classify(const PlsModel& model, std::span<const double> features) {
  if (!model.fitted()) throw Error(Errc::UnfittedModel, "model has not been fitted");
  if (static_cast<Eigen::Index>(features.size()) != model.x_means.size()) {
    throw Error(Errc::DegenerateInput, "feature count mismatch");
  }
  const Eigen::Map<const RowVectorXd> row(features.data(), static_cast<Eigen::Index>(features.size()));
  const MatrixXd xr = row;
  Classification out;
  out.response = model.predict_response(xr)(0, 1);
  out.score = model.transform(xr)(0, 0);
  out.label = out.response > 0.5 ? Condition::Anaerobic : Condition::Aerobic;
  return out;
}

}  // namespace fishbit::analysis
