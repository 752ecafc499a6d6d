#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fishbit::analysis {

enum class Condition : int { Aerobic = 0, Anaerobic = 1 };

const char* condition_name(Condition c) noexcept;

struct PlsOptions {
  int n_components = 2;
  std::size_t min_per_class = 6;
  bool compute_q2 = true;
  int max_iterations = 500;
  double tolerance = 1e-12;
};

/// Fitted PLS-DA model. X is standardised per feature (sample std); Y is the
/// centred one-hot class matrix (n x 2).
struct PlsModel {
  int n_components = 0;
  Eigen::RowVectorXd x_means;
  Eigen::RowVectorXd x_stds;
  Eigen::RowVectorXd y_means;   // 1 x 2
  Eigen::MatrixXd weights;      // p x A
  Eigen::MatrixXd loadings;     // p x A
  Eigen::MatrixXd y_loadings;   // 2 x A
  Eigen::MatrixXd rotations;    // p x A; standardised X -> scores
  Eigen::MatrixXd coefficients; // p x 2; standardised X -> centred Y
  Eigen::MatrixXd scores;       // n x A, training scores
  std::vector<double> r2y_cumulative;
  double r2y = 0.0;
  double q2 = std::numeric_limits<double>::quiet_NaN();
  std::array<std::string, 2> class_labels{"aerobic", "anaerobic"};

  bool fitted() const noexcept { return n_components > 0; }

  /// Scores of raw (unstandardised) rows. Throws UnfittedModel.
  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;
  /// Predicted one-hot response (n x 2). Throws UnfittedModel.
  Eigen::MatrixXd predict_response(const Eigen::MatrixXd& x) const;
};

Eigen::MatrixXd one_hot(std::span<const Condition> labels);

/// NIPALS PLS2 with `n_components` components, r2y from the training fit and
/// q2 by leave-one-out. Throws SingularFeatures, ClassImbalanceBelowMinimum,
/// DegenerateInput.
PlsModel pls_da_fit(const Eigen::MatrixXd& x, std::span<const Condition> labels,
                    const PlsOptions& options = {});

/// Leave-one-out Q2 = 1 - PRESS / TSS. Folds are refitted across OpenMP
/// threads; PRESS is summed in fold order so the result is thread-count independent.
double loo_q2(const Eigen::MatrixXd& x, std::span<const Condition> labels,
              const PlsOptions& options = {});

/// Single-threaded reference for loo_q2.
double loo_q2_serial(const Eigen::MatrixXd& x, std::span<const Condition> labels,
                     const PlsOptions& options = {});

struct Classification {
  Condition label = Condition::Aerobic;
  double score = 0.0;     // first-component score
  double response = 0.0;  // predicted anaerobic column; threshold 0.5
};

/// Throws UnfittedModel, DegenerateInput on feature-count mismatch.
Classification classify(const PlsModel& model, std::span<const double> features);

}  // namespace fishbit::analysis
