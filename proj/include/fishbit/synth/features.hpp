#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fishbit/analysis/pls_da.hpp"

namespace fishbit::synth {

struct LabeledFeatures {
  Eigen::MatrixXd x;  // columns: resp_freq (breaths/s), activity (g)
  std::vector<analysis::Condition> labels;
};

/// Two Gaussian clusters of (resp_freq, activity) windows. Class means sit
/// `separation` within-class standard deviations apart; aerobic windows
/// breathe faster and move less than anaerobic ones.
LabeledFeatures aerobic_anaerobic_features(std::size_t per_class, double separation,
                                           std::uint64_t seed);

}  // namespace fishbit::synth
