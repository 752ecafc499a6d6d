#include "fishbit/synth/features.hpp"

#include <cmath>
#include <random>

namespace fishbit::synth {

LabeledFeatures aerobic_anaerobic_features(std::size_t per_class, double separation,
                                           std::uint64_t seed) {
  constexpr double kRespMean = 3.4, kRespStd = 0.3;
  constexpr double kActMean = 0.05, kActStd = 0.012;
  // Split the separation equally over both (standardised) axes.
  const double shift = separation / std::sqrt(2.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  LabeledFeatures out;
  out.x.resize(static_cast<Eigen::Index>(2 * per_class), 2);
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const bool anaerobic = i % 2 == 1;
    const double sign = anaerobic ? 0.5 : -0.5;
    const auto r = static_cast<Eigen::Index>(i);
    out.x(r, 0) = kRespMean - sign * shift * kRespStd + kRespStd * unit(rng);
    out.x(r, 1) = kActMean + sign * shift * kActStd + kActStd * unit(rng);
    out.labels.push_back(anaerobic ? analysis::Condition::Anaerobic : analysis::Condition::Aerobic);
  }
  return out;
}

}  // namespace fishbit::synth
