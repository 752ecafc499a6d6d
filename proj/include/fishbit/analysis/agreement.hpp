#pragma once

#include <cstddef>
#include <span>

namespace fishbit::analysis {

struct Agreement {
  double pearson_r = 0.0;
  double slope = 0.0;      // least-squares ys on xs
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t n = 0;
};

/// Pearson r and the least-squares line ys = slope * xs + intercept.
/// Throws DegenerateInput on < 3 pairs, length mismatch or zero variance.
Agreement agreement(std::span<const double> xs, std::span<const double> ys);

}  // namespace fishbit::analysis
