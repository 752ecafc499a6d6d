#include "fishbit/analysis/agreement.hpp"

#include <algorithm>
#include <cmath>

#include "fishbit/error.hpp"

namespace fishbit::analysis {

Agreement agreement(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(Errc::DegenerateInput, "series lengths differ");
  if (xs.size() < 3) throw Error(Errc::DegenerateInput, "need at least 3 pairs");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw Error(Errc::DegenerateInput, "zero variance");

  Agreement a;
  a.n = xs.size();
  a.pearson_r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  a.slope = sxy / sxx;
  a.intercept = my - a.slope * mx;
  a.r2 = a.pearson_r * a.pearson_r;
  return a;
}

}  // namespace fishbit::analysis
