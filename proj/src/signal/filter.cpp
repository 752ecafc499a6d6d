#include "fishbit/signal/filter.hpp"

#include <cmath>
#include <numbers>

#include "fishbit/error.hpp"

namespace fishbit::signal {

namespace {

using cd = std::complex<double>;

cd eval_section(const Biquad& s, cd z_inv) {
  const cd num = s.b0 + z_inv * (s.b1 + z_inv * s.b2);
  const cd den = 1.0 + z_inv * (s.a1 + z_inv * s.a2);
  return num / den;
}

}  // namespace

BandpassFilter::BandpassFilter(double fs, double band_low, double band_high, int prototype_order,
                               double edge_loss_db)
    : fs_(fs) {
  if (!(fs > 0.0) || !(band_low > 0.0 && band_low < band_high && band_high < fs / 2.0)) {
    throw Error(Errc::InvalidConfig, "band edges must satisfy 0 < low < high < fs/2");
  }
  if (prototype_order < 1 || !(edge_loss_db > 0.0)) {
    throw Error(Errc::InvalidConfig, "prototype order must be >= 1 and edge loss > 0 dB");
  }
  const int n = prototype_order;
  const double pi = std::numbers::pi;
  auto prewarp = [&](double f) { return 2.0 * fs * std::tan(pi * f / fs); };

  // Band edges in the analog domain; centre is their geometric mean.
  const double lo = prewarp(band_low);
  const double hi = prewarp(band_high);
  const double center_sq = lo * hi;
  // Normalised prototype frequency at which the Butterworth loss equals edge_loss_db.
  const double omega_edge = std::pow(std::pow(10.0, edge_loss_db / 10.0) - 1.0, 1.0 / (2.0 * n));
  const double bandwidth = (hi * hi - center_sq) / (hi * omega_edge);

  // Each prototype pole p maps to the roots of s^2 - p*B*s + w0^2.
  // Upper-half-plane roots come in conjugate pairs with the lower ones; keep
  // one per pair and build a section from it.
  const double two_fs = 2.0 * fs;
  const double center_digital = 2.0 * std::atan(std::sqrt(center_sq) / two_fs);
  const cd z_inv_center = std::polar(1.0, -center_digital);
  for (int k = 0; k < n; ++k) {
    const cd p = std::polar(1.0, pi * (2.0 * k + n + 1) / (2.0 * n));
    const cd disc = std::sqrt(p * p * bandwidth * bandwidth - 4.0 * center_sq);
    for (const cd s : {(p * bandwidth + disc) / 2.0, (p * bandwidth - disc) / 2.0}) {
      if (s.imag() <= 0.0) continue;
      const cd z = (two_fs + s) / (two_fs - s);
      Biquad section{1.0, 0.0, -1.0, -2.0 * z.real(), std::norm(z)};
      const double g = 1.0 / std::abs(eval_section(section, z_inv_center));
      section.b0 *= g;
      section.b2 *= g;
      sections_.push_back(section);
    }
  }
}

std::complex<double> BandpassFilter::response(double freq_hz) const {
  const cd z_inv = std::polar(1.0, -2.0 * std::numbers::pi * freq_hz / fs_);
  cd h = 1.0;
  for (const auto& s : sections_) h *= eval_section(s, z_inv);
  return h;
}

std::vector<double> BandpassFilter::apply(std::span<const double> x) const {
  std::vector<double> y(x.begin(), x.end());
  if (y.empty()) return y;
  for (const auto& s : sections_) {
    // Transposed direct form II primed at steady state for a constant input
    // v = y[0]. Every section has H(1) = 0, so the steady output is 0.
    const double v = y.front();
    double s2 = s.b2 * v;
    double s1 = s.b1 * v + s2;
    for (double& sample : y) {
      const double in = sample;
      const double out = s.b0 * in + s1;
      s1 = s.b1 * in - s.a1 * out + s2;
      s2 = s.b2 * in - s.a2 * out;
      sample = out;
    }
  }
  return y;
}

std::vector<double> bandpass_filter(std::span<const double> channel, const EstimatorConfig& cfg) {
  if (channel.empty()) throw Error(Errc::EmptyInput, "channel is empty");
  const BandpassFilter filter(cfg.fs, cfg.band_low, cfg.band_high);
  return filter.apply(channel);
}

}  // namespace fishbit::signal
