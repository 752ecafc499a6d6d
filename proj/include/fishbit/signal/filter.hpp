#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fishbit/signal/types.hpp"

namespace fishbit::signal {

/// Second-order section, a0 normalised to 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

/// Butterworth band-pass realised as a cascade of biquads (bilinear transform,
/// prewarped). The pass edges are placed so the response is exactly
/// `edge_loss_db` down at band_low and band_high, which keeps the whole
/// [band_low, band_high] interval within that loss.
class BandpassFilter {
 public:
  BandpassFilter(double fs, double band_low, double band_high, int prototype_order = 4,
                 double edge_loss_db = 1.0);

  std::span<const Biquad> sections() const noexcept { return sections_; }
  double fs() const noexcept { return fs_; }

  /// Complex response of the cascade at `freq_hz`.
  std::complex<double> response(double freq_hz) const;

  /// Causal single pass. State starts at steady state for a constant input
  /// equal to x[0], so DC offsets produce no start-up transient.
  std::vector<double> apply(std::span<const double> x) const;

 private:
  double fs_;
  std::vector<Biquad> sections_;
};

/// Band-pass one channel with the filter described by cfg. Throws
/// InvalidConfig / EmptyInput.
std::vector<double> bandpass_filter(std::span<const double> channel, const EstimatorConfig& cfg);

}  // namespace fishbit::signal
