#ifndef DSCM_METRICS_HPP
#define DSCM_METRICS_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "dscm/waveform.hpp"

namespace dscm {

// Square QAM constellation assembled from an amplitude alphabet: each
// quadrature takes values +/- a * scale with P(level) = amp_probs[a]/2.
struct Constellation {
  std::vector<cdouble> points;
  std::vector<double> prior;          // sums to 1
  std::vector<std::uint8_t> labels_per_point;  // packed bits, sign-magnitude/Gray

  int bits_per_symbol = 0;
  double entropy_bits() const;  // H(prior)
};

Constellation make_constellation(std::span<const int> alphabet,
                                 std::span<const double> amp_probs, double scale);

// 10 log10( sum|x|^2 / sum|y-x|^2 ); +inf when the residual is exactly zero.
double gsnr_db(std::span<const cdouble> tx, std::span<const cdouble> rx);

// Mismatched-decoding information rate with a circular Gaussian auxiliary
// channel, sigma^2 fitted as mean |y-x|^2. Bits per 2D symbol.
double mi_gaussian(std::span<const cdouble> tx, std::span<const cdouble> rx,
                   const Constellation& c);

// Bit-metric (BMD) counterpart over the constellation's bit labels.
double gmi_gaussian(std::span<const cdouble> tx, std::span<const cdouble> rx,
                    const Constellation& c);

// AIR_n [bits/4D] = 2 (mi - 2 rate_loss): two amplitudes per 2D symbol,
// two 2D symbols per 4D symbol.
double air_n_bits_per_4d(double mi_bits_per_2d, double rate_loss_bits_per_amp);

// Base-2 Shannon entropy of normalized counts.
double empirical_entropy(std::span<const double> counts);

struct SubcarrierMetrics {
  double gsnr_db = 0.0;
  double mi_bits_per_2d = 0.0;
  double air_n_bits_per_4d = 0.0;
  double rate_loss_bits_per_amp = 0.0;
  long long n_symbols_used = 0;
};

}  // namespace dscm

#endif  // DSCM_METRICS_HPP
