#include "dscm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dscm {

namespace {

// Gray code over the amplitude index, plus a leading sign bit, per
// quadrature: (s, g1, g0). Only gmi_gaussian depends on the labeling.
std::uint8_t level_label(int level_index, int sign_negative) {
  const int gray = level_index ^ (level_index >> 1);
  return static_cast<std::uint8_t>((sign_negative << 2) | gray);
}

double log_sum_exp(std::span<const double> v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double t : v) acc += std::exp(t - m);
  return m + std::log(acc);
}

}  // namespace

double Constellation::entropy_bits() const { return empirical_entropy(prior); }

Constellation make_constellation(std::span<const int> alphabet,
                                 std::span<const double> amp_probs, double scale) {
  if (alphabet.size() != amp_probs.size())
    throw std::invalid_argument("constellation: alphabet/distribution size mismatch");
  if (!(scale > 0.0)) throw std::invalid_argument("constellation: scale must be > 0");

  const int levels = static_cast<int>(alphabet.size()) * 2;
  Constellation c;
  c.points.reserve(static_cast<std::size_t>(levels) * levels);
  c.prior.reserve(c.points.capacity());
  c.labels_per_point.reserve(c.points.capacity());

  int bits_per_quad = 1;  // sign
  while ((1 << (bits_per_quad - 1)) < static_cast<int>(alphabet.size())) ++bits_per_quad;
  c.bits_per_symbol = 2 * bits_per_quad;

  for (std::size_t ia = 0; ia < alphabet.size(); ++ia)
    for (int si = 0; si < 2; ++si)
      for (std::size_t qa = 0; qa < alphabet.size(); ++qa)
        for (int sq = 0; sq < 2; ++sq) {
          const double re = (si ? -1.0 : 1.0) * alphabet[ia] * scale;
          const double im = (sq ? -1.0 : 1.0) * alphabet[qa] * scale;
          c.points.emplace_back(re, im);
          c.prior.push_back(amp_probs[ia] * 0.5 * amp_probs[qa] * 0.5);
          c.labels_per_point.push_back(static_cast<std::uint8_t>(
              (level_label(static_cast<int>(ia), si) << bits_per_quad) |
              level_label(static_cast<int>(qa), sq)));
        }
  return c;
}

double gsnr_db(std::span<const cdouble> tx, std::span<const cdouble> rx) {
  if (tx.size() != rx.size() || tx.empty())
    throw std::invalid_argument("gsnr: length mismatch or empty input");
  double sig = 0.0, err = 0.0;
  for (std::size_t i = 0; i < tx.size(); ++i) {
    sig += std::norm(tx[i]);
    err += std::norm(rx[i] - tx[i]);
  }
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(sig / err);
}

double mi_gaussian(std::span<const cdouble> tx, std::span<const cdouble> rx,
                   const Constellation& c) {
  if (tx.size() != rx.size() || tx.empty())
    throw std::invalid_argument("mi: length mismatch or empty input");

  double sigma2 = 0.0;
  for (std::size_t i = 0; i < tx.size(); ++i) sigma2 += std::norm(rx[i] - tx[i]);
  sigma2 /= static_cast<double>(tx.size());
  double mean_sig = 0.0;
  for (const auto& s : tx) mean_sig += std::norm(s);
  mean_sig /= static_cast<double>(tx.size());
  sigma2 = std::max(sigma2, 1e-30 * std::max(mean_sig, 1e-300));

  std::vector<double> log_prior(c.prior.size());
  for (std::size_t j = 0; j < c.prior.size(); ++j)
    log_prior[j] = c.prior[j] > 0.0 ? std::log(c.prior[j])
                                    : -std::numeric_limits<double>::infinity();

  const double inv_s2 = 1.0 / sigma2;
  std::vector<double> terms(c.points.size());
  double acc = 0.0;  // nats
  for (std::size_t t = 0; t < tx.size(); ++t) {
    double num = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c.points.size(); ++j) {
      terms[j] = -std::norm(rx[t] - c.points[j]) * inv_s2 + log_prior[j];
      // The transmitted point: match by value (grid points are exact).
      if (c.points[j] == tx[t]) num = terms[j];
    }
    if (!std::isfinite(num))
      throw std::invalid_argument("mi: transmitted symbol not on the constellation grid");
    acc += num - log_sum_exp(terms);
  }
  const double log2e = 1.4426950408889634;
  return c.entropy_bits() + acc / static_cast<double>(tx.size()) * log2e;
}

double gmi_gaussian(std::span<const cdouble> tx, std::span<const cdouble> rx,
                    const Constellation& c) {
  if (tx.size() != rx.size() || tx.empty())
    throw std::invalid_argument("gmi: length mismatch or empty input");

  double sigma2 = 0.0;
  for (std::size_t i = 0; i < tx.size(); ++i) sigma2 += std::norm(rx[i] - tx[i]);
  sigma2 /= static_cast<double>(tx.size());
  double mean_sig = 0.0;
  for (const auto& s : tx) mean_sig += std::norm(s);
  mean_sig /= static_cast<double>(tx.size());
  sigma2 = std::max(sigma2, 1e-30 * std::max(mean_sig, 1e-300));

  std::vector<double> log_prior(c.prior.size());
  for (std::size_t j = 0; j < c.prior.size(); ++j)
    log_prior[j] = c.prior[j] > 0.0 ? std::log(c.prior[j])
                                    : -std::numeric_limits<double>::infinity();

  const double inv_s2 = 1.0 / sigma2;
  const int nbits = c.bits_per_symbol;
  std::vector<double> terms(c.points.size());
  std::vector<double> bit_terms;
  bit_terms.reserve(c.points.size());

  double acc = 0.0;  // nats
  for (std::size_t t = 0; t < rx.size(); ++t) {
    std::size_t tx_point = c.points.size();
    for (std::size_t j = 0; j < c.points.size(); ++j) {
      terms[j] = -std::norm(rx[t] - c.points[j]) * inv_s2 + log_prior[j];
      if (c.points[j] == tx[t]) tx_point = j;
    }
    if (tx_point == c.points.size())
      throw std::invalid_argument("gmi: transmitted symbol not on the constellation grid");
    const double den = log_sum_exp(terms);
    const std::uint8_t tx_label = c.labels_per_point[tx_point];
    for (int b = 0; b < nbits; ++b) {
      const std::uint8_t bit = (tx_label >> b) & 1u;
      bit_terms.clear();
      for (std::size_t j = 0; j < c.points.size(); ++j)
        if (((c.labels_per_point[j] >> b) & 1u) == bit) bit_terms.push_back(terms[j]);
      acc += log_sum_exp(bit_terms) - den;
    }
  }
  const double log2e = 1.4426950408889634;
  return c.entropy_bits() + acc / static_cast<double>(rx.size()) * log2e;
}

double air_n_bits_per_4d(double mi_bits_per_2d, double rate_loss_bits_per_amp) {
  if (!std::isfinite(mi_bits_per_2d) || !std::isfinite(rate_loss_bits_per_amp))
    throw std::invalid_argument("air_n: inputs must be finite");
  return 2.0 * (mi_bits_per_2d - 2.0 * rate_loss_bits_per_amp);
}

double empirical_entropy(std::span<const double> counts) {
  double total = 0.0;
  for (double v : counts) {
    if (v < 0.0) throw std::invalid_argument("entropy: negative count");
    total += v;
  }
  if (!(total > 0.0)) throw std::invalid_argument("entropy: all counts zero");
  double h = 0.0;
  for (double v : counts) {
    if (v > 0.0) {
      const double p = v / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

}  // namespace dscm
