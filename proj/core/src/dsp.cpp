#include "dscm/dsp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft_util.hpp"

namespace dscm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSpeedOfLight = 299792458.0;  // m/s

// exp(j 2 pi f t) applied in place; t = sample index / fs.
void frequency_shift(std::vector<cdouble>& v, double f_hz, double fs) {
  if (f_hz == 0.0) return;
  // Incremental rotation drifts over ~1e5 samples; compute per sample.
  const double w = 2.0 * kPi * f_hz / fs;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double ph = w * static_cast<double>(i);
    v[i] *= cdouble(std::cos(ph), std::sin(ph));
  }
}

// beta2 * L in s^2 for an accumulated dispersion in ps/nm.
double beta2_length(double dl_ps_nm, double wavelength_nm) {
  const double dl_si = dl_ps_nm * 1e-3;           // s/m
  const double lambda = wavelength_nm * 1e-9;     // m
  return -dl_si * lambda * lambda / (2.0 * kPi * kSpeedOfLight);
}

}  // namespace

double TxConfig::subcarrier_spacing() const {
  if (spacing_mode == SpacingMode::Center) return center_spacing_hz;
  return symbol_rate_hz * (1.0 + rolloff) + guard_hz;
}

double TxConfig::subcarrier_center(int i) const {
  return (static_cast<double>(i + 1) - (n_subcarriers + 1) / 2.0) * subcarrier_spacing();
}

double TxConfig::occupied_edge() const {
  const double half_band = symbol_rate_hz * (1.0 + rolloff) / 2.0;
  return std::abs(subcarrier_center(n_subcarriers - 1)) + half_band;
}

void TxConfig::validate() const {
  if (n_subcarriers < 1) throw std::invalid_argument("tx.n_subcarriers must be >= 1");
  if (!(symbol_rate_hz > 0.0)) throw std::invalid_argument("tx.symbol_rate_hz must be > 0");
  if (rolloff < 0.0 || rolloff > 1.0) throw std::invalid_argument("tx.rolloff must be in [0,1]");
  if (sps < 2) throw std::invalid_argument("tx.sps must be >= 2");
  if (rrc_span < 8) throw std::invalid_argument("tx.rrc_span must be >= 8");
  if (guard_hz < 0.0) throw std::invalid_argument("tx.guard_hz must be >= 0");
  if (occupied_edge() > sample_rate() / 2.0)
    throw std::invalid_argument("tx: occupied band exceeds the simulation Nyquist frequency");
}

std::vector<double> rrc_filter(double rolloff, int sps, int span) {
  if (rolloff < 0.0 || rolloff > 1.0) throw std::invalid_argument("rrc: rolloff in [0,1]");
  if (sps < 2 || span < 8) throw std::invalid_argument("rrc: need sps >= 2 and span >= 8");

  const int half = span * sps;
  std::vector<double> taps(static_cast<std::size_t>(2 * half) + 1);
  const double b = rolloff;
  for (int i = -half; i <= half; ++i) {
    const double t = static_cast<double>(i) / sps;  // in symbol periods
    double v;
    if (i == 0) {
      v = 1.0 - b + 4.0 * b / kPi;
    } else if (b > 0.0 && std::abs(std::abs(t) - 1.0 / (4.0 * b)) < 1e-12) {
      const double arg = kPi / (4.0 * b);
      v = (b / std::sqrt(2.0)) *
          ((1.0 + 2.0 / kPi) * std::sin(arg) + (1.0 - 2.0 / kPi) * std::cos(arg));
    } else {
      const double num =
          std::sin(kPi * t * (1.0 - b)) + 4.0 * b * t * std::cos(kPi * t * (1.0 + b));
      const double den = kPi * t * (1.0 - 16.0 * b * b * t * t);
      v = num / den;
    }
    taps[static_cast<std::size_t>(i + half)] = v;
  }

  double energy = 0.0;
  for (double v : taps) energy += v * v;
  const double inv = 1.0 / std::sqrt(energy);
  for (double& v : taps) v *= inv;
  return taps;
}

Waveform tx_multiplex(const SymbolFrame& frame, const TxConfig& cfg) {
  cfg.validate();
  if (frame.n_subcarriers() != cfg.n_subcarriers)
    throw std::invalid_argument("tx_multiplex: frame/config subcarrier count mismatch");

  const std::size_t n_samples = static_cast<std::size_t>(frame.n_slots()) * cfg.sps;
  const std::vector<double> taps = rrc_filter(cfg.rolloff, cfg.sps, cfg.rrc_span);
  const double fs = cfg.sample_rate();

  Waveform wf;
  wf.sample_rate = fs;
  wf.x.assign(n_samples, cdouble(0.0));
  wf.y.assign(n_samples, cdouble(0.0));

  std::vector<cdouble> up(n_samples);
  for (int sc = 0; sc < cfg.n_subcarriers; ++sc) {
    const double fc = cfg.subcarrier_center(sc);
    for (int pol = 0; pol < 2; ++pol) {
      std::fill(up.begin(), up.end(), cdouble(0.0));
      const auto symbols = frame.stream(sc, pol);
      for (std::size_t j = 0; j < symbols.size(); ++j)
        up[j * cfg.sps] = symbols[j];
      std::vector<cdouble> shaped = detail::convolve_same(up, taps);
      frequency_shift(shaped, fc, fs);
      auto& pol_samples = pol == 0 ? wf.x : wf.y;
      for (std::size_t i = 0; i < n_samples; ++i) pol_samples[i] += shaped[i];
    }
  }

  const double p = wf.mean_power();
  if (!(p > 0.0)) throw std::invalid_argument("tx_multiplex: all-zero frame");
  wf.scale(1.0 / std::sqrt(p));
  return wf;
}

Waveform cd_compensate(const Waveform& wf, double dl_ps_nm, double reference_wavelength_nm) {
  wf.check();
  if (!std::isfinite(dl_ps_nm)) throw std::invalid_argument("cd_compensate: dispersion not finite");

  const std::size_t n = wf.size();
  const double b2l = beta2_length(dl_ps_nm, reference_wavelength_nm);
  const std::vector<double> freqs = detail::fft_frequencies(n, wf.sample_rate);

  // Fiber applies exp(+j (beta2/2) w^2 z); this is the conjugate response.
  std::vector<cdouble> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 2.0 * kPi * freqs[i];
    const double phase = -0.5 * b2l * w * w;
    h[i] = cdouble(std::cos(phase), std::sin(phase));
  }

  Waveform out = wf;
  for (auto* pol : {&out.x, &out.y}) {
    detail::fft_forward(pol->data(), n);
    for (std::size_t i = 0; i < n; ++i) (*pol)[i] *= h[i];
    detail::fft_inverse(pol->data(), n);
  }
  return out;
}

std::pair<std::vector<cdouble>, std::vector<cdouble>> rx_demultiplex(const Waveform& wf,
                                                                     const TxConfig& cfg,
                                                                     int sc) {
  wf.check();
  if (sc < 0 || sc >= cfg.n_subcarriers)
    throw std::invalid_argument("rx_demultiplex: subcarrier index out of range");
  if (wf.size() % cfg.sps != 0)
    throw std::invalid_argument("rx_demultiplex: waveform length not a multiple of sps");

  const std::vector<double> taps = rrc_filter(cfg.rolloff, cfg.sps, cfg.rrc_span);
  const double fs = cfg.sample_rate();
  const double fc = cfg.subcarrier_center(sc);
  const std::size_t n_symbols = wf.size() / cfg.sps;

  std::pair<std::vector<cdouble>, std::vector<cdouble>> out;
  for (int pol = 0; pol < 2; ++pol) {
    std::vector<cdouble> v(pol == 0 ? wf.x : wf.y);
    frequency_shift(v, -fc, fs);
    std::vector<cdouble> filtered = detail::convolve_same(v, taps);
    auto& symbols = pol == 0 ? out.first : out.second;
    symbols.resize(n_symbols);
    for (std::size_t j = 0; j < n_symbols; ++j) symbols[j] = filtered[j * cfg.sps];
  }
  return out;
}

AlignResult align_one_tap(std::span<const cdouble> tx, std::span<const cdouble> rx) {
  if (tx.size() != rx.size()) throw std::invalid_argument("align_one_tap: length mismatch");
  if (tx.size() < 100) throw std::invalid_argument("align_one_tap: need at least 100 symbols");

  cdouble num(0.0);
  double den = 0.0;
  for (std::size_t i = 0; i < tx.size(); ++i) {
    num += rx[i] * std::conj(tx[i]);
    den += std::norm(tx[i]);
  }
  if (!(den > 0.0)) throw std::invalid_argument("align_one_tap: all-zero reference");

  AlignResult res;
  res.tap = num / den;
  if (res.tap == cdouble(0.0)) throw std::invalid_argument("align_one_tap: degenerate tap");
  res.aligned.resize(rx.size());
  for (std::size_t i = 0; i < rx.size(); ++i) res.aligned[i] = rx[i] / res.tap;
  return res;
}

}  // namespace dscm
