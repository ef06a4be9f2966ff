#ifndef DSCM_DSP_HPP
#define DSCM_DSP_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "dscm/mapper.hpp"
#include "dscm/waveform.hpp"

namespace dscm {

struct TxConfig {
  int n_subcarriers = 4;
  double symbol_rate_hz = 10e9;  // per subcarrier
  double rolloff = 0.1;

  // "guard": center-to-center spacing = symbol_rate*(1+rolloff) + guard_hz.
  // "center": center-to-center spacing = center_spacing_hz directly.
  enum class SpacingMode { Guard, Center };
  SpacingMode spacing_mode = SpacingMode::Guard;
  double guard_hz = 2e9;
  double center_spacing_hz = 13e9;

  int sps = 8;        // simulation samples per symbol
  int rrc_span = 64;  // filter half-length in symbols

  double sample_rate() const { return symbol_rate_hz * sps; }
  double subcarrier_spacing() const;
  // Center frequency of subcarrier i (0-based), symmetric around 0 Hz.
  double subcarrier_center(int i) const;
  // Highest occupied frequency across all subcarriers.
  double occupied_edge() const;
  void validate() const;
};

// Unit-energy root-raised-cosine taps, length 2*span*sps + 1, symmetric.
std::vector<double> rrc_filter(double rolloff, int sps, int span);

// Upsample each (subcarrier, polarization) stream, pulse-shape, shift each
// subcarrier to its center frequency and sum. Output mean power (both
// polarizations) is normalized to 1; launch power is a scalar applied later.
Waveform tx_multiplex(const SymbolFrame& frame, const TxConfig& cfg);

// Full-band frequency-domain compensation of `dl_ps_nm` ps/nm accumulated
// dispersion (the exact inverse of the fiber response).
Waveform cd_compensate(const Waveform& wf, double dl_ps_nm,
                       double reference_wavelength_nm = 1550.0);

// Shift subcarrier `sc` to baseband, matched-filter, decimate to one sample
// per symbol at the construction-known timing phase. Returns (X, Y).
std::pair<std::vector<cdouble>, std::vector<cdouble>> rx_demultiplex(const Waveform& wf,
                                                                     const TxConfig& cfg,
                                                                     int sc);

struct AlignResult {
  std::vector<cdouble> aligned;  // rx / tap
  cdouble tap;                   // least-squares complex scalar
};

// One complex tap over the whole trace: tap = sum(rx conj(tx)) / sum|tx|^2.
AlignResult align_one_tap(std::span<const cdouble> tx, std::span<const cdouble> rx);

}  // namespace dscm

#endif  // DSCM_DSP_HPP
