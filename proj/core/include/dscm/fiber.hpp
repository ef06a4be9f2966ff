#ifndef DSCM_FIBER_HPP
#define DSCM_FIBER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "dscm/waveform.hpp"

namespace dscm {

struct LinkConfig {
  double span_km = 80.0;
  int n_spans = 25;
  double alpha_db_km = 0.2;
  double dispersion_ps_nm_km = 17.0;
  double gamma_per_w_km = 1.3;
  double edfa_gain_db = 16.0;
  double edfa_nf_db = 4.5;
  int steps_per_span = 800;
  double reference_wavelength_nm = 1550.0;
  bool noiseless = false;

  double total_dispersion_ps_nm() const {
    return dispersion_ps_nm_km * span_km * n_spans;
  }
  double beta2_s2_per_m() const;
  // True when the EDFA gain exactly balances the span loss.
  bool gain_balances_loss() const;
  void validate() const;  // throws on non-physical values
};

struct PropagationReport {
  std::vector<double> span_peak_power_w;  // at span input
  double nonlinear_phase_rad = 0.0;       // accumulated mean estimate
  long long total_steps = 0;
  std::uint64_t ase_checksum = 0;  // FNV-1a over the drawn noise samples
};

// One fiber span: symmetric split-step solution of the Manakov equations
// (8/9-averaged nonlinearity, both polarizations see the total power).
// Deterministic; no noise is involved.
Waveform ssfm_span(const Waveform& wf, const LinkConfig& cfg);

// Flat gain plus circular complex Gaussian ASE per polarization with
// single-sided PSD S_ase = (G-1) h nu n_sp, n_sp = 10^(NF/10)/2, over the
// full simulation bandwidth. `checksum` (optional) accumulates FNV-1a over
// the generated deviates. noiseless skips the noise entirely.
Waveform edfa(const Waveform& wf, double gain_db, double nf_db,
              double reference_wavelength_nm, std::uint64_t noise_seed,
              bool noiseless = false, std::uint64_t* checksum = nullptr);

// n_spans x (span then amplifier); span s draws its ASE from substream
// (seed, Ase, s), so the noise is identical for any waveform of equal
// length regardless of content.
std::pair<Waveform, PropagationReport> propagate_link(const Waveform& wf,
                                                      const LinkConfig& cfg,
                                                      std::uint64_t seed);

}  // namespace dscm

#endif  // DSCM_FIBER_HPP
