#include "dscm/fiber.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "dscm/rng.hpp"

namespace dscm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSpeedOfLight = 299792458.0;  // m/s
constexpr double kPlanck = 6.62607015e-34;     // J s
constexpr double kManakov = 8.0 / 9.0;

std::mutex fftw_planner_mutex;

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    hash ^= (value >> (8 * i)) & 0xffu;
    hash *= 1099511628211ULL;
  }
  return hash;
}

// Split-step engine for one link configuration and waveform length.
// Owns aligned FFTW buffers and plans; single-threaded use per instance,
// multiple instances may run concurrently.
class SsfmEngine {
 public:
  SsfmEngine(const LinkConfig& cfg, std::size_t n, double sample_rate)
      : cfg_(cfg), n_(n) {
    const double dz = cfg.span_km * 1e3 / cfg.steps_per_span;   // m
    const double alpha_np = cfg.alpha_db_km * 1e-3 * std::log(10.0) / 10.0;  // 1/m
    const double beta2 = cfg.beta2_s2_per_m();
    // Effective length of one step referenced to the field at mid-step.
    dz_eff_ = alpha_np > 0.0 ? 2.0 * std::sinh(alpha_np * dz / 2.0) / alpha_np : dz;
    gamma_eff_ = kManakov * cfg.gamma_per_w_km * 1e-3;  // 1/(W m)

    half_op_.resize(n);
    full_op_.resize(n);
    const double df = sample_rate / static_cast<double>(n);
    const std::size_t half_bins = (n + 1) / 2;
    for (std::size_t i = 0; i < n; ++i) {
      const double f = df * (i < half_bins ? static_cast<double>(i)
                                           : static_cast<double>(i) - static_cast<double>(n));
      const double w = 2.0 * kPi * f;
      const double phase_half = 0.5 * beta2 * w * w * (dz / 2.0);
      const double amp_half = std::exp(-alpha_np / 2.0 * (dz / 2.0));
      // 1/n from the unnormalized inverse FFT is folded into the operators.
      const std::complex<double> h =
          amp_half * std::complex<double>(std::cos(phase_half), std::sin(phase_half));
      half_op_[i] = h / static_cast<double>(n);
      full_op_[i] = h * h / static_cast<double>(n);
    }

    for (auto* buf : {&bx_, &by_})
      *buf = fftw_alloc_complex(n);
    {
      std::lock_guard<std::mutex> lock(fftw_planner_mutex);
      fwd_x_ = fftw_plan_dft_1d(static_cast<int>(n), bx_, bx_, FFTW_FORWARD, FFTW_ESTIMATE);
      inv_x_ = fftw_plan_dft_1d(static_cast<int>(n), bx_, bx_, FFTW_BACKWARD, FFTW_ESTIMATE);
      fwd_y_ = fftw_plan_dft_1d(static_cast<int>(n), by_, by_, FFTW_FORWARD, FFTW_ESTIMATE);
      inv_y_ = fftw_plan_dft_1d(static_cast<int>(n), by_, by_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!fwd_x_ || !inv_x_ || !fwd_y_ || !inv_y_)
      throw std::runtime_error("ssfm: fftw plan creation failed");
  }

  ~SsfmEngine() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex);
    fftw_destroy_plan(fwd_x_);
    fftw_destroy_plan(inv_x_);
    fftw_destroy_plan(fwd_y_);
    fftw_destroy_plan(inv_y_);
    fftw_free(bx_);
    fftw_free(by_);
  }

  SsfmEngine(const SsfmEngine&) = delete;
  SsfmEngine& operator=(const SsfmEngine&) = delete;

  // Propagates one span in place; returns the accumulated mean nonlinear
  // phase for the report.
  double run_span(std::vector<std::complex<double>>& x, std::vector<std::complex<double>>& y,
                  int span_index) {
    auto* cx = reinterpret_cast<std::complex<double>*>(bx_);
    auto* cy = reinterpret_cast<std::complex<double>*>(by_);
    std::copy(x.begin(), x.end(), cx);
    std::copy(y.begin(), y.end(), cy);

    double phase_acc = 0.0;
    fftw_execute(fwd_x_);
    fftw_execute(fwd_y_);
    apply(cx, cy, half_op_);
    for (int step = 0; step < cfg_.steps_per_span; ++step) {
      fftw_execute(inv_x_);
      fftw_execute(inv_y_);
      phase_acc += nonlinear_step(cx, cy, span_index, step);
      fftw_execute(fwd_x_);
      fftw_execute(fwd_y_);
      apply(cx, cy, step + 1 < cfg_.steps_per_span ? full_op_ : half_op_);
    }
    fftw_execute(inv_x_);
    fftw_execute(inv_y_);
    // The trailing inverse FFT has no operator multiply to carry the 1/n.
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      x[i] = cx[i] * inv_n;
      y[i] = cy[i] * inv_n;
    }
    return phase_acc;
  }

 private:
  void apply(std::complex<double>* cx, std::complex<double>* cy,
             const std::vector<std::complex<double>>& op) {
    for (std::size_t i = 0; i < n_; ++i) {
      cx[i] *= op[i];
      cy[i] *= op[i];
    }
  }

  double nonlinear_step(std::complex<double>* cx, std::complex<double>* cy, int span_index,
                        int step) {
    const double c = gamma_eff_ * dz_eff_;
    double power_acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double p = std::norm(cx[i]) + std::norm(cy[i]);
      if (!std::isfinite(p) || p > 1e12) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "ssfm: power blow-up at span %d step %d", span_index,
                      step);
        throw std::runtime_error(msg);
      }
      power_acc += p;
      const double phi = c * p;
      const std::complex<double> rot(std::cos(phi), std::sin(phi));
      cx[i] *= rot;
      cy[i] *= rot;
    }
    return c * power_acc / static_cast<double>(n_);
  }

  LinkConfig cfg_;
  std::size_t n_;
  double dz_eff_ = 0.0;
  double gamma_eff_ = 0.0;
  std::vector<std::complex<double>> half_op_, full_op_;
  fftw_complex* bx_ = nullptr;
  fftw_complex* by_ = nullptr;
  fftw_plan fwd_x_ = nullptr, inv_x_ = nullptr, fwd_y_ = nullptr, inv_y_ = nullptr;
};

}  // namespace

double LinkConfig::beta2_s2_per_m() const {
  const double d_si = dispersion_ps_nm_km * 1e-6;  // s/m^2
  const double lambda = reference_wavelength_nm * 1e-9;
  return -d_si * lambda * lambda / (2.0 * kPi * kSpeedOfLight);
}

bool LinkConfig::gain_balances_loss() const {
  return std::abs(edfa_gain_db - alpha_db_km * span_km) < 1e-9;
}

void LinkConfig::validate() const {
  if (span_km <= 0.0) throw std::invalid_argument("link.span_km must be > 0");
  if (n_spans < 0) throw std::invalid_argument("link.n_spans must be >= 0");
  if (alpha_db_km < 0.0) throw std::invalid_argument("link.alpha_db_km must be >= 0");
  if (gamma_per_w_km < 0.0) throw std::invalid_argument("link.gamma_per_w_km must be >= 0");
  if (steps_per_span < 1) throw std::invalid_argument("link.steps_per_span must be >= 1");
  if (reference_wavelength_nm <= 0.0)
    throw std::invalid_argument("link.reference_wavelength_nm must be > 0");
  if (!gain_balances_loss())
    std::fprintf(stderr,
                 "warning: EDFA gain %.3f dB does not balance span loss %.3f dB; signal power "
                 "will drift span to span\n",
                 edfa_gain_db, alpha_db_km * span_km);
}

Waveform ssfm_span(const Waveform& wf, const LinkConfig& cfg) {
  wf.check();
  cfg.validate();
  Waveform out = wf;
  SsfmEngine engine(cfg, wf.size(), wf.sample_rate);
  engine.run_span(out.x, out.y, 0);
  return out;
}

Waveform edfa(const Waveform& wf, double gain_db, double nf_db, double reference_wavelength_nm,
              std::uint64_t noise_seed, bool noiseless, std::uint64_t* checksum) {
  wf.check();
  if (gain_db <= 0.0) throw std::invalid_argument("edfa: gain must be > 0 dB");

  Waveform out = wf;
  const double gain_lin = std::pow(10.0, gain_db / 10.0);
  out.scale(std::sqrt(gain_lin));
  if (noiseless) return out;

  const double n_sp = std::pow(10.0, nf_db / 10.0) / 2.0;
  const double nu = kSpeedOfLight / (reference_wavelength_nm * 1e-9);
  const double s_ase = (gain_lin - 1.0) * kPlanck * nu * n_sp;     // W/Hz per pol
  const double sigma_comp = std::sqrt(s_ase * wf.sample_rate / 2.0);  // per I and Q

  Rng rng(noise_seed);
  std::uint64_t hash = checksum ? *checksum : 0;
  for (auto* pol : {&out.x, &out.y}) {
    for (auto& s : *pol) {
      const double re = rng.next_normal();
      const double im = rng.next_normal();
      if (checksum) {
        std::uint64_t bits;
        static_assert(sizeof bits == sizeof re);
        std::memcpy(&bits, &re, sizeof bits);
        hash = fnv1a(hash, bits);
        std::memcpy(&bits, &im, sizeof bits);
        hash = fnv1a(hash, bits);
      }
      s += cdouble(sigma_comp * re, sigma_comp * im);
    }
  }
  if (checksum) *checksum = hash;
  return out;
}

std::pair<Waveform, PropagationReport> propagate_link(const Waveform& wf, const LinkConfig& cfg,
                                                      std::uint64_t seed) {
  wf.check();
  cfg.validate();

  PropagationReport report;
  Waveform out = wf;
  if (cfg.n_spans == 0) return {out, report};

  SsfmEngine engine(cfg, wf.size(), wf.sample_rate);
  for (int span = 0; span < cfg.n_spans; ++span) {
    double peak = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i)
      peak = std::max(peak, std::norm(out.x[i]) + std::norm(out.y[i]));
    report.span_peak_power_w.push_back(peak);

    report.nonlinear_phase_rad += engine.run_span(out.x, out.y, span);
    report.total_steps += cfg.steps_per_span;

    const std::uint64_t span_seed =
        substream_seed(seed, StreamDomain::Ase, static_cast<std::uint64_t>(span));
    out = edfa(out, cfg.edfa_gain_db, cfg.edfa_nf_db, cfg.reference_wavelength_nm, span_seed,
               cfg.noiseless, &report.ase_checksum);
  }
  return {out, report};
}

Waveform pad_waveform(const Waveform& wf, std::size_t left, std::size_t right) {
  wf.check();
  Waveform out;
  out.sample_rate = wf.sample_rate;
  out.x.assign(left, cdouble(0.0));
  out.x.insert(out.x.end(), wf.x.begin(), wf.x.end());
  out.x.insert(out.x.end(), right, cdouble(0.0));
  out.y.assign(left, cdouble(0.0));
  out.y.insert(out.y.end(), wf.y.begin(), wf.y.end());
  out.y.insert(out.y.end(), right, cdouble(0.0));
  return out;
}

Waveform unpad_waveform(const Waveform& wf, std::size_t left, std::size_t payload) {
  wf.check();
  if (left + payload > wf.size()) throw std::invalid_argument("unpad: range out of bounds");
  Waveform out;
  out.sample_rate = wf.sample_rate;
  out.x.assign(wf.x.begin() + static_cast<std::ptrdiff_t>(left),
               wf.x.begin() + static_cast<std::ptrdiff_t>(left + payload));
  out.y.assign(wf.y.begin() + static_cast<std::ptrdiff_t>(left),
               wf.y.begin() + static_cast<std::ptrdiff_t>(left + payload));
  return out;
}

}  // namespace dscm
