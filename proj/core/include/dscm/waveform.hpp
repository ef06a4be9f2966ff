#ifndef DSCM_WAVEFORM_HPP
#define DSCM_WAVEFORM_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dscm {

using cdouble = std::complex<double>;

// Dual-polarization complex baseband sample streams. Center frequency 0 Hz.
struct Waveform {
  std::vector<std::complex<double>> x;
  std::vector<std::complex<double>> y;
  double sample_rate = 0.0;  // Hz

  std::size_t size() const { return x.size(); }

  void check() const {
    if (x.size() != y.size())
      throw std::invalid_argument("waveform: polarization lengths differ");
    if (!(sample_rate > 0.0)) throw std::invalid_argument("waveform: sample_rate must be > 0");
  }

  // Mean instantaneous power, both polarizations summed.
  double mean_power() const {
    double acc = 0.0;
    for (const auto& s : x) acc += std::norm(s);
    for (const auto& s : y) acc += std::norm(s);
    return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
  }

  void scale(double factor) {
    for (auto& s : x) s *= factor;
    for (auto& s : y) s *= factor;
  }
};

// Symmetric zero padding (guard time for dispersion spreading).
Waveform pad_waveform(const Waveform& wf, std::size_t left, std::size_t right);
Waveform unpad_waveform(const Waveform& wf, std::size_t left, std::size_t payload);

}  // namespace dscm

#endif  // DSCM_WAVEFORM_HPP
