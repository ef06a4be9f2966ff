#ifndef DSCM_FFT_UTIL_HPP
#define DSCM_FFT_UTIL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Thin FFTW3 layer. Plans are cached per length and created with
// FFTW_ESTIMATE so results are run-to-run identical; creation is guarded by
// a mutex, execution is concurrent.
namespace dscm::detail {

// Smallest 2^a 3^b 5^c 7^d >= n.
std::size_t next_fast_length(std::size_t n);

// In-place transforms, FFTW sign convention (forward = -1). The inverse is
// normalized by 1/n.
void fft_forward(std::complex<double>* data, std::size_t n);
void fft_inverse(std::complex<double>* data, std::size_t n);

std::vector<std::complex<double>> fft(std::span<const std::complex<double>> v);
std::vector<std::complex<double>> ifft(std::span<const std::complex<double>> v);

// FFT frequency grid in Hz for length n at rate fs (bin 0 = DC, wrapped).
std::vector<double> fft_frequencies(std::size_t n, double fs);

// Linear convolution with real taps, "same" alignment: the filter group
// delay (taps.size()-1)/2 is removed and the output has x.size() samples.
std::vector<std::complex<double>> convolve_same(std::span<const std::complex<double>> x,
                                                std::span<const double> taps);

}  // namespace dscm::detail

#endif  // DSCM_FFT_UTIL_HPP
