#include "fft_util.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace dscm::detail {

namespace {

std::mutex planner_mutex;

// One reusable in/out buffer pair per plan; execution on caller buffers goes
// through fftw_execute_dft with fftw_malloc'd (identically aligned) memory.
struct PlanEntry {
  fftw_plan plan = nullptr;
  fftw_complex* buf = nullptr;
  ~PlanEntry() {
    if (plan) fftw_destroy_plan(plan);
    if (buf) fftw_free(buf);
  }
};

fftw_plan get_plan(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, PlanEntry> cache;
  std::lock_guard<std::mutex> lock(planner_mutex);
  auto& entry = cache[{n, sign}];
  if (!entry.plan) {
    entry.buf = fftw_alloc_complex(n);
    entry.plan = fftw_plan_dft_1d(static_cast<int>(n), entry.buf, entry.buf, sign,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!entry.plan) throw std::runtime_error("fftw: plan creation failed");
  }
  return entry.plan;
}

void execute(std::complex<double>* data, std::size_t n, int sign) {
  if (n == 0) return;
  fftw_plan plan = get_plan(n, sign);
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, raw, raw);
}

}  // namespace

std::size_t next_fast_length(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2ul, 3ul, 5ul, 7ul})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

void fft_forward(std::complex<double>* data, std::size_t n) { execute(data, n, FFTW_FORWARD); }

void fft_inverse(std::complex<double>* data, std::size_t n) {
  execute(data, n, FFTW_BACKWARD);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) data[i] *= inv;
}

std::vector<std::complex<double>> fft(std::span<const std::complex<double>> v) {
  std::vector<std::complex<double>> out(v.begin(), v.end());
  fft_forward(out.data(), out.size());
  return out;
}

std::vector<std::complex<double>> ifft(std::span<const std::complex<double>> v) {
  std::vector<std::complex<double>> out(v.begin(), v.end());
  fft_inverse(out.data(), out.size());
  return out;
}

std::vector<double> fft_frequencies(std::size_t n, double fs) {
  std::vector<double> f(n);
  const double df = fs / static_cast<double>(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) f[i] = df * static_cast<double>(i);
  for (std::size_t i = half; i < n; ++i)
    f[i] = df * (static_cast<double>(i) - static_cast<double>(n));
  return f;
}

std::vector<std::complex<double>> convolve_same(std::span<const std::complex<double>> x,
                                                std::span<const double> taps) {
  if (x.empty() || taps.empty()) return {};
  const std::size_t full = x.size() + taps.size() - 1;
  const std::size_t n = next_fast_length(full);

  std::vector<std::complex<double>> xa(n, 0.0), ta(n, 0.0);
  std::copy(x.begin(), x.end(), xa.begin());
  std::copy(taps.begin(), taps.end(), ta.begin());
  fft_forward(xa.data(), n);
  fft_forward(ta.data(), n);
  for (std::size_t i = 0; i < n; ++i) xa[i] *= ta[i];
  fft_inverse(xa.data(), n);

  const std::size_t delay = (taps.size() - 1) / 2;
  std::vector<std::complex<double>> out(x.size());
  std::copy(xa.begin() + static_cast<std::ptrdiff_t>(delay),
            xa.begin() + static_cast<std::ptrdiff_t>(delay + x.size()), out.begin());
  return out;
}

}  // namespace dscm::detail
