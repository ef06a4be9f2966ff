#ifndef DSCM_RNG_HPP
#define DSCM_RNG_HPP

#include <cstdint>
#include <cmath>
#include <random>

namespace dscm {

// Named substreams derived from one master seed. A point consumes the same
// info-bit, sign-bit and per-span ASE streams no matter which mapping scheme
// or launch power is being simulated, so scheme comparisons are paired.
enum class StreamDomain : std::uint64_t {
  InfoBits = 1,
  SignBits = 2,
  Ase = 3,
  AmplitudeSampling = 4,
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Counter-based derivation: seed -> (domain, index) -> stream seed.
inline std::uint64_t substream_seed(std::uint64_t master, StreamDomain domain,
                                    std::uint64_t index = 0) {
  std::uint64_t z = detail::splitmix64(master ^ (static_cast<std::uint64_t>(domain) *
                                                 0x9e3779b97f4a7c15ULL));
  return detail::splitmix64(z ^ (index * 0xd1342543de82ef95ULL + 1));
}

// mt19937_64 wrapper with explicit bit/uniform/normal extraction. The
// transforms are spelled out (not std::*_distribution) so streams are
// bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // One bit per call, consumed MSB-first out of buffered 64-bit words.
  std::uint8_t next_bit() {
    if (avail_ == 0) {
      buf_ = eng_();
      avail_ = 64;
    }
    --avail_;
    return static_cast<std::uint8_t>((buf_ >> avail_) & 1u);
  }

  // Uniform in (0, 1].
  double next_uniform() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1p-53;
  }

  // Standard normal via Box-Muller; pairs are cached.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  std::uint64_t buf_ = 0;
  int avail_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace dscm

#endif  // DSCM_RNG_HPP
