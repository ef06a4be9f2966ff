#ifndef DSCM_ESS_HPP
#define DSCM_ESS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dscm {

using BigInt = mpz_class;

// Thrown when a decoded sequence lies inside the energy sphere but ranks at
// or above 2^k, i.e. it can never have been produced by the encoder.
struct NonCanonicalCodewordError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapingConfig {
  int n = 360;                             // amplitudes per block
  int k = 623;                             // information bits per block
  std::vector<int> alphabet = {1, 3, 5, 7};
  long long e_max = 0;                     // max sum of squared amplitudes

  double shaping_rate() const { return static_cast<double>(k) / n; }
  // Checks the cheap structural invariants; the 2^k <= sequence count
  // condition is enforced by the Trellis constructor.
  void validate() const;
};

struct AmplitudeBlock {
  std::vector<int> amplitudes;

  long long energy() const {
    long long e = 0;
    for (int a : amplitudes) e += static_cast<long long>(a) * a;
    return e;
  }
};

// Number of length-n sequences over `alphabet` with energy <= e_max.
// Returns 0 when the bound is below the all-minimum sequence.
BigInt sequence_count(int n, std::span<const int> alphabet, long long e_max);

// Smallest energy bound, on the lattice of energies reachable by the
// alphabet, admitting at least 2^k sequences. Throws std::invalid_argument
// when even the full |alphabet|^n space is too small.
long long min_emax(int n, std::span<const int> alphabet, int k);

// Bounded-energy counting trellis. Counts are exact integers; the table is
// immutable after construction and safe to share across threads.
class Trellis {
 public:
  explicit Trellis(ShapingConfig config);

  const ShapingConfig& config() const { return cfg_; }
  const BigInt& sequence_count() const { return at(0, 0); }
  const BigInt& index_space() const { return index_space_; }  // 2^k

  // index -> the index-th sequence in lexicographic order (ascending
  // amplitude value is the letter order).
  AmplitudeBlock encode(const BigInt& index) const;

  // Lexicographic rank of `block`. Throws std::invalid_argument for letters
  // outside the alphabet or energy above the bound, and
  // NonCanonicalCodewordError when the rank is >= 2^k.
  BigInt decode(const AmplitudeBlock& block) const;

  // Empirical amplitude distribution over `sample_count` random encoder
  // indices (k fresh bits each). Sums to one; order follows the alphabet.
  std::vector<double> amplitude_distribution(long long sample_count,
                                             std::uint64_t seed) const;

 private:
  const BigInt& at(int pos, int offset) const { return table_[static_cast<std::size_t>(pos) * width_ + offset]; }

  ShapingConfig cfg_;
  int width_ = 0;  // offsets per position; offset l <-> energy e = pos + 8*l
  std::vector<BigInt> table_;
  BigInt index_space_;
};

// H(distribution) - k/n in bits per amplitude, reported signed.
double rate_loss(const ShapingConfig& config, std::span<const double> distribution);

// k-bit big-endian packing used by the encoder front end and the codec CLI.
BigInt index_from_bits(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> bits_from_index(const BigInt& index, int k);

}  // namespace dscm

#endif  // DSCM_ESS_HPP
