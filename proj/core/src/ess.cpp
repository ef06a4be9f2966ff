#include "dscm/ess.hpp"

#include <algorithm>
#include <cmath>

#include "dscm/rng.hpp"

namespace dscm {

namespace {

// Odd amplitudes have a*a == 1 (mod 8), so the energy after i letters is
// congruent to i (mod 8). Energies are stored as offsets l = (e - i) / 8.
int square_offset(int a) { return (a * a - 1) / 8; }

void check_alphabet(std::span<const int> alphabet) {
  if (alphabet.empty()) throw std::invalid_argument("shaping: alphabet is empty");
  int prev = 0;
  for (int a : alphabet) {
    if (a <= 0 || a % 2 == 0)
      throw std::invalid_argument("shaping: alphabet entries must be odd and positive");
    if (a <= prev)
      throw std::invalid_argument("shaping: alphabet must be strictly ascending");
    prev = a;
  }
}

}  // namespace

void ShapingConfig::validate() const {
  check_alphabet(alphabet);
  if (n < 1) throw std::invalid_argument("shaping: n must be >= 1");
  if (k < 1) throw std::invalid_argument("shaping: k must be >= 1");
  const long long a_min = alphabet.front();
  if (e_max < static_cast<long long>(n) * a_min * a_min)
    throw std::invalid_argument("shaping: e_max below the all-minimum sequence energy");
}

BigInt sequence_count(int n, std::span<const int> alphabet, long long e_max) {
  check_alphabet(alphabet);
  if (n < 1) throw std::invalid_argument("sequence_count: n must be >= 1");
  const long long a_min = alphabet.front();
  if (e_max < static_cast<long long>(n) * a_min * a_min) return 0;

  // Completion counts, rolled backwards one position at a time.
  const int width = static_cast<int>((e_max - n) / 8) + 1;
  std::vector<BigInt> next(width), cur(width);
  for (int l = 0; l < width; ++l)
    next[l] = (n + 8LL * l <= e_max) ? 1 : 0;
  for (int i = n - 1; i >= 0; --i) {
    for (int l = 0; l < width; ++l) {
      BigInt total = 0;
      for (int a : alphabet) {
        const int l2 = l + square_offset(a);
        if (l2 < width) total += next[l2];
      }
      cur[l] = std::move(total);
    }
    std::swap(cur, next);
  }
  return next[0];
}

long long min_emax(int n, std::span<const int> alphabet, int k) {
  check_alphabet(alphabet);
  if (n < 1 || k < 1) throw std::invalid_argument("min_emax: n and k must be >= 1");

  BigInt need = 1;
  need <<= k;
  BigInt space;
  mpz_ui_pow_ui(space.get_mpz_t(), alphabet.size(), n);
  if (need > space)
    throw std::invalid_argument("min_emax: 2^k exceeds |alphabet|^n, no energy bound can satisfy k=" +
                                std::to_string(k));

  // Forward histogram of exact sequence energies, then the smallest
  // cumulative level reaching 2^k. Only alphabet-reachable energies appear.
  const int a_max = alphabet.back();
  const int width = n * square_offset(a_max) + 1;
  std::vector<BigInt> hist(width), nh(width);
  hist[0] = 1;
  for (int i = 0; i < n; ++i) {
    std::fill(nh.begin(), nh.end(), 0);
    for (int l = 0; l < width; ++l) {
      if (hist[l] == 0) continue;
      for (int a : alphabet) nh[l + square_offset(a)] += hist[l];
    }
    std::swap(hist, nh);
  }
  BigInt cum = 0;
  for (int l = 0; l < width; ++l) {
    cum += hist[l];
    if (cum >= need) return n + 8LL * l;
  }
  throw std::logic_error("min_emax: histogram exhausted");  // unreachable
}

Trellis::Trellis(ShapingConfig config) : cfg_(std::move(config)) {
  cfg_.validate();
  const int n = cfg_.n;
  width_ = static_cast<int>((cfg_.e_max - n) / 8) + 1;
  table_.assign(static_cast<std::size_t>(n + 1) * width_, BigInt(0));

  BigInt* last = &table_[static_cast<std::size_t>(n) * width_];
  for (int l = 0; l < width_; ++l)
    if (n + 8LL * l <= cfg_.e_max) last[l] = 1;
  for (int i = n - 1; i >= 0; --i) {
    BigInt* row = &table_[static_cast<std::size_t>(i) * width_];
    const BigInt* next = row + width_;
    for (int l = 0; l < width_; ++l) {
      for (int a : cfg_.alphabet) {
        const int l2 = l + square_offset(a);
        if (l2 < width_) row[l] += next[l2];
      }
    }
  }

  index_space_ = 1;
  index_space_ <<= cfg_.k;
  if (index_space_ > sequence_count())
    throw std::invalid_argument("shaping: 2^k exceeds the number of sequences under e_max");
}

AmplitudeBlock Trellis::encode(const BigInt& index) const {
  if (index < 0 || index >= index_space_)
    throw std::invalid_argument("ess encode: index out of range");

  AmplitudeBlock block;
  block.amplitudes.reserve(cfg_.n);
  BigInt rest = index;
  int l = 0;
  for (int i = 0; i < cfg_.n; ++i) {
    bool placed = false;
    for (int a : cfg_.alphabet) {
      const int l2 = l + square_offset(a);
      if (l2 >= width_) break;  // larger letters only move further out
      const BigInt& c = at(i + 1, l2);
      if (rest < c) {
        block.amplitudes.push_back(a);
        l = l2;
        placed = true;
        break;
      }
      rest -= c;
    }
    if (!placed) throw std::logic_error("ess encode: ran out of completions");
  }
  return block;
}

BigInt Trellis::decode(const AmplitudeBlock& block) const {
  if (static_cast<int>(block.amplitudes.size()) != cfg_.n)
    throw std::invalid_argument("ess decode: block length != n");
  if (block.energy() > cfg_.e_max)
    throw std::invalid_argument("ess decode: block energy exceeds e_max");

  BigInt rank = 0;
  int l = 0;
  for (int i = 0; i < cfg_.n; ++i) {
    const int target = block.amplitudes[i];
    bool found = false;
    for (int a : cfg_.alphabet) {
      const int l2 = l + square_offset(a);
      if (a == target) {
        l = l2;
        found = true;
        break;
      }
      if (l2 < width_) rank += at(i + 1, l2);
    }
    if (!found) throw std::invalid_argument("ess decode: amplitude not in alphabet");
  }
  if (rank >= index_space_)
    throw NonCanonicalCodewordError("ess decode: sequence rank >= 2^k (non-canonical codeword)");
  return rank;
}

std::vector<double> Trellis::amplitude_distribution(long long sample_count,
                                                    std::uint64_t seed) const {
  if (sample_count < 1)
    throw std::invalid_argument("amplitude_distribution: sample_count must be >= 1");

  Rng rng(substream_seed(seed, StreamDomain::AmplitudeSampling));
  std::vector<std::uint8_t> bits(cfg_.k);
  std::vector<long long> counts(cfg_.alphabet.size(), 0);
  for (long long s = 0; s < sample_count; ++s) {
    for (auto& b : bits) b = rng.next_bit();
    const AmplitudeBlock block = encode(index_from_bits(bits));
    for (int a : block.amplitudes) {
      const auto it = std::lower_bound(cfg_.alphabet.begin(), cfg_.alphabet.end(), a);
      counts[static_cast<std::size_t>(it - cfg_.alphabet.begin())]++;
    }
  }
  const double total = static_cast<double>(sample_count) * cfg_.n;
  std::vector<double> dist(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) dist[i] = counts[i] / total;
  return dist;
}

double rate_loss(const ShapingConfig& config, std::span<const double> distribution) {
  double h = 0.0;
  for (double p : distribution)
    if (p > 0.0) h -= p * std::log2(p);
  return h - config.shaping_rate();
}

BigInt index_from_bits(std::span<const std::uint8_t> bits) {
  BigInt v = 0;
  for (std::uint8_t b : bits) {
    v <<= 1;
    if (b) v |= 1;
  }
  return v;
}

std::vector<std::uint8_t> bits_from_index(const BigInt& index, int k) {
  if (index < 0) throw std::invalid_argument("bits_from_index: negative index");
  std::vector<std::uint8_t> bits(k, 0);
  for (int j = 0; j < k; ++j)
    bits[static_cast<std::size_t>(k - 1 - j)] =
        mpz_tstbit(index.get_mpz_t(), static_cast<mp_bitcnt_t>(j)) ? 1 : 0;
  if (mpz_sizeinbase(index.get_mpz_t(), 2) > static_cast<std::size_t>(k) && index != 0)
    throw std::invalid_argument("bits_from_index: index does not fit in k bits");
  return bits;
}

}  // namespace dscm
