#ifndef DSCM_MAPPER_HPP
#define DSCM_MAPPER_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dscm/ess.hpp"
#include "dscm/rng.hpp"

namespace dscm {

using cdouble = std::complex<double>;

// How shaped amplitude blocks are laid out over the symbol grid.
//   Pairing2D     - a block feeds one (subcarrier, polarization) stream,
//                   consecutive amplitude pairs become (I, Q) of one slot.
//   SuperSymbol4D - a block feeds one subcarrier, consecutive quadruples
//                   become (X_I, X_Q, Y_I, Y_Q) of one slot.
//   MultiDim16D   - consecutive groups of 16 amplitudes fill one slot across
//                   all four subcarriers and both polarizations.
enum class MappingScheme { Pairing2D, SuperSymbol4D, MultiDim16D };

MappingScheme parse_scheme(const std::string& name);  // "2d" | "4d" | "16d"
const char* scheme_name(MappingScheme scheme);

struct FrameDims {
  int n_subcarriers = 4;
  int n_slots = 13500;
};

// Complex 64-QAM symbol grid indexed by (subcarrier, polarization, slot),
// plus the amplitude-to-field normalization scale.
class SymbolFrame {
 public:
  SymbolFrame(FrameDims dims, double scale);

  int n_subcarriers() const { return dims_.n_subcarriers; }
  int n_slots() const { return dims_.n_slots; }
  FrameDims dims() const { return dims_; }
  double scale() const { return scale_; }

  cdouble& at(int sc, int pol, int slot) {
    return data_[stream_index(sc, pol) * static_cast<std::size_t>(dims_.n_slots) + slot];
  }
  const cdouble& at(int sc, int pol, int slot) const {
    return data_[stream_index(sc, pol) * static_cast<std::size_t>(dims_.n_slots) + slot];
  }
  std::span<const cdouble> stream(int sc, int pol) const {
    return {data_.data() + stream_index(sc, pol) * static_cast<std::size_t>(dims_.n_slots),
            static_cast<std::size_t>(dims_.n_slots)};
  }
  std::span<cdouble> stream(int sc, int pol) {
    return {data_.data() + stream_index(sc, pol) * static_cast<std::size_t>(dims_.n_slots),
            static_cast<std::size_t>(dims_.n_slots)};
  }

  // Mean |symbol|^2 over the whole frame.
  double mean_symbol_power() const;

 private:
  std::size_t stream_index(int sc, int pol) const {
    return static_cast<std::size_t>(sc) * 2 + pol;
  }

  FrameDims dims_;
  double scale_;
  std::vector<cdouble> data_;
};

// Uniform sign bits, one per amplitude: bit 0 -> +1, bit 1 -> -1.
class SignSource {
 public:
  explicit SignSource(std::uint64_t seed) : rng_(seed) {}
  std::uint8_t next_bit() { return rng_.next_bit(); }
  int next_sign() { return next_bit() ? -1 : +1; }

 private:
  Rng rng_;
};

// Number of independent amplitude streams the scheme splits blocks over.
int scheme_streams(MappingScheme scheme, int n_subcarriers);

// Lays out m blocks of shaped amplitudes plus one sign bit per amplitude
// onto the frame. Blocks are assigned to streams round-robin; within a
// stream amplitudes are consumed as one continuous run, so block boundaries
// may fall inside a 16D slot group. The normalization scale is computed from
// the blocks' own empirical distribution so the frame has unit mean symbol
// power. Throws on size or scheme/dimension mismatches.
SymbolFrame map_frame(const std::vector<AmplitudeBlock>& blocks, SignSource& signs,
                      MappingScheme scheme, FrameDims dims);

struct DemapResult {
  std::vector<AmplitudeBlock> blocks;
  std::vector<std::uint8_t> sign_bits;  // in amplitude-stream order
};

// Exact inverse of map_frame on frames whose symbols are on the decision
// grid (noisy frames go through decide_symbols first).
DemapResult demap_frame(const SymbolFrame& frame, MappingScheme scheme,
                        const ShapingConfig& shaping);

// Per-quadrature nearest-level decision onto +/- alphabet * scale.
// Ties break toward the smaller amplitude.
SymbolFrame decide_symbols(const SymbolFrame& received, std::span<const int> alphabet);

// scale = 1/sqrt(2 E[a^2]) so that E[|symbol|^2] = 1 per 2D symbol.
double frame_normalization(std::span<const double> amp_probs, std::span<const int> alphabet);

// Debug dump: one "subcarrier,pol,slot,I,Q" row per symbol.
void dump_frame_csv(const SymbolFrame& frame, std::ostream& out);

}  // namespace dscm

#endif  // DSCM_MAPPER_HPP
