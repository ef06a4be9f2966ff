#include "dscm/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace dscm {

MappingScheme parse_scheme(const std::string& name) {
  if (name == "2d") return MappingScheme::Pairing2D;
  if (name == "4d") return MappingScheme::SuperSymbol4D;
  if (name == "16d") return MappingScheme::MultiDim16D;
  throw std::invalid_argument("mapping.scheme must be one of 2d, 4d, 16d (got '" + name + "')");
}

const char* scheme_name(MappingScheme scheme) {
  switch (scheme) {
    case MappingScheme::Pairing2D: return "2d";
    case MappingScheme::SuperSymbol4D: return "4d";
    case MappingScheme::MultiDim16D: return "16d";
  }
  return "?";
}

int scheme_streams(MappingScheme scheme, int n_subcarriers) {
  switch (scheme) {
    case MappingScheme::Pairing2D: return n_subcarriers * 2;
    case MappingScheme::SuperSymbol4D: return n_subcarriers;
    case MappingScheme::MultiDim16D: return 1;
  }
  return 0;
}

SymbolFrame::SymbolFrame(FrameDims dims, double scale) : dims_(dims), scale_(scale) {
  if (dims.n_subcarriers < 1 || dims.n_slots < 1)
    throw std::invalid_argument("frame dims must be positive");
  if (!(scale > 0.0)) throw std::invalid_argument("frame scale must be > 0");
  data_.assign(static_cast<std::size_t>(dims.n_subcarriers) * 2 * dims.n_slots, cdouble(0.0));
}

double SymbolFrame::mean_symbol_power() const {
  double acc = 0.0;
  for (const cdouble& s : data_) acc += std::norm(s);
  return acc / static_cast<double>(data_.size());
}

namespace {

struct QuadPos {
  int sc, pol, slot, quad;  // quad: 0 = I, 1 = Q
};

// Shared geometry of map/demap: global amplitude index -> grid position.
class StreamLayout {
 public:
  StreamLayout(MappingScheme scheme, FrameDims dims, int block_n, long long n_blocks)
      : scheme_(scheme), dims_(dims), block_n_(block_n), n_blocks_(n_blocks) {
    if (scheme == MappingScheme::MultiDim16D && dims.n_subcarriers != 4)
      throw std::invalid_argument("16D mapping requires exactly 4 subcarriers");
    streams_ = scheme_streams(scheme, dims.n_subcarriers);
    const long long want =
        static_cast<long long>(dims.n_subcarriers) * 2 * 2 * dims.n_slots;
    if (n_blocks * block_n != want)
      throw std::invalid_argument("mapper: blocks hold " + std::to_string(n_blocks * block_n) +
                                  " amplitudes but the frame needs " + std::to_string(want));
    if (n_blocks % streams_ != 0)
      throw std::invalid_argument("mapper: block count must divide evenly over " +
                                  std::to_string(streams_) + " streams");
  }

  long long total_amplitudes() const { return n_blocks_ * block_n_; }

  QuadPos position(long long g) const {
    const long long b = g / block_n_;     // block index
    const long long p = g % block_n_;     // position within block
    const int s = static_cast<int>(b % streams_);
    const long long o = (b / streams_) * block_n_ + p;  // offset in the stream's run
    switch (scheme_) {
      case MappingScheme::Pairing2D:
        return {s / 2, s % 2, static_cast<int>(o / 2), static_cast<int>(o % 2)};
      case MappingScheme::SuperSymbol4D: {
        const int r = static_cast<int>(o % 4);
        return {s, r / 2, static_cast<int>(o / 4), r % 2};
      }
      case MappingScheme::MultiDim16D: {
        const int r = static_cast<int>(o % 16);
        return {r / 4, (r % 4) / 2, static_cast<int>(o / 16), r % 2};
      }
    }
    throw std::logic_error("unknown scheme");
  }

 private:
  MappingScheme scheme_;
  FrameDims dims_;
  int block_n_;
  long long n_blocks_;
  int streams_;
};

void set_quad(cdouble& symbol, int quad, double value) {
  if (quad == 0)
    symbol = cdouble(value, symbol.imag());
  else
    symbol = cdouble(symbol.real(), value);
}

double get_quad(const cdouble& symbol, int quad) {
  return quad == 0 ? symbol.real() : symbol.imag();
}

}  // namespace

SymbolFrame map_frame(const std::vector<AmplitudeBlock>& blocks, SignSource& signs,
                      MappingScheme scheme, FrameDims dims) {
  if (blocks.empty()) throw std::invalid_argument("map_frame: no blocks");
  const int n = static_cast<int>(blocks.front().amplitudes.size());
  for (const auto& b : blocks)
    if (static_cast<int>(b.amplitudes.size()) != n)
      throw std::invalid_argument("map_frame: blocks have unequal length");

  const StreamLayout layout(scheme, dims, n, static_cast<long long>(blocks.size()));

  double second_moment = 0.0;
  for (const auto& b : blocks)
    second_moment += static_cast<double>(b.energy());
  second_moment /= static_cast<double>(layout.total_amplitudes());
  const double scale = 1.0 / std::sqrt(2.0 * second_moment);

  SymbolFrame frame(dims, scale);
  for (long long g = 0; g < layout.total_amplitudes(); ++g) {
    const int a = blocks[static_cast<std::size_t>(g / n)].amplitudes[static_cast<std::size_t>(g % n)];
    const QuadPos pos = layout.position(g);
    set_quad(frame.at(pos.sc, pos.pol, pos.slot), pos.quad, signs.next_sign() * a * scale);
  }
  return frame;
}

DemapResult demap_frame(const SymbolFrame& frame, MappingScheme scheme,
                        const ShapingConfig& shaping) {
  const long long total =
      static_cast<long long>(frame.n_subcarriers()) * 2 * 2 * frame.n_slots();
  if (total % shaping.n != 0)
    throw std::invalid_argument("demap_frame: frame size not a multiple of the blocklength");
  const long long m = total / shaping.n;
  const StreamLayout layout(scheme, frame.dims(), shaping.n, m);

  DemapResult out;
  out.blocks.assign(static_cast<std::size_t>(m), AmplitudeBlock{});
  for (auto& b : out.blocks) b.amplitudes.reserve(shaping.n);
  out.sign_bits.reserve(static_cast<std::size_t>(total));

  const double inv_scale = 1.0 / frame.scale();
  for (long long g = 0; g < total; ++g) {
    const QuadPos pos = layout.position(g);
    const double v = get_quad(frame.at(pos.sc, pos.pol, pos.slot), pos.quad);
    // Nearest alphabet level; the frame is expected to sit on the grid.
    const double mag = std::abs(v) * inv_scale;
    int best = shaping.alphabet.front();
    double best_d = std::abs(mag - best);
    for (int a : shaping.alphabet) {
      const double d = std::abs(mag - a);
      if (d < best_d) {
        best = a;
        best_d = d;
      }
    }
    out.blocks[static_cast<std::size_t>(g / shaping.n)].amplitudes.push_back(best);
    out.sign_bits.push_back(v < 0.0 ? 1 : 0);
  }
  return out;
}

SymbolFrame decide_symbols(const SymbolFrame& received, std::span<const int> alphabet) {
  SymbolFrame out(received.dims(), received.scale());
  const double scale = received.scale();
  auto decide = [&](double v) {
    const double mag = std::abs(v) / scale;
    int best = alphabet.front();
    double best_d = std::abs(mag - best);
    for (int a : alphabet) {
      const double d = std::abs(mag - a);
      if (d < best_d) {  // strict: ties stay with the smaller level
        best = a;
        best_d = d;
      }
    }
    return (v < 0.0 ? -1.0 : 1.0) * best * scale;
  };
  for (int sc = 0; sc < received.n_subcarriers(); ++sc)
    for (int pol = 0; pol < 2; ++pol)
      for (int t = 0; t < received.n_slots(); ++t) {
        const cdouble& r = received.at(sc, pol, t);
        out.at(sc, pol, t) = cdouble(decide(r.real()), decide(r.imag()));
      }
  return out;
}

double frame_normalization(std::span<const double> amp_probs, std::span<const int> alphabet) {
  if (amp_probs.size() != alphabet.size())
    throw std::invalid_argument("frame_normalization: distribution/alphabet size mismatch");
  double e2 = 0.0;
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    e2 += amp_probs[i] * alphabet[i] * alphabet[i];
  if (!(e2 > 0.0)) throw std::invalid_argument("frame_normalization: degenerate distribution");
  return 1.0 / std::sqrt(2.0 * e2);
}

void dump_frame_csv(const SymbolFrame& frame, std::ostream& out) {
  out << "subcarrier,pol,slot,I,Q\n";
  for (int sc = 0; sc < frame.n_subcarriers(); ++sc)
    for (int pol = 0; pol < 2; ++pol)
      for (int t = 0; t < frame.n_slots(); ++t) {
        const cdouble& s = frame.at(sc, pol, t);
        out << (sc + 1) << ',' << (pol == 0 ? 'X' : 'Y') << ',' << t << ','
            << s.real() << ',' << s.imag() << '\n';
      }
}

}  // namespace dscm
