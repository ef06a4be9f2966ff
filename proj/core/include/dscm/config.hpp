#ifndef DSCM_CONFIG_HPP
#define DSCM_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dscm/dsp.hpp"
#include "dscm/ess.hpp"
#include "dscm/fiber.hpp"
#include "dscm/mapper.hpp"

namespace dscm {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class MiEstimator { SymbolWise, BitMetric };

struct MetricsConfig {
  MiEstimator estimator = MiEstimator::SymbolWise;
  int edge_discard_symbols = 64;  // trimmed at each end before GSNR/MI
};

struct SweepConfig {
  std::vector<double> power_dbm;  // total channel power, both pols, all subcarriers
  std::vector<MappingScheme> schemes;
  std::vector<std::uint64_t> seeds;
};

// Everything one experiment needs; defaults are the full-scale operating
// point (n=360 shaping over 4 x 10 GBaud subcarriers, 25 x 80 km).
struct ExperimentConfig {
  ShapingConfig shaping;  // e_max 0 = derive minimal bound from (n, k)
  FrameDims frame{4, 13500};
  TxConfig tx;
  LinkConfig link;
  MetricsConfig metrics;
  SweepConfig sweep;
  std::string output_dir = "out";

  // Cross-field checks; fills shaping.e_max when left at 0.
  void finalize();
};

ExperimentConfig default_config();

// Parses the flat dotted-key text format ("key = value", '#' comments,
// comma-separated lists), applies values over the defaults, then finalizes.
// Unknown keys and malformed values raise ConfigError with the line number.
ExperimentConfig validate_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Scale presets: "quick" (2880 slots, 100 steps/span, 3 powers) and
// "paper" (13500 slots, 800 steps/span).
void apply_preset(ExperimentConfig& cfg, const std::string& preset);

// Canonical text form used for provenance hashing.
std::string canonical_text(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace dscm

#endif  // DSCM_CONFIG_HPP
