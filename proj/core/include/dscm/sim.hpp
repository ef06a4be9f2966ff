#ifndef DSCM_SIM_HPP
#define DSCM_SIM_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dscm/config.hpp"
#include "dscm/metrics.hpp"

namespace dscm {

struct SweepRecord {
  std::string scheme;
  double power_dbm = 0.0;
  std::uint64_t seed = 0;
  int subcarrier = 0;  // 1-based
  double gsnr_db = 0.0;
  double mi_bits_per_2d = 0.0;
  double air_n_bits_per_4d = 0.0;
  double rate_loss_bits_per_amp = 0.0;
  double runtime_s = 0.0;
};

extern const char* kSweepCsvHeader;
std::string format_record(const SweepRecord& r);

// Hamming distance between two equal-length bit streams.
long long audit_bits(std::span<const std::uint8_t> tx, std::span<const std::uint8_t> rx);

// Immutable state shared by all points of one experiment: the counting
// trellis, the cached Monte-Carlo amplitude distribution and its rate loss.
struct SimContext {
  explicit SimContext(const ExperimentConfig& cfg);

  ExperimentConfig cfg;
  Trellis trellis;
  std::vector<double> amp_distribution;  // ~1e6 amplitudes, fixed seed
  double rate_loss_bits_per_amp = 0.0;
};

struct PointDiagnostics {
  long long bit_errors = -1;
  long long bits_compared = 0;
  std::uint64_t ase_checksum = 0;
  double nonlinear_phase_rad = 0.0;
  std::vector<cdouble> align_taps;  // per (subcarrier, pol)
};

// Runs the full chain for one (scheme, power, seed): bits -> shaping ->
// mapping -> multiplex -> link -> CDC -> demux -> align -> metrics ->
// decide/demap/deshape bit audit. Returns one record per subcarrier.
// Optional hooks dump the pre-launch waveform / decided frame for debugging.
std::vector<SweepRecord> run_point(const SimContext& ctx, MappingScheme scheme,
                                   double power_dbm, std::uint64_t seed,
                                   PointDiagnostics* diag = nullptr,
                                   const std::string& dump_waveform_path = {},
                                   const std::string& dump_frame_path = {});

struct SweepResult {
  std::string csv_path;
  int points_run = 0;
  int points_skipped = 0;  // already present in the CSV (resume)
};

// Iterates schemes x powers x seeds with a small worker pool, appending
// finished points to <out_dir>/sweep.csv in deterministic order, then
// renders gsnr_vs_power.svg and air_vs_power.svg next to it. jobs <= 0
// picks hardware concurrency; SIM_THREADS caps it.
SweepResult run_sweep(const ExperimentConfig& cfg, const std::string& out_dir, int jobs = 0);

// Re-renders the two charts from an existing sweep CSV.
void plot_sweep_csv(const std::string& csv_path, const std::string& out_dir);

// Binary little-endian interleaved complex64 dump with a JSON sidecar.
void dump_waveform(const Waveform& wf, const std::string& path);

}  // namespace dscm

#endif  // DSCM_SIM_HPP
