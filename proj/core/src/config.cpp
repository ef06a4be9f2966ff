#include "dscm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace dscm {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    if (std::isnan(d)) throw std::invalid_argument("");
    return d;
  } catch (...) {
    throw ConfigError("config line " + std::to_string(line) + ": " + key +
                      " expects a finite number, got '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const long long i = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return i;
  } catch (...) {
    throw ConfigError("config line " + std::to_string(line) + ": " + key +
                      " expects an integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config line " + std::to_string(line) + ": " + key +
                    " expects true/false, got '" + v + "'");
}

}  // namespace

void ExperimentConfig::finalize() {
  try {
    if (shaping.e_max == 0)
      shaping.e_max = min_emax(shaping.n, shaping.alphabet, shaping.k);
    shaping.validate();
    tx.validate();
    link.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (frame.n_subcarriers != tx.n_subcarriers)
    throw ConfigError("tx.n_subcarriers must match the frame dimension");
  if (metrics.edge_discard_symbols < 0)
    throw ConfigError("metrics.edge_discard_symbols must be >= 0");
  if (2 * metrics.edge_discard_symbols >= frame.n_slots)
    throw ConfigError("metrics.edge_discard_symbols leaves no symbols to measure");

  const long long amplitudes =
      static_cast<long long>(frame.n_subcarriers) * 2 * 2 * frame.n_slots;
  if (amplitudes % shaping.n != 0)
    throw ConfigError("frame.slots: frame holds " + std::to_string(amplitudes) +
                      " amplitudes, not a multiple of blocklength n=" +
                      std::to_string(shaping.n));
  const long long m = amplitudes / shaping.n;
  for (MappingScheme s : sweep.schemes.empty()
                             ? std::vector<MappingScheme>{MappingScheme::Pairing2D,
                                                          MappingScheme::SuperSymbol4D,
                                                          MappingScheme::MultiDim16D}
                             : sweep.schemes) {
    if (s == MappingScheme::MultiDim16D && tx.n_subcarriers != 4)
      throw ConfigError("16D requires 4 subcarriers");
    const int streams = scheme_streams(s, tx.n_subcarriers);
    if (m % streams != 0)
      throw ConfigError(std::string("frame.slots: ") + std::to_string(m) + " blocks do not " +
                        "divide over the " + std::to_string(streams) + " streams of scheme " +
                        scheme_name(s));
  }
  for (double p : sweep.power_dbm)
    if (!std::isfinite(p)) throw ConfigError("sweep.power_dbm entries must be finite");
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.sweep.power_dbm = {-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  cfg.sweep.schemes = {MappingScheme::Pairing2D, MappingScheme::SuperSymbol4D,
                       MappingScheme::MultiDim16D};
  cfg.sweep.seeds = {1};
  return cfg;
}

ExperimentConfig validate_config(const std::string& text) {
  ExperimentConfig cfg = default_config();

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(line) + ": empty key or value");

    if (key == "shaping.n") {
      cfg.shaping.n = static_cast<int>(parse_int(key, value, line));
    } else if (key == "shaping.k") {
      cfg.shaping.k = static_cast<int>(parse_int(key, value, line));
    } else if (key == "shaping.e_max") {
      cfg.shaping.e_max = parse_int(key, value, line);
    } else if (key == "shaping.alphabet") {
      cfg.shaping.alphabet.clear();
      for (const auto& item : split_list(value))
        cfg.shaping.alphabet.push_back(static_cast<int>(parse_int(key, item, line)));
    } else if (key == "mapping.scheme") {
      try {
        cfg.sweep.schemes = {parse_scheme(value)};
      } catch (const std::invalid_argument& e) {
        throw ConfigError("config line " + std::to_string(line) + ": " + e.what());
      }
    } else if (key == "frame.slots") {
      cfg.frame.n_slots = static_cast<int>(parse_int(key, value, line));
    } else if (key == "tx.symbol_rate_hz") {
      cfg.tx.symbol_rate_hz = parse_double(key, value, line);
    } else if (key == "tx.n_subcarriers") {
      cfg.tx.n_subcarriers = static_cast<int>(parse_int(key, value, line));
      cfg.frame.n_subcarriers = cfg.tx.n_subcarriers;
    } else if (key == "tx.rolloff") {
      cfg.tx.rolloff = parse_double(key, value, line);
    } else if (key == "tx.guard_hz") {
      cfg.tx.guard_hz = parse_double(key, value, line);
    } else if (key == "tx.subcarrier_spacing_mode") {
      if (value == "guard")
        cfg.tx.spacing_mode = TxConfig::SpacingMode::Guard;
      else if (value == "center")
        cfg.tx.spacing_mode = TxConfig::SpacingMode::Center;
      else
        throw ConfigError("config line " + std::to_string(line) +
                          ": tx.subcarrier_spacing_mode expects guard|center");
    } else if (key == "tx.center_spacing_hz") {
      cfg.tx.center_spacing_hz = parse_double(key, value, line);
    } else if (key == "tx.sps") {
      cfg.tx.sps = static_cast<int>(parse_int(key, value, line));
    } else if (key == "tx.rrc_span") {
      cfg.tx.rrc_span = static_cast<int>(parse_int(key, value, line));
    } else if (key == "link.span_km") {
      cfg.link.span_km = parse_double(key, value, line);
    } else if (key == "link.n_spans") {
      cfg.link.n_spans = static_cast<int>(parse_int(key, value, line));
    } else if (key == "link.alpha_db_km") {
      cfg.link.alpha_db_km = parse_double(key, value, line);
    } else if (key == "link.dispersion_ps_nm_km") {
      cfg.link.dispersion_ps_nm_km = parse_double(key, value, line);
    } else if (key == "link.gamma_per_w_km") {
      cfg.link.gamma_per_w_km = parse_double(key, value, line);
    } else if (key == "link.edfa_gain_db") {
      cfg.link.edfa_gain_db = parse_double(key, value, line);
    } else if (key == "link.edfa_nf_db") {
      cfg.link.edfa_nf_db = parse_double(key, value, line);
    } else if (key == "link.steps_per_span") {
      cfg.link.steps_per_span = static_cast<int>(parse_int(key, value, line));
    } else if (key == "link.reference_wavelength_nm") {
      cfg.link.reference_wavelength_nm = parse_double(key, value, line);
    } else if (key == "link.noiseless") {
      cfg.link.noiseless = parse_bool(key, value, line);
    } else if (key == "metrics.estimator") {
      if (value == "mi")
        cfg.metrics.estimator = MiEstimator::SymbolWise;
      else if (value == "gmi")
        cfg.metrics.estimator = MiEstimator::BitMetric;
      else
        throw ConfigError("config line " + std::to_string(line) +
                          ": metrics.estimator expects mi|gmi");
    } else if (key == "metrics.edge_discard_symbols") {
      cfg.metrics.edge_discard_symbols = static_cast<int>(parse_int(key, value, line));
    } else if (key == "sweep.power_dbm") {
      cfg.sweep.power_dbm.clear();
      for (const auto& item : split_list(value))
        cfg.sweep.power_dbm.push_back(parse_double(key, item, line));
    } else if (key == "sweep.schemes") {
      cfg.sweep.schemes.clear();
      for (const auto& item : split_list(value)) {
        try {
          cfg.sweep.schemes.push_back(parse_scheme(item));
        } catch (const std::invalid_argument& e) {
          throw ConfigError("config line " + std::to_string(line) + ": " + e.what());
        }
      }
    } else if (key == "sweep.seeds") {
      cfg.sweep.seeds.clear();
      for (const auto& item : split_list(value))
        cfg.sweep.seeds.push_back(static_cast<std::uint64_t>(parse_int(key, item, line)));
    } else if (key == "output.dir") {
      cfg.output_dir = value;
    } else {
      throw ConfigError("config line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }

  cfg.finalize();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return validate_config(buf.str());
}

void apply_preset(ExperimentConfig& cfg, const std::string& preset) {
  if (preset.empty()) return;
  if (preset == "quick") {
    cfg.frame.n_slots = 2880;
    cfg.link.steps_per_span = 100;
    cfg.sweep.power_dbm = {-2.0, 0.0, 2.0};
  } else if (preset == "paper") {
    cfg.frame.n_slots = 13500;
    cfg.link.steps_per_span = 800;
  } else {
    throw ConfigError("unknown preset '" + preset + "' (expected quick|paper)");
  }
  cfg.finalize();
}

std::string canonical_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "shaping.n=" << cfg.shaping.n << "\nshaping.k=" << cfg.shaping.k
      << "\nshaping.e_max=" << cfg.shaping.e_max << "\nshaping.alphabet=";
  for (std::size_t i = 0; i < cfg.shaping.alphabet.size(); ++i)
    out << (i ? "," : "") << cfg.shaping.alphabet[i];
  out << "\nframe.slots=" << cfg.frame.n_slots
      << "\ntx.n_subcarriers=" << cfg.tx.n_subcarriers
      << "\ntx.symbol_rate_hz=" << cfg.tx.symbol_rate_hz << "\ntx.rolloff=" << cfg.tx.rolloff
      << "\ntx.spacing_mode="
      << (cfg.tx.spacing_mode == TxConfig::SpacingMode::Guard ? "guard" : "center")
      << "\ntx.guard_hz=" << cfg.tx.guard_hz
      << "\ntx.center_spacing_hz=" << cfg.tx.center_spacing_hz << "\ntx.sps=" << cfg.tx.sps
      << "\ntx.rrc_span=" << cfg.tx.rrc_span << "\nlink.span_km=" << cfg.link.span_km
      << "\nlink.n_spans=" << cfg.link.n_spans
      << "\nlink.alpha_db_km=" << cfg.link.alpha_db_km
      << "\nlink.dispersion_ps_nm_km=" << cfg.link.dispersion_ps_nm_km
      << "\nlink.gamma_per_w_km=" << cfg.link.gamma_per_w_km
      << "\nlink.edfa_gain_db=" << cfg.link.edfa_gain_db
      << "\nlink.edfa_nf_db=" << cfg.link.edfa_nf_db
      << "\nlink.steps_per_span=" << cfg.link.steps_per_span
      << "\nlink.reference_wavelength_nm=" << cfg.link.reference_wavelength_nm
      << "\nlink.noiseless=" << (cfg.link.noiseless ? 1 : 0) << "\nmetrics.estimator="
      << (cfg.metrics.estimator == MiEstimator::SymbolWise ? "mi" : "gmi")
      << "\nmetrics.edge_discard_symbols=" << cfg.metrics.edge_discard_symbols
      << "\nsweep.power_dbm=";
  for (std::size_t i = 0; i < cfg.sweep.power_dbm.size(); ++i)
    out << (i ? "," : "") << cfg.sweep.power_dbm[i];
  out << "\nsweep.schemes=";
  for (std::size_t i = 0; i < cfg.sweep.schemes.size(); ++i)
    out << (i ? "," : "") << scheme_name(cfg.sweep.schemes[i]);
  out << "\nsweep.seeds=";
  for (std::size_t i = 0; i < cfg.sweep.seeds.size(); ++i)
    out << (i ? "," : "") << cfg.sweep.seeds[i];
  out << "\n";
  return out.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical_text(cfg)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace dscm
