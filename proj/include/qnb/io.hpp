#pragma once

// Config ingestion (JSON), classical-noise CSV ingestion with log-log
// interpolation, and deterministic CSV/JSON emission for the CLI.
//
// Angles are degrees in configs and output files, radians internally.
// CSV output: comma separated, '.' decimal separator, LF endings, UTF-8,
// mandatory header row, values at 9 significant digits.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qnb/core.hpp"
#include "qnb/optimize.hpp"
#include "qnb/optomech.hpp"
#include "qnb/probes.hpp"
#include "qnb/squeezer.hpp"

namespace qnb {

// Maps to exit code 2: the config file violates the schema or a value
// constraint. Messages name the offending field path.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Maps to exit code 3: a file could not be read or written.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Maps to exit code 4.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double deg_to_rad(double deg) { return deg * constants::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / constants::pi; }

struct GridSpec {
  double f_min_hz;
  double f_max_hz;
  std::size_t n;
};

struct RunConfig {
  InterferometerConfig interferometer;
  GridSpec grid;
  std::optional<SqueezerConfig> squeezer;
  std::optional<std::string> classical_noise_csv;
  std::optional<std::pair<double, double>> band;  // Hz
  BandWeighting weighting = BandWeighting::flat;
  std::optional<MechanicalOscillator> oscillator;
  std::vector<DecoherenceScenario> scenarios;
  std::optional<double> verify_time_s;
  std::optional<std::string> observed_noise_csv;

  FrequencyGrid make_grid() const { return make_log_grid(grid.f_min_hz, grid.f_max_hz, grid.n); }
};

namespace detail {

inline double require_number(const nlohmann::json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) throw config_error("config error: " + path + "." + key + ": missing");
  if (!obj[key].is_number()) throw config_error("config error: " + path + "." + key + ": must be a number");
  return obj[key].get<double>();
}

inline double require_positive(const nlohmann::json& obj, const std::string& path, const char* key) {
  const double v = require_number(obj, path, key);
  if (!(v > 0.0)) throw config_error("config error: " + path + "." + key + ": must be > 0");
  return v;
}

}  // namespace detail

inline RunConfig parse_run_config(const nlohmann::json& j) {
  using detail::require_number;
  using detail::require_positive;
  RunConfig cfg{};

  if (!j.contains("interferometer") || !j["interferometer"].is_object()) {
    throw config_error("config error: interferometer: missing object");
  }
  const auto& ifo = j["interferometer"];
  cfg.interferometer.mirror_mass_kg = require_positive(ifo, "interferometer", "mirror_mass_kg");
  cfg.interferometer.arm_length_m = require_positive(ifo, "interferometer", "arm_length_m");
  cfg.interferometer.arm_power_w = require_positive(ifo, "interferometer", "arm_power_w");
  cfg.interferometer.laser_frequency_hz = require_positive(ifo, "interferometer", "laser_frequency_hz");
  cfg.interferometer.detector_bandwidth_hz = require_positive(ifo, "interferometer", "detector_bandwidth_hz");

  if (!j.contains("grid") || !j["grid"].is_object()) {
    throw config_error("config error: grid: missing object");
  }
  const auto& grid = j["grid"];
  cfg.grid.f_min_hz = require_positive(grid, "grid", "f_min_hz");
  cfg.grid.f_max_hz = require_positive(grid, "grid", "f_max_hz");
  if (!(cfg.grid.f_max_hz > cfg.grid.f_min_hz)) {
    throw config_error("config error: grid.f_max_hz: must be > grid.f_min_hz");
  }
  const double n = require_number(grid, "grid", "n");
  if (!(n >= 2.0) || n != std::floor(n)) throw config_error("config error: grid.n: must be an integer >= 2");
  cfg.grid.n = static_cast<std::size_t>(n);

  if (j.contains("squeezer")) {
    const auto& sq = j["squeezer"];
    if (!sq.is_object()) throw config_error("config error: squeezer: must be an object");
    SqueezerConfig s{};
    s.generated_db = require_number(sq, "squeezer", "generated_db");
    if (s.generated_db < 0.0) throw config_error("config error: squeezer.generated_db: must be >= 0");
    s.angle_rad = deg_to_rad(require_number(sq, "squeezer", "angle_deg"));
    if (sq.contains("chain")) {
      if (!sq["chain"].is_array()) throw config_error("config error: squeezer.chain: must be an array");
      std::size_t i = 0;
      for (const auto& stage : sq["chain"]) {
        const std::string path = "squeezer.chain[" + std::to_string(i) + "]";
        if (!stage.is_object()) throw config_error("config error: " + path + ": must be an object");
        EfficiencyStage st;
        st.label = stage.contains("label") ? stage["label"].get<std::string>() : "stage" + std::to_string(i);
        st.eta = require_number(stage, path, "eta");
        if (!(st.eta >= 0.0 && st.eta <= 1.0)) {
          throw config_error("config error: " + path + ".eta: must be in [0, 1]");
        }
        s.chain.stages.push_back(std::move(st));
        ++i;
      }
    }
    cfg.squeezer = std::move(s);
  }

  if (j.contains("classical_noise_csv")) {
    if (!j["classical_noise_csv"].is_string()) {
      throw config_error("config error: classical_noise_csv: must be a string path");
    }
    cfg.classical_noise_csv = j["classical_noise_csv"].get<std::string>();
  }
  if (j.contains("observed_noise_csv")) {
    if (!j["observed_noise_csv"].is_string()) {
      throw config_error("config error: observed_noise_csv: must be a string path");
    }
    cfg.observed_noise_csv = j["observed_noise_csv"].get<std::string>();
  }

  if (j.contains("band")) {
    const auto& band = j["band"];
    if (!band.is_object()) throw config_error("config error: band: must be an object");
    const double lo = require_positive(band, "band", "lo_hz");
    const double hi = require_positive(band, "band", "hi_hz");
    if (!(hi >= lo)) throw config_error("config error: band.hi_hz: must be >= band.lo_hz");
    cfg.band = {lo, hi};
  }

  if (j.contains("weighting")) {
    const std::string w = j["weighting"].get<std::string>();
    if (w == "flat") cfg.weighting = BandWeighting::flat;
    else if (w == "inverse_sql") cfg.weighting = BandWeighting::inverse_sql;
    else throw config_error("config error: weighting: must be 'flat' or 'inverse_sql'");
  }

  if (j.contains("oscillator")) {
    const auto& osc = j["oscillator"];
    if (!osc.is_object()) throw config_error("config error: oscillator: must be an object");
    cfg.oscillator = MechanicalOscillator{require_positive(osc, "oscillator", "mass_kg"),
                                          require_positive(osc, "oscillator", "resonance_hz")};
  }

  if (j.contains("decoherence_scenarios")) {
    if (!j["decoherence_scenarios"].is_array()) {
      throw config_error("config error: decoherence_scenarios: must be an array");
    }
    std::size_t i = 0;
    for (const auto& sc : j["decoherence_scenarios"]) {
      const std::string path = "decoherence_scenarios[" + std::to_string(i) + "]";
      if (!sc.is_object() || !sc.contains("label")) {
        throw config_error("config error: " + path + ".label: missing");
      }
      cfg.scenarios.push_back({sc["label"].get<std::string>(), detail::require_positive(sc, path, "tau_s")});
      ++i;
    }
  }

  if (j.contains("verify_time_s")) {
    const double t = j["verify_time_s"].get<double>();
    if (!(t >= 0.0)) throw config_error("config error: verify_time_s: must be >= 0");
    cfg.verify_time_s = t;
  }

  return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("i/o error: cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error("config error: " + path + ": not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

// --- CSV ---------------------------------------------------------------

/// Deterministic 9-significant-digit rendering used in all CSV output.
inline std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
    return out.str();
  }
};

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("i/o error: cannot open for writing: " + path);
  out << content;
  if (!out) throw io_error("i/o error: failed writing: " + path);
}

// Two-column (f_hz, psd_m2_per_hz) spectrum file; a non-numeric first line
// is treated as a header.
struct TabulatedSpectrum {
  std::vector<double> f_hz;
  std::vector<double> psd;
};

inline TabulatedSpectrum read_spectrum_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("i/o error: cannot open spectrum file: " + path);
  TabulatedSpectrum spec;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream row(line);
    double f = 0.0, v = 0.0;
    if (!(row >> f >> v)) {
      if (first) { first = false; continue; }  // header row
      throw config_error("config error: " + path + ": malformed row: " + line);
    }
    first = false;
    if (!spec.f_hz.empty() && !(f > spec.f_hz.back())) {
      throw config_error("config error: " + path + ": frequencies must be strictly increasing");
    }
    if (!(f > 0.0)) throw config_error("config error: " + path + ": frequencies must be > 0");
    spec.f_hz.push_back(f);
    spec.psd.push_back(v);
  }
  if (spec.f_hz.size() < 2) {
    throw config_error("config error: " + path + ": need at least 2 data rows");
  }
  return spec;
}

/// Log-log linear interpolation of a tabulated PSD onto a grid.
/// Extrapolation is refused; zero or negative PSD values are refused
/// (they have no logarithm).
inline std::vector<double> interp_loglog(const TabulatedSpectrum& tab, const FrequencyGrid& grid,
                                         const std::string& field) {
  for (double v : tab.psd) {
    if (!(v > 0.0)) throw config_error("config error: " + field + ": psd values must be > 0 for log-log interpolation");
  }
  if (grid.front() < tab.f_hz.front() || grid.back() > tab.f_hz.back()) {
    throw config_error("config error: " + field + ": tabulated spectrum does not cover the grid (extrapolation forbidden)");
  }
  std::vector<double> out(grid.size());
  std::size_t seg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f = grid[i];
    while (seg + 2 < tab.f_hz.size() && tab.f_hz[seg + 1] < f) ++seg;
    const double x0 = std::log(tab.f_hz[seg]), x1 = std::log(tab.f_hz[seg + 1]);
    const double y0 = std::log(tab.psd[seg]), y1 = std::log(tab.psd[seg + 1]);
    const double t = (std::log(f) - x0) / (x1 - x0);
    out[i] = std::exp(y0 + t * (y1 - y0));
  }
  return out;
}

inline NoiseSpectrum load_classical_noise(const std::string& path, const FrequencyGrid& grid,
                                          const std::string& field) {
  const TabulatedSpectrum tab = read_spectrum_csv(path);
  return NoiseSpectrum(grid, SpectrumComponent::classical, interp_loglog(tab, grid, field));
}

// --- JSON serialization of core types ----------------------------------

inline nlohmann::json grid_to_json(const FrequencyGrid& grid) {
  return nlohmann::json(grid.points());
}

inline FrequencyGrid grid_from_json(const nlohmann::json& j) {
  return FrequencyGrid(j.get<std::vector<double>>());
}

inline nlohmann::json mode_window_to_json(const ModeWindow& w) {
  return nlohmann::json{{"f_center_hz", w.f_center},
                        {"half_bandwidth_hz", w.half_bandwidth},
                        {"t_center_s", w.t_center},
                        {"half_duration_s", w.half_duration}};
}

inline ModeWindow mode_window_from_json(const nlohmann::json& j) {
  return ModeWindow(j.at("f_center_hz").get<double>(), j.at("half_bandwidth_hz").get<double>(),
                    j.at("t_center_s").get<double>(), j.at("half_duration_s").get<double>());
}

}  // namespace qnb
