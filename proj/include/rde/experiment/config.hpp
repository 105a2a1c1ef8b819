#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rde/grid_world.hpp"
#include "rde/planner.hpp"
#include "rde/robustness.hpp"

namespace rde {

/// One experiment: a map, a planner selection, and every parameter the run
/// depends on. Parsed from key=value text; unset keys keep the defaults
/// below, except b_min which falls back to twice the map diagonal over the
/// speed once the map is known.
struct ExperimentConfig {
  std::string map;                 // file path or "synthetic:k=v,..."
  std::string planner = "both";    // rde | baseline | both
  int trials = 1;
  int steps = 2000;                // battery budget, in time units
  std::uint64_t seed = 0;
  double beta = 0.5;
  double lambda = 0.3;
  double rho = 38.0;
  int dwell_limit = 10;
  std::optional<double> b_min;     // empty: derive from the map
  double speed = 1.0;
  double tau = 0.1;
  int alpha = 16;
  double ra_weight = 0.5;
  int sensor_radius = 1;
  double prior = 0.0;
  double truth_threshold = 0.7;
  std::string out_dir = "out";
  bool literal_sigma = false;
  double baseline_c = 0.01;

  std::filesystem::path base_dir;  // directory the config file lives in

  bool wants_rde() const { return planner == "rde" || planner == "both"; }
  bool wants_baseline() const {
    return planner == "baseline" || planner == "both";
  }

  RdeParams params(const GridWorld& world) const {
    RdeParams p;
    p.beta = beta;
    p.lambda = lambda;
    p.rho = rho;
    p.dwell_limit = dwell_limit;
    p.b_min = b_min ? *b_min : default_b_min(world, speed);
    p.speed = speed;
    p.tau = tau;
    p.alpha = alpha;
    p.validate();
    return p;
  }

  RunOptions run_options() const {
    RunOptions o;
    o.battery_budget = static_cast<double>(steps);
    o.ra_weight = ra_weight;
    o.literal_sigma = literal_sigma;
    o.prior = prior;
    o.baseline_c = baseline_c;
    return o;
  }

  void validate() const {
    if (map.empty()) throw std::invalid_argument("config: 'map' is required");
    if (planner != "rde" && planner != "baseline" && planner != "both") {
      throw std::invalid_argument(
          "config: planner must be rde, baseline or both");
    }
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (steps < 1) throw std::invalid_argument("config: steps must be >= 1");
    if (sensor_radius < 0) {
      throw std::invalid_argument("config: sensor_radius must be >= 0");
    }
    if (!(prior >= 0.0 && prior <= 1.0)) {
      throw std::invalid_argument("config: prior must be in [0, 1]");
    }
    if (!(truth_threshold >= 0.0 && truth_threshold <= 1.0)) {
      throw std::invalid_argument("config: truth_threshold must be in [0, 1]");
    }
    if (b_min && *b_min < 0.0) {
      throw std::invalid_argument("config: b_min must be >= 0");
    }
    if (ra_weight < 0.0) {
      throw std::invalid_argument("config: ra_weight must be >= 0");
    }
    if (out_dir.empty()) {
      throw std::invalid_argument("config: out_dir is required");
    }
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": '" +
                                value + "'");
  }
}

inline long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" +
                                value + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": '" +
                              value + "'");
}

}  // namespace detail

/// Parses key=value configuration text. '#' starts a comment, blank lines
/// are skipped, keys may appear at most once and unknown keys are errors.
inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
    }
    seen.push_back(key);

    if (key == "map") {
      cfg.map = value;
    } else if (key == "planner") {
      cfg.planner = value;
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "steps") {
      cfg.steps = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(detail::parse_int(key, value));
    } else if (key == "beta") {
      cfg.beta = detail::parse_double(key, value);
    } else if (key == "lambda") {
      cfg.lambda = detail::parse_double(key, value);
    } else if (key == "rho") {
      cfg.rho = detail::parse_double(key, value);
    } else if (key == "dwell_limit") {
      cfg.dwell_limit = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "b_min") {
      cfg.b_min = detail::parse_double(key, value);
    } else if (key == "speed") {
      cfg.speed = detail::parse_double(key, value);
    } else if (key == "tau") {
      cfg.tau = detail::parse_double(key, value);
    } else if (key == "alpha") {
      cfg.alpha = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "ra_weight") {
      cfg.ra_weight = detail::parse_double(key, value);
    } else if (key == "sensor_radius") {
      cfg.sensor_radius = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "prior") {
      cfg.prior = detail::parse_double(key, value);
    } else if (key == "truth_threshold") {
      cfg.truth_threshold = detail::parse_double(key, value);
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else if (key == "literal_sigma") {
      cfg.literal_sigma = detail::parse_bool(key, value);
    } else if (key == "baseline_c") {
      cfg.baseline_c = detail::parse_double(key, value);
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg = parse_config(buf.str());
  cfg.base_dir = path.parent_path();
  return cfg;
}

/// Builds the world a config names: either "synthetic:" followed by
/// comma-separated generator parameters (width, height, blobs, seed,
/// background, radius_min, radius_max, peak_min, peak_max), or a map file
/// path, resolved against the config's directory when relative.
inline GridWorld resolve_map(const ExperimentConfig& cfg) {
  constexpr std::string_view kPrefix = "synthetic:";
  if (cfg.map.rfind(kPrefix, 0) == 0) {
    SyntheticMapSpec spec;
    const std::string args = cfg.map.substr(kPrefix.size());
    std::istringstream in(args);
    std::string item;
    while (std::getline(in, item, ',')) {
      item = detail::trim(item);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("synthetic map: expected k=v, got '" +
                                    item + "'");
      }
      const std::string key = detail::trim(item.substr(0, eq));
      const std::string value = detail::trim(item.substr(eq + 1));
      if (key == "width") {
        spec.width = static_cast<int>(detail::parse_int(key, value));
      } else if (key == "height") {
        spec.height = static_cast<int>(detail::parse_int(key, value));
      } else if (key == "blobs") {
        spec.blobs = static_cast<int>(detail::parse_int(key, value));
      } else if (key == "seed") {
        spec.seed = static_cast<std::uint64_t>(detail::parse_int(key, value));
      } else if (key == "background") {
        spec.background = detail::parse_double(key, value);
      } else if (key == "radius_min") {
        spec.radius_min = detail::parse_double(key, value);
      } else if (key == "radius_max") {
        spec.radius_max = detail::parse_double(key, value);
      } else if (key == "peak_min") {
        spec.peak_min = detail::parse_double(key, value);
      } else if (key == "peak_max") {
        spec.peak_max = detail::parse_double(key, value);
      } else {
        throw std::invalid_argument("synthetic map: unknown key '" + key +
                                    "'");
      }
    }
    return generate_synthetic_map(spec);
  }
  std::filesystem::path p = cfg.map;
  if (p.is_relative() && !cfg.base_dir.empty()) p = cfg.base_dir / p;
  return load_map(p);
}

}  // namespace rde
