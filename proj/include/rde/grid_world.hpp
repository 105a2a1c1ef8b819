#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rde/cell.hpp"
#include "rde/rng.hpp"

namespace rde {

/// Rectangular field of ground-truth target likelihoods in [0, 1],
/// stored row-major (index = y * width + x), plus the home cell the
/// vehicle launches from and must return to.
class GridWorld {
 public:
  GridWorld(int width, int height, double fill = 0.0)
      : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
      throw std::invalid_argument("grid dimensions must be positive");
    }
    check_likelihood(fill);
    values_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }

  bool contains(Cell c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }

  std::size_t index(Cell c) const {
    check_cell(c);
    return static_cast<std::size_t>(c.y) * width_ + c.x;
  }

  Cell cell_at(std::size_t index) const {
    if (index >= values_.size()) throw std::out_of_range("cell index");
    return Cell{static_cast<int>(index % width_),
                static_cast<int>(index / width_)};
  }

  double likelihood(Cell c) const { return values_[index(c)]; }

  void set_likelihood(Cell c, double v) {
    check_likelihood(v);
    values_[index(c)] = v;
  }

  const std::vector<double>& values() const { return values_; }

  Cell home() const { return home_; }

  void set_home(Cell c) {
    check_cell(c);
    home_ = c;
  }

  /// Longest straight-line distance across the grid, corner to corner.
  double diagonal() const {
    return euclidean_distance(Cell{0, 0}, Cell{width_ - 1, height_ - 1});
  }

 private:
  void check_cell(Cell c) const {
    if (!contains(c)) {
      throw std::out_of_range("cell (" + std::to_string(c.x) + "," +
                              std::to_string(c.y) + ") outside grid");
    }
  }

  static void check_likelihood(double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("likelihood must be in [0, 1]");
    }
  }

  int width_;
  int height_;
  std::vector<double> values_;
  Cell home_{0, 0};
};

namespace detail {

inline GridWorld parse_csv_map(const std::string& text,
                               const std::string& origin) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        while (used < field.size() &&
               std::isspace(static_cast<unsigned char>(field[used]))) {
          ++used;
        }
        if (used != field.size()) throw std::invalid_argument(field);
        row.push_back(v);
      } catch (const std::exception&) {
        throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                 ": not a number: '" + field + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": ragged row, expected " +
                               std::to_string(rows.front().size()) +
                               " fields, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty()) {
    throw std::runtime_error(origin + ": empty map");
  }
  GridWorld world(static_cast<int>(rows.front().size()),
                  static_cast<int>(rows.size()));
  for (int y = 0; y < world.height(); ++y) {
    for (int x = 0; x < world.width(); ++x) {
      const double v = rows[y][x];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::runtime_error(origin + ": likelihood " + std::to_string(v) +
                                 " at (" + std::to_string(x) + "," +
                                 std::to_string(y) + ") outside [0,1]");
      }
      world.set_likelihood(Cell{x, y}, v);
    }
  }
  return world;
}

// PGM parsing, both ascii (P2) and binary 8-bit (P5); pixel / maxval
// becomes the likelihood.
inline GridWorld parse_pgm_map(const std::string& text,
                               const std::string& origin) {
  std::size_t pos = 0;
  const auto next_token = [&]() -> std::string {
    for (;;) {
      while (pos < text.size() &&
             std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      if (pos < text.size() && text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    const std::size_t start = pos;
    while (pos < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (start == pos) throw std::runtime_error(origin + ": truncated header");
    return text.substr(start, pos - start);
  };
  const auto next_int = [&](const char* what) {
    const std::string tok = next_token();
    try {
      return std::stoi(tok);
    } catch (const std::exception&) {
      throw std::runtime_error(origin + ": bad " + what + " '" + tok + "'");
    }
  };

  const std::string magic = next_token();
  const int width = next_int("width");
  const int height = next_int("height");
  const int maxval = next_int("maxval");
  if (width <= 0 || height <= 0) {
    throw std::runtime_error(origin + ": non-positive dimensions");
  }
  if (maxval <= 0 || maxval > 255) {
    throw std::runtime_error(origin + ": unsupported maxval " +
                             std::to_string(maxval));
  }

  GridWorld world(width, height);
  const std::size_t count = world.size();
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = next_int("pixel");
      if (v < 0 || v > maxval) {
        throw std::runtime_error(origin + ": pixel out of range");
      }
      world.set_likelihood(world.cell_at(i),
                           static_cast<double>(v) / maxval);
    }
  } else {  // P5: exactly one whitespace byte after maxval, then raster
    ++pos;
    if (text.size() - pos < count) {
      throw std::runtime_error(origin + ": truncated pixel data");
    }
    for (std::size_t i = 0; i < count; ++i) {
      const int v = static_cast<unsigned char>(text[pos + i]);
      if (v > maxval) {
        throw std::runtime_error(origin + ": pixel out of range");
      }
      world.set_likelihood(world.cell_at(i),
                           static_cast<double>(v) / maxval);
    }
  }
  return world;
}

}  // namespace detail

/// Loads a likelihood map. The format is detected from the content: a PGM
/// magic number (P2 ascii or P5 binary) selects PGM, anything else is read
/// as CSV with one row per grid row.
inline GridWorld load_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open map file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string origin = path.string();
  if (text.size() >= 2 && text[0] == 'P' &&
      (text[1] == '2' || text[1] == '5')) {
    return detail::parse_pgm_map(text, origin);
  }
  return detail::parse_csv_map(text, origin);
}

/// Writes the map as CSV with full round-trip precision.
inline void save_map_csv(const GridWorld& world,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write map file: " + path.string());
  }
  char field[64];
  for (int y = 0; y < world.height(); ++y) {
    for (int x = 0; x < world.width(); ++x) {
      std::snprintf(field, sizeof field, "%.17g",
                    world.likelihood(Cell{x, y}));
      out << (x ? "," : "") << field;
    }
    out << "\n";
  }
  if (!out.flush()) {
    throw std::runtime_error("failed writing map file: " + path.string());
  }
}

/// Parameters for the synthetic map generator.
struct SyntheticMapSpec {
  int width = 40;
  int height = 40;
  int blobs = 3;
  double radius_min = 1.5;   // blob spread (sigma), in cells
  double radius_max = 3.0;
  double background = 0.05;  // likelihood far from every blob
  double peak_min = 0.9;     // blob amplitude range
  double peak_max = 1.0;
  std::uint64_t seed = 0;
};

/// Scatters Gaussian likelihood blobs over a uniform background. Each blob
/// is truncated at three sigmas, so cells beyond that stay exactly at the
/// background level. Values are clamped to [0, 1]; identical parameters
/// always regenerate the identical map.
inline GridWorld generate_synthetic_map(const SyntheticMapSpec& spec) {
  if (spec.blobs < 0) throw std::invalid_argument("blob count must be >= 0");
  if (!(spec.radius_min > 0.0 && spec.radius_min <= spec.radius_max)) {
    throw std::invalid_argument("blob radius range must satisfy 0 < min <= max");
  }
  if (!(spec.background >= 0.0 && spec.background <= 1.0)) {
    throw std::invalid_argument("background must be in [0, 1]");
  }
  if (!(spec.peak_min > 0.0 && spec.peak_min <= spec.peak_max &&
        spec.peak_max <= 1.0)) {
    throw std::invalid_argument("peak range must satisfy 0 < min <= max <= 1");
  }

  GridWorld world(spec.width, spec.height, spec.background);
  RngHandle rng(spec.seed);
  constexpr double kTruncationSigmas = 3.0;

  struct Blob {
    double cx, cy, sigma, peak;
  };
  std::vector<Blob> blobs;
  blobs.reserve(spec.blobs);
  for (int b = 0; b < spec.blobs; ++b) {
    Blob blob;
    blob.cx = static_cast<double>(rng.bounded(spec.width));
    blob.cy = static_cast<double>(rng.bounded(spec.height));
    blob.sigma = rng.uniform_real(spec.radius_min, spec.radius_max);
    blob.peak = rng.uniform_real(spec.peak_min, spec.peak_max);
    blobs.push_back(blob);
  }

  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      double v = spec.background;
      for (const Blob& blob : blobs) {
        const double dx = x - blob.cx;
        const double dy = y - blob.cy;
        const double d2 = dx * dx + dy * dy;
        const double cutoff = kTruncationSigmas * blob.sigma;
        if (d2 > cutoff * cutoff) continue;
        v += blob.peak * std::exp(-d2 / (2.0 * blob.sigma * blob.sigma));
      }
      world.set_likelihood(Cell{x, y}, std::clamp(v, 0.0, 1.0));
    }
  }
  return world;
}

/// The eight neighbours of a cell that lie inside the grid, in row-major
/// order. The order is part of the contract: sampling code indexes into it.
inline std::vector<Cell> neighbors(Cell c, const GridWorld& world) {
  std::vector<Cell> out;
  out.reserve(8);
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const Cell n{c.x + dx, c.y + dy};
      if (world.contains(n)) out.push_back(n);
    }
  }
  return out;
}

}  // namespace rde
