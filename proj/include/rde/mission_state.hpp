#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rde/cell.hpp"
#include "rde/grid_world.hpp"

namespace rde {

/// A sensed cell remembered as a fallback destination.
struct CachedPoint {
  Cell cell;
  double likelihood = 0.0;
};

/// Everything the vehicle knows and has done so far: its pose, battery and
/// clock, the per-cell belief built from sensor sweeps, and the cache of
/// promising sensed-but-unvisited cells. Belief entries hold the prior
/// until the cell is first sensed.
struct MissionState {
  Cell position{0, 0};
  double battery = 0.0;
  int time = 0;
  int dwell = 0;  // consecutive decisions spent in low-likelihood cells

  std::vector<double> belief;
  std::vector<std::uint8_t> sensed;
  std::vector<std::uint8_t> visited;
  std::vector<CachedPoint> cache;

  static MissionState initial(const GridWorld& world, double battery_budget,
                              double prior = 0.0) {
    if (battery_budget < 0.0) {
      throw std::invalid_argument("battery budget must be >= 0");
    }
    if (!(prior >= 0.0 && prior <= 1.0)) {
      throw std::invalid_argument("belief prior must be in [0, 1]");
    }
    MissionState s;
    s.position = world.home();
    s.battery = battery_budget;
    s.belief.assign(world.size(), prior);
    s.sensed.assign(world.size(), 0);
    s.visited.assign(world.size(), 0);
    s.visited[world.index(world.home())] = 1;
    return s;
  }

  bool is_sensed(const GridWorld& world, Cell c) const {
    return sensed[world.index(c)] != 0;
  }
  bool is_visited(const GridWorld& world, Cell c) const {
    return visited[world.index(c)] != 0;
  }
  double belief_at(const GridWorld& world, Cell c) const {
    return belief[world.index(c)];
  }

  /// Appends the cell to the cache unless it is already there, already
  /// visited, or its believed likelihood falls below lambda. Safe to call
  /// repeatedly for the same cell.
  void maybe_cache(const GridWorld& world, Cell c, double lambda) {
    const std::size_t i = world.index(c);
    if (visited[i] || belief[i] < lambda) return;
    for (const CachedPoint& p : cache) {
      if (p.cell == c) return;
    }
    cache.push_back(CachedPoint{c, belief[i]});
  }

  /// Drops the cell from the cache if present (it stops being a useful
  /// destination once occupied).
  void uncache(Cell c) {
    for (std::size_t i = 0; i < cache.size(); ++i) {
      if (cache[i].cell == c) {
        cache.erase(cache.begin() + static_cast<std::ptrdiff_t>(i));
        return;
      }
    }
  }
};

}  // namespace rde
