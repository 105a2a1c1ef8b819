#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rde/cell.hpp"
#include "rde/grid_world.hpp"
#include "rde/planner.hpp"

namespace rde {

/// Ground-truth area of interest: cells whose likelihood reaches the
/// threshold.
inline bool is_aoi(const GridWorld& world, Cell c, double truth_threshold) {
  return world.likelihood(c) >= truth_threshold;
}

inline std::size_t aoi_cell_count(const GridWorld& world,
                                  double truth_threshold) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < world.size(); ++i) {
    if (world.values()[i] >= truth_threshold) ++n;
  }
  return n;
}

/// Replays a trajectory and reports, per time step, the fraction of the
/// ground-truth area of interest inside any sensor footprint so far. A map
/// with no interesting cells yields a curve pinned at 1. The replay only
/// uses the row log, so it works on trajectories read back from disk.
inline std::vector<double> coverage_curve(const Trajectory& traj,
                                          const GridWorld& world,
                                          int sensor_radius,
                                          double truth_threshold) {
  if (traj.grid_width != world.width() || traj.grid_height != world.height()) {
    throw std::invalid_argument("trajectory was recorded on a different grid");
  }
  const std::size_t total = aoi_cell_count(world, truth_threshold);
  std::vector<std::uint8_t> seen(world.size(), 0);
  std::vector<double> curve;
  curve.reserve(traj.rows.size());
  std::size_t covered = 0;
  for (const TrajectoryRow& row : traj.rows) {
    for (int dy = -sensor_radius; dy <= sensor_radius; ++dy) {
      for (int dx = -sensor_radius; dx <= sensor_radius; ++dx) {
        const Cell c{row.cell.x + dx, row.cell.y + dy};
        if (!world.contains(c)) continue;
        const std::size_t i = world.index(c);
        if (seen[i]) continue;
        seen[i] = 1;
        if (world.values()[i] >= truth_threshold) ++covered;
      }
    }
    curve.push_back(total == 0
                        ? 1.0
                        : static_cast<double>(covered) / static_cast<double>(total));
  }
  return curve;
}

/// Per-cell visit counts accumulated over a batch of trajectories; every
/// row contributes one count at its cell. All trajectories must come from
/// the same grid.
inline std::vector<std::uint64_t> visit_heatmap(
    const std::vector<Trajectory>& trajectories, const GridWorld& world) {
  std::vector<std::uint64_t> counts(world.size(), 0);
  for (const Trajectory& traj : trajectories) {
    if (traj.grid_width != world.width() ||
        traj.grid_height != world.height()) {
      throw std::invalid_argument(
          "trajectory was recorded on a different grid");
    }
    for (const TrajectoryRow& row : traj.rows) {
      counts[world.index(row.cell)] += 1;
    }
  }
  return counts;
}

struct LatencyStats {
  std::size_t samples = 0;
  double mean_us = 0.0;
  double p95_us = 0.0;
  double max_us = 0.0;
};

/// Decision latency over a batch of trajectories. Wall-clock derived, so
/// informational only; nothing written to result files may depend on it.
inline LatencyStats latency_stats(const std::vector<Trajectory>& trajectories) {
  std::vector<double> all;
  for (const Trajectory& traj : trajectories) {
    all.insert(all.end(), traj.decision_micros.begin(),
               traj.decision_micros.end());
  }
  LatencyStats stats;
  stats.samples = all.size();
  if (all.empty()) return stats;
  std::sort(all.begin(), all.end());
  double sum = 0.0;
  for (const double v : all) sum += v;
  stats.mean_us = sum / static_cast<double>(all.size());
  const std::size_t rank =
      std::min(all.size() - 1,
               static_cast<std::size_t>(
                   std::ceil(0.95 * static_cast<double>(all.size())) - 1));
  stats.p95_us = all[rank];
  stats.max_us = all.back();
  return stats;
}

/// Median with the even-count convention of averaging the middle pair.
inline double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

inline double mean(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("mean of empty set");
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace rde
