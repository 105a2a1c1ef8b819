#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "rde/cell.hpp"
#include "rde/grid_world.hpp"
#include "rde/robustness.hpp"

namespace rde {

/// Every edge keeps at least this cost, so discounting can never make a
/// cycle free and the search heuristic stays positive.
inline constexpr double kMinEdgeCost = 0.01;

struct RaStarResult {
  std::vector<Cell> path;  // start through goal, consecutive cells 8-adjacent
  double cost = 0.0;
};

/// A* over the 8-connected grid where stepping onto an interesting cell is
/// discounted: the edge into cell v costs
///   max(kMinEdgeCost, step_length - weight * dist_aoi(belief[v], beta) / 100)
/// so with weight 0 the result is a plain shortest path, and growing weight
/// bends the route through believed areas of interest. The heuristic is
/// kMinEdgeCost * euclidean_distance(v, goal), a lower bound on any
/// remaining cost. Ties in the open list break on the smaller cell index,
/// making the returned path deterministic.
inline RaStarResult ra_star(const GridWorld& world,
                            const std::vector<double>& belief, Cell start,
                            Cell goal, double weight,
                            const RdeParams& params) {
  if (belief.size() != world.size()) {
    throw std::invalid_argument("belief size does not match grid");
  }
  if (weight < 0.0) throw std::invalid_argument("weight must be >= 0");
  const std::size_t start_i = world.index(start);
  const std::size_t goal_i = world.index(goal);

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> g(world.size(), inf);
  std::vector<std::size_t> parent(world.size(), world.size());
  std::vector<std::uint8_t> closed(world.size(), 0);

  struct Entry {
    double f;
    std::size_t idx;
    bool operator>(const Entry& o) const {
      return f != o.f ? f > o.f : idx > o.idx;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const auto heuristic = [&](Cell c) {
    return kMinEdgeCost * euclidean_distance(c, goal);
  };

  g[start_i] = 0.0;
  open.push({heuristic(start), start_i});
  while (!open.empty()) {
    const std::size_t u = open.top().idx;
    open.pop();
    if (closed[u]) continue;
    closed[u] = 1;
    if (u == goal_i) break;
    const Cell cu = world.cell_at(u);
    for (const Cell cv : neighbors(cu, world)) {
      const std::size_t v = world.index(cv);
      if (closed[v]) continue;
      const double len = euclidean_distance(cu, cv);
      const double discount = weight * dist_aoi(belief[v], params.beta) / 100.0;
      const double edge = std::max(kMinEdgeCost, len - discount);
      const double cand = g[u] + edge;
      if (cand < g[v]) {
        g[v] = cand;
        parent[v] = u;
        open.push({cand + heuristic(cv), v});
      }
    }
  }
  if (!closed[goal_i]) {
    throw std::logic_error("goal unreachable");  // cannot happen on a grid
  }

  RaStarResult result;
  result.cost = g[goal_i];
  for (std::size_t i = goal_i;; i = parent[i]) {
    result.path.push_back(world.cell_at(i));
    if (i == start_i) break;
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

}  // namespace rde
