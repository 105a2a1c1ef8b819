#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "rde/cell.hpp"
#include "rde/grid_world.hpp"
#include "rde/mission_state.hpp"

namespace rde {

/// Mission parameters shared by the robustness functions, the sampler and
/// the planner.
struct RdeParams {
  double beta = 0.5;     // belief level above which a cell counts as interesting
  double lambda = 0.3;   // belief level worth caching / resetting dwell
  double rho = 38.0;     // robustness a move must clear to count as satisfying
  int dwell_limit = 10;  // tolerated consecutive low-interest decisions
  double b_min = 0.0;    // battery reserve to still hold when back home
  double speed = 1.0;    // cells per time step
  double tau = 0.1;      // sampler temperature
  int alpha = 16;        // proposals per decision before declaring a stall

  void validate() const {
    if (!(beta >= 0.0 && beta <= 1.0)) {
      throw std::invalid_argument("beta must be in [0, 1]");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      throw std::invalid_argument("lambda must be in [0, 1]");
    }
    if (dwell_limit < 1) {
      throw std::invalid_argument("dwell_limit must be >= 1");
    }
    if (!(b_min >= 0.0)) throw std::invalid_argument("b_min must be >= 0");
    if (!(speed > 0.0)) throw std::invalid_argument("speed must be > 0");
    if (!(tau >= 0.0)) throw std::invalid_argument("tau must be >= 0");
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
  }
};

/// Default battery reserve: enough to cross the grid twice at the given
/// speed, measured corner to corner.
inline double default_b_min(const GridWorld& world, double speed) {
  return 2.0 * world.diagonal() / speed;
}

/// How far a belief value sits above the interest threshold, rescaled to
/// percentage points. Zero when the cell is uninteresting.
inline double dist_aoi(double belief, double beta) {
  return belief > beta ? (belief - beta) * 100.0 : 0.0;
}

/// Battery margin at `cell`: what would remain beyond the reserve after
/// flying straight home from there. Zero once the margin is used up.
inline double depth_battery(Cell cell, Cell home, double battery, double b_min,
                            double speed) {
  const double margin = (battery - b_min) - euclidean_distance(cell, home) / speed;
  return margin > 0.0 ? margin : 0.0;
}

/// "Always keep enough battery": over the one-step horizon of a candidate
/// move this reduces to the battery margin at the candidate.
inline double safety_rob(const GridWorld& world, const MissionState& state,
                         const RdeParams& params, Cell candidate) {
  return depth_battery(candidate, world.home(), state.battery, params.b_min,
                       params.speed);
}

/// "Eventually reach an interesting cell": over the one-step horizon this
/// is the candidate's interest margin under the current belief.
inline double liveness_rob(const GridWorld& world, const MissionState& state,
                           const RdeParams& params, Cell candidate) {
  return dist_aoi(state.belief_at(world, candidate), params.beta);
}

/// "Don't dwell in dead ground": vacuous until the dwell counter hits its
/// limit, then requires interest either here or at the candidate.
inline double conditional_rob(const GridWorld& world, const MissionState& state,
                              const RdeParams& params, Cell candidate) {
  if (state.dwell < params.dwell_limit) {
    return std::numeric_limits<double>::infinity();
  }
  return std::max(dist_aoi(state.belief_at(world, state.position), params.beta),
                  dist_aoi(state.belief_at(world, candidate), params.beta));
}

/// Conjunction of the three mission clauses, i.e. their minimum.
inline double combined_robustness(const GridWorld& world,
                                  const MissionState& state,
                                  const RdeParams& params, Cell candidate) {
  const double safety = safety_rob(world, state, params, candidate);
  const double liveness = liveness_rob(world, state, params, candidate);
  const double conditional = conditional_rob(world, state, params, candidate);
  return std::min(std::min(safety, liveness), conditional);
}

}  // namespace rde
