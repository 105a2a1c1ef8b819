#pragma once

#include <chrono>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "rde/cell.hpp"
#include "rde/grid_world.hpp"
#include "rde/mcmc.hpp"
#include "rde/mission_state.hpp"
#include "rde/ra_star.hpp"
#include "rde/robustness.hpp"
#include "rde/sensor.hpp"

namespace rde {

enum class EventKind {
  kStart,         // row 0, before any movement
  kMcmcMove,      // sampled neighbour accepted by the mission gate
  kCachedJump,    // stall resolved by flying to a cached point
  kGoHome,        // stall with an empty cache, or the final return flight
  kFrontierMove,  // greedy baseline leg
  kMissionEnd,    // final row, vehicle back home
};

inline const char* event_name(EventKind k) {
  switch (k) {
    case EventKind::kStart:
      return "start";
    case EventKind::kMcmcMove:
      return "mcmc_move";
    case EventKind::kCachedJump:
      return "cached_jump";
    case EventKind::kGoHome:
      return "go_home";
    case EventKind::kFrontierMove:
      return "frontier_move";
    case EventKind::kMissionEnd:
      return "mission_end";
  }
  return "?";
}

struct TrajectoryRow {
  int t = 0;
  Cell cell;
  double battery = 0.0;
  double robustness = 0.0;  // combined robustness at the cell after sensing
  EventKind event = EventKind::kStart;
};

/// One planning decision. current_robustness is the combined robustness of
/// staying put, evaluated just before the decision; target_robustness is
/// the chosen destination's value at the same instant.
struct PlannerEvent {
  EventKind kind = EventKind::kStart;
  int time = 0;
  Cell target;
  double target_robustness = 0.0;
  double current_robustness = 0.0;
};

struct Trajectory {
  int grid_width = 0;
  int grid_height = 0;
  Cell home;
  std::vector<TrajectoryRow> rows;    // one per time step, rows[0] is the start
  std::vector<PlannerEvent> events;   // one per decision
  std::vector<double> decision_micros;
  int stall_count = 0;                // decisions the sampler failed to resolve
};

struct RunOptions {
  double battery_budget = 0.0;  // flight time available, in time units
  double ra_weight = 0.5;       // interest discount in the path search
  bool literal_sigma = false;   // sampler acceptance variant, see mcmc.hpp
  double prior = 0.0;           // belief assigned to never-sensed cells
  double baseline_c = 0.01;     // distance penalty in the baseline's scoring
};

/// Folds freshly sensed cells into the cache, drops the cell the vehicle
/// now occupies, and advances the dwell counter: standing in a cell whose
/// belief is below lambda counts towards the dwell limit, anything else
/// resets it.
inline void update_cache_and_dwell(const GridWorld& world, MissionState& state,
                                   const std::vector<Cell>& newly_sensed,
                                   const RdeParams& params) {
  for (const Cell c : newly_sensed) state.maybe_cache(world, c, params.lambda);
  state.uncache(state.position);
  if (state.belief_at(world, state.position) < params.lambda) {
    ++state.dwell;
  } else {
    state.dwell = 0;
  }
}

/// Removes and returns the most promising cached point: highest estimated
/// likelihood, ties broken by smaller distance from the current position,
/// then by row-major order, so the choice never depends on insertion order.
/// Throws when the cache is empty.
inline CachedPoint pop_cached_point(MissionState& state) {
  if (state.cache.empty()) {
    throw std::logic_error("pop_cached_point on an empty cache");
  }
  std::size_t best = 0;
  double best_d = euclidean_distance(state.position, state.cache[0].cell);
  for (std::size_t i = 1; i < state.cache.size(); ++i) {
    const CachedPoint& p = state.cache[i];
    const double d = euclidean_distance(state.position, p.cell);
    const CachedPoint& b = state.cache[best];
    const bool better =
        p.likelihood > b.likelihood ||
        (p.likelihood == b.likelihood &&
         (d < best_d ||
          (d == best_d &&
           (p.cell.y < b.cell.y ||
            (p.cell.y == b.cell.y && p.cell.x < b.cell.x)))));
    if (better) {
      best = i;
      best_d = d;
    }
  }
  const CachedPoint out = state.cache[best];
  state.cache.erase(state.cache.begin() + static_cast<std::ptrdiff_t>(best));
  return out;
}

namespace detail {

/// Flies the planned path one cell at a time, sensing and recording a row
/// per step. With the guard enabled, a step is refused (returning false,
/// vehicle left where it was) as soon as taking it could leave less than
/// the reserve plus the flight time home; legs that are themselves the
/// final return run unguarded, which is safe because the guard invariant
/// "battery >= b_min + time home" is maintained at every accepted step.
inline bool fly_leg(const GridWorld& world, const RdeParams& params,
                    const SensorModel& sensor, MissionState& state,
                    Trajectory& traj, Cell target, double weight,
                    EventKind kind, bool guarded) {
  const RaStarResult leg =
      ra_star(world, state.belief, state.position, target, weight, params);
  for (std::size_t i = 1; i < leg.path.size(); ++i) {
    const Cell next = leg.path[i];
    const double cost = euclidean_distance(state.position, next) / params.speed;
    if (guarded) {
      const double needed_after =
          params.b_min + octile_distance(next, world.home()) / params.speed;
      if (state.battery - cost < needed_after - 1e-9) return false;
    }
    state.battery -= cost;
    state.position = next;
    state.time += 1;
    state.visited[world.index(next)] = 1;
    const std::vector<Cell> fresh = sense(world, sensor, state, params.lambda);
    update_cache_and_dwell(world, state, fresh, params);
    traj.rows.push_back({state.time, next, state.battery,
                         combined_robustness(world, state, params, next),
                         kind});
  }
  return true;
}

inline double micros_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::micro>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

/// Stamps the end of the mission: the last row (the arrival at home, or the
/// start row when the vehicle never moved) becomes the mission_end row and
/// a matching event is appended.
inline void finish_mission(const GridWorld& world, const RdeParams& params,
                           const MissionState& state, Trajectory& traj) {
  traj.rows.back().event = EventKind::kMissionEnd;
  const double r = combined_robustness(world, state, params, state.position);
  traj.events.push_back(
      {EventKind::kMissionEnd, state.time, state.position, r, r});
}

inline Trajectory start_trajectory(const GridWorld& world,
                                   const RdeParams& params,
                                   const SensorModel& sensor,
                                   MissionState& state) {
  Trajectory traj;
  traj.grid_width = world.width();
  traj.grid_height = world.height();
  traj.home = world.home();
  const std::vector<Cell> fresh = sense(world, sensor, state, params.lambda);
  update_cache_and_dwell(world, state, fresh, params);
  const double r = combined_robustness(world, state, params, state.position);
  traj.rows.push_back(
      {0, state.position, state.battery, r, EventKind::kStart});
  traj.events.push_back(
      {EventKind::kStart, 0, state.position, r, r});
  return traj;
}

}  // namespace detail

/// Robustness-driven exploration. Each decision samples up to alpha
/// neighbour proposals through the Metropolis step and takes the first one
/// the mission gate lets through: the move must either clear the
/// satisfaction threshold rho or strictly improve on staying put. A
/// decision where no proposal passes is a stall, resolved by flying to the
/// nearest cached point, or home when the cache is empty, which ends the
/// mission. The battery guard can cut any exploration leg short and turn
/// it into the final return.
inline Trajectory rde_run(const GridWorld& world, const RdeParams& params,
                          const SensorModel& sensor, RngHandle& rng,
                          const RunOptions& opts) {
  params.validate();
  MissionState state =
      MissionState::initial(world, opts.battery_budget, opts.prior);
  Trajectory traj = detail::start_trajectory(world, params, sensor, state);
  const auto f = [&](Cell c) {
    return combined_robustness(world, state, params, c);
  };

  for (;;) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Cell> neigh = neighbors(state.position, world);
    const double f_cur = f(state.position);

    Cell chosen;
    EventKind kind = EventKind::kGoHome;
    double f_target = 0.0;
    bool have_move = false;
    for (int attempt = 0; attempt < params.alpha && !have_move; ++attempt) {
      const Cell s = mcmc_step(state.position, f, neigh,
                               McmcOptions{params.tau, opts.literal_sigma},
                               rng);
      if (s == state.position) continue;
      const double fs = f(s);
      if (fs > params.rho || fs > f_cur) {
        chosen = s;
        kind = EventKind::kMcmcMove;
        f_target = fs;
        have_move = true;
      }
    }

    bool terminal = false;
    if (!have_move) {
      ++traj.stall_count;
      if (!state.cache.empty()) {
        const CachedPoint cp = pop_cached_point(state);
        chosen = cp.cell;
        kind = EventKind::kCachedJump;
        f_target = f(cp.cell);
      } else {
        chosen = world.home();
        kind = EventKind::kGoHome;
        f_target = f(world.home());
        terminal = true;
      }
    }
    traj.decision_micros.push_back(detail::micros_since(t0));
    traj.events.push_back({kind, state.time, chosen, f_target, f_cur});

    const double w = kind == EventKind::kGoHome ? 0.0 : opts.ra_weight;
    const bool completed = detail::fly_leg(world, params, sensor, state, traj,
                                           chosen, w, kind, !terminal);
    if (!completed) {
      terminal = true;
      detail::fly_leg(world, params, sensor, state, traj, world.home(), 0.0,
                      EventKind::kGoHome, false);
    }
    if (terminal) {
      detail::finish_mission(world, params, state, traj);
      return traj;
    }
  }
}

/// Greedy frontier baseline. A frontier cell is sensed, unvisited, and has
/// at least one in-grid 8-neighbour still unsensed. Each decision flies a
/// shortest path to the frontier cell maximising belief minus baseline_c
/// times its distance (ties: nearer first, then smaller row-major
/// position); the mission ends when no frontier remains or the battery
/// guard forces the return.
inline Trajectory baseline_run(const GridWorld& world, const RdeParams& params,
                               const SensorModel& sensor,
                               [[maybe_unused]] RngHandle& rng,
                               const RunOptions& opts) {
  params.validate();
  MissionState state =
      MissionState::initial(world, opts.battery_budget, opts.prior);
  Trajectory traj = detail::start_trajectory(world, params, sensor, state);

  for (;;) {
    const auto t0 = std::chrono::steady_clock::now();
    bool found = false;
    Cell target;
    double target_score = 0.0;
    double target_dist = 0.0;
    for (std::size_t i = 0; i < world.size(); ++i) {
      if (!state.sensed[i] || state.visited[i]) continue;
      const Cell c = world.cell_at(i);
      bool frontier = false;
      for (const Cell n : neighbors(c, world)) {
        if (!state.sensed[world.index(n)]) {
          frontier = true;
          break;
        }
      }
      if (!frontier) continue;
      const double d = euclidean_distance(state.position, c);
      const double score = state.belief[i] - opts.baseline_c * d;
      // Row-major scan order settles exact ties in favour of earlier cells.
      if (!found || score > target_score ||
          (score == target_score && d < target_dist)) {
        found = true;
        target = c;
        target_score = score;
        target_dist = d;
      }
    }

    bool terminal = false;
    EventKind kind = EventKind::kFrontierMove;
    if (!found) {
      target = world.home();
      kind = EventKind::kGoHome;
      terminal = true;
    }
    traj.decision_micros.push_back(detail::micros_since(t0));
    traj.events.push_back(
        {kind, state.time, target,
         combined_robustness(world, state, params, target),
         combined_robustness(world, state, params, state.position)});

    const bool completed = detail::fly_leg(world, params, sensor, state, traj,
                                           target, 0.0, kind, !terminal);
    if (!completed) {
      terminal = true;
      detail::fly_leg(world, params, sensor, state, traj, world.home(), 0.0,
                      EventKind::kGoHome, false);
    }
    if (terminal) {
      detail::finish_mission(world, params, state, traj);
      return traj;
    }
  }
}

/// Writes the row log in the trial CSV layout: t,x,y,battery,robustness,event.
inline void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "t,x,y,battery,robustness,event\n";
  char buf[128];
  for (const TrajectoryRow& row : traj.rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%.6f,%.6f,%s", row.t, row.cell.x,
                  row.cell.y, row.battery, row.robustness,
                  event_name(row.event));
    out << buf << "\n";
  }
}

}  // namespace rde
