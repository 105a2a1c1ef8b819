#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "rde/cell.hpp"
#include "rde/grid_world.hpp"
#include "rde/mission_state.hpp"
#include "rde/rng.hpp"

namespace rde {

/// Field-of-view sensor. Covers the square of cells within Chebyshev
/// distance `radius` of the vehicle. By default the reading is the exact
/// ground-truth likelihood; a positive noise_amplitude adds a bounded
/// perturbation (uniform in [-amplitude, amplitude], clamped back into
/// [0, 1]) that is a pure function of cell and seed, so repeated sweeps
/// of a cell always agree.
struct SensorModel {
  int radius = 1;
  double noise_amplitude = 0.0;
  std::uint64_t noise_seed = 0;
};

/// Sweeps the sensor footprint at the vehicle's position: any cell not yet
/// sensed gets a belief reading, is marked sensed, and is cached as a
/// future destination when unvisited with belief >= lambda. Returns the
/// newly sensed cells in row-major order; cells sensed earlier are
/// untouched, so a second sweep from the same pose returns nothing.
inline std::vector<Cell> sense(const GridWorld& world, const SensorModel& model,
                               MissionState& state, double lambda) {
  std::vector<Cell> fresh;
  const Cell pos = state.position;
  for (int dy = -model.radius; dy <= model.radius; ++dy) {
    for (int dx = -model.radius; dx <= model.radius; ++dx) {
      const Cell c{pos.x + dx, pos.y + dy};
      if (!world.contains(c)) continue;
      const std::size_t i = world.index(c);
      if (state.sensed[i]) continue;
      double reading = world.likelihood(c);
      if (model.noise_amplitude > 0.0) {
        const double unit =
            static_cast<double>(mix_seed(model.noise_seed, i) >> 11) *
            0x1.0p-53;
        reading += (2.0 * unit - 1.0) * model.noise_amplitude;
        reading = std::clamp(reading, 0.0, 1.0);
      }
      state.belief[i] = reading;
      state.sensed[i] = 1;
      state.maybe_cache(world, c, lambda);
      fresh.push_back(c);
    }
  }
  return fresh;
}

}  // namespace rde
