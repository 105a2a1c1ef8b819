#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "rde/cell.hpp"
#include "rde/grid_world.hpp"
#include "rde/mission_state.hpp"
#include "rde/rng.hpp"
#include "rde/sensor.hpp"

using rde::Cell;
using rde::GridWorld;
using rde::MissionState;
using rde::SensorModel;
using rde::SyntheticMapSpec;

namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rde_grid_world_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

TEST(CellTest, Distances) {
  EXPECT_DOUBLE_EQ(euclidean_distance(Cell{0, 0}, Cell{3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(euclidean_distance(Cell{2, 2}, Cell{2, 2}), 0.0);
  EXPECT_DOUBLE_EQ(octile_distance(Cell{0, 0}, Cell{5, 0}), 5.0);
  EXPECT_DOUBLE_EQ(octile_distance(Cell{0, 0}, Cell{3, 3}),
                   3.0 * std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(octile_distance(Cell{0, 0}, Cell{5, 2}),
                   3.0 + 2.0 * std::sqrt(2.0));

  rde::RngHandle rng(5);
  for (int i = 0; i < 200; ++i) {
    const Cell a{static_cast<int>(rng.bounded(30)),
                 static_cast<int>(rng.bounded(30))};
    const Cell b{static_cast<int>(rng.bounded(30)),
                 static_cast<int>(rng.bounded(30))};
    EXPECT_GE(octile_distance(a, b) + 1e-12, euclidean_distance(a, b));
  }

  EXPECT_TRUE(adjacent8(Cell{1, 1}, Cell{2, 2}));
  EXPECT_TRUE(adjacent8(Cell{1, 1}, Cell{1, 0}));
  EXPECT_FALSE(adjacent8(Cell{1, 1}, Cell{1, 1}));
  EXPECT_FALSE(adjacent8(Cell{1, 1}, Cell{3, 1}));
}

TEST(GridWorldTest, IndexingAndBounds) {
  GridWorld world(4, 3, 0.25);
  EXPECT_EQ(world.width(), 4);
  EXPECT_EQ(world.height(), 3);
  EXPECT_EQ(world.size(), 12u);
  EXPECT_EQ(world.index(Cell{0, 0}), 0u);
  EXPECT_EQ(world.index(Cell{3, 0}), 3u);
  EXPECT_EQ(world.index(Cell{0, 1}), 4u);  // row-major
  EXPECT_EQ(world.index(Cell{2, 2}), 10u);
  EXPECT_EQ(world.cell_at(10), (Cell{2, 2}));
  EXPECT_DOUBLE_EQ(world.likelihood(Cell{1, 1}), 0.25);

  EXPECT_FALSE(world.contains(Cell{4, 0}));
  EXPECT_FALSE(world.contains(Cell{0, -1}));
  EXPECT_THROW(world.likelihood(Cell{4, 0}), std::out_of_range);
  EXPECT_THROW(world.set_likelihood(Cell{0, 0}, 1.5), std::invalid_argument);
  EXPECT_THROW(world.set_home(Cell{-1, 0}), std::out_of_range);
  EXPECT_THROW(GridWorld(0, 5), std::invalid_argument);
  EXPECT_THROW(GridWorld(5, 5, -0.1), std::invalid_argument);

  world.set_home(Cell{3, 2});
  EXPECT_EQ(world.home(), (Cell{3, 2}));
  EXPECT_DOUBLE_EQ(world.diagonal(), euclidean_distance(Cell{0, 0}, Cell{3, 2}));
}

TEST(GridWorldTest, NeighborsAreRowMajorAndClipped) {
  GridWorld world(3, 3);
  const auto mid = neighbors(Cell{1, 1}, world);
  const std::vector<Cell> expected = {{0, 0}, {1, 0}, {2, 0}, {0, 1},
                                      {2, 1}, {0, 2}, {1, 2}, {2, 2}};
  EXPECT_EQ(mid, expected);
  EXPECT_EQ(neighbors(Cell{0, 0}, world),
            (std::vector<Cell>{{1, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(neighbors(Cell{2, 1}, world).size(), 5u);
}

TEST(MapIoTest, CsvRoundTrip) {
  GridWorld world(5, 4);
  rde::RngHandle rng(11);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 5; ++x) {
      world.set_likelihood(Cell{x, y}, rng.uniform_real());
    }
  }
  const fs::path p = temp_file("round_trip.csv");
  save_map_csv(world, p);
  const GridWorld loaded = rde::load_map(p);
  ASSERT_EQ(loaded.width(), 5);
  ASSERT_EQ(loaded.height(), 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 5; ++x) {
      EXPECT_EQ(loaded.likelihood(Cell{x, y}), world.likelihood(Cell{x, y}));
    }
  }
}

TEST(MapIoTest, CsvErrors) {
  const fs::path ragged = temp_file("ragged.csv");
  write_text(ragged, "0.1,0.2\n0.3\n");
  EXPECT_THROW(rde::load_map(ragged), std::runtime_error);

  const fs::path out_of_range = temp_file("range.csv");
  write_text(out_of_range, "0.1,1.2\n");
  EXPECT_THROW(rde::load_map(out_of_range), std::runtime_error);

  const fs::path garbage = temp_file("garbage.csv");
  write_text(garbage, "0.1,zebra\n");
  EXPECT_THROW(rde::load_map(garbage), std::runtime_error);

  const fs::path empty = temp_file("empty.csv");
  write_text(empty, "\n  \n");
  EXPECT_THROW(rde::load_map(empty), std::runtime_error);

  EXPECT_THROW(rde::load_map(temp_file("missing.csv")), std::runtime_error);
}

TEST(MapIoTest, PgmAsciiAndBinary) {
  const fs::path ascii = temp_file("map.p2.pgm");
  write_text(ascii,
             "P2\n# tiny test image\n3 2\n100\n0 50 100\n100 50 0\n");
  const GridWorld a = rde::load_map(ascii);
  ASSERT_EQ(a.width(), 3);
  ASSERT_EQ(a.height(), 2);
  EXPECT_DOUBLE_EQ(a.likelihood(Cell{0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(a.likelihood(Cell{1, 0}), 0.5);
  EXPECT_DOUBLE_EQ(a.likelihood(Cell{2, 0}), 1.0);
  EXPECT_DOUBLE_EQ(a.likelihood(Cell{0, 1}), 1.0);

  const fs::path binary = temp_file("map.p5.pgm");
  std::string raw = "P5\n2 2\n255\n";
  raw.push_back(static_cast<char>(0));
  raw.push_back(static_cast<char>(127));
  raw.push_back(static_cast<char>(255));
  raw.push_back(static_cast<char>(51));
  write_text(binary, raw);
  const GridWorld b = rde::load_map(binary);
  ASSERT_EQ(b.width(), 2);
  EXPECT_DOUBLE_EQ(b.likelihood(Cell{0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(b.likelihood(Cell{1, 0}), 127.0 / 255.0);
  EXPECT_DOUBLE_EQ(b.likelihood(Cell{0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(b.likelihood(Cell{1, 1}), 0.2);

  const fs::path truncated = temp_file("trunc.pgm");
  write_text(truncated, "P5\n4 4\n255\nxx");
  EXPECT_THROW(rde::load_map(truncated), std::runtime_error);

  const fs::path deep = temp_file("deep.pgm");
  write_text(deep, "P2\n1 1\n65535\n1000\n");
  EXPECT_THROW(rde::load_map(deep), std::runtime_error);
}

TEST(SyntheticMapTest, DeterministicAndShaped) {
  SyntheticMapSpec spec;
  spec.width = 40;
  spec.height = 40;
  spec.blobs = 3;
  spec.background = 0.05;
  spec.seed = 7;

  const GridWorld a = generate_synthetic_map(spec);
  const GridWorld b = generate_synthetic_map(spec);
  EXPECT_EQ(a.values(), b.values());

  double max_v = 0.0;
  std::size_t at_background = 0;
  for (const double v : a.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    max_v = std::max(max_v, v);
    if (v == spec.background) ++at_background;
  }
  EXPECT_GE(max_v, 0.9);  // a blob peak sits on or near a cell centre
  // Blobs are truncated, so most of a 40x40 map is exactly background.
  EXPECT_GT(at_background, a.size() / 2);

  SyntheticMapSpec other = spec;
  other.seed = 8;
  EXPECT_NE(generate_synthetic_map(other).values(), a.values());

  SyntheticMapSpec flat = spec;
  flat.blobs = 0;
  const GridWorld f = generate_synthetic_map(flat);
  for (const double v : f.values()) EXPECT_DOUBLE_EQ(v, 0.05);

  SyntheticMapSpec bad = spec;
  bad.radius_min = 0.0;
  EXPECT_THROW(generate_synthetic_map(bad), std::invalid_argument);
  bad = spec;
  bad.background = 1.5;
  EXPECT_THROW(generate_synthetic_map(bad), std::invalid_argument);
}

TEST(MissionStateTest, InitialAndCache) {
  GridWorld world(6, 6, 0.0);
  world.set_home(Cell{2, 3});
  MissionState state = MissionState::initial(world, 100.0, 0.1);
  EXPECT_EQ(state.position, (Cell{2, 3}));
  EXPECT_DOUBLE_EQ(state.battery, 100.0);
  EXPECT_EQ(state.time, 0);
  EXPECT_TRUE(state.is_visited(world, Cell{2, 3}));
  EXPECT_FALSE(state.is_sensed(world, Cell{2, 3}));
  EXPECT_DOUBLE_EQ(state.belief_at(world, Cell{0, 0}), 0.1);

  state.belief[world.index(Cell{4, 4})] = 0.6;
  state.maybe_cache(world, Cell{4, 4}, 0.3);
  state.maybe_cache(world, Cell{4, 4}, 0.3);  // idempotent
  ASSERT_EQ(state.cache.size(), 1u);
  EXPECT_EQ(state.cache[0].cell, (Cell{4, 4}));
  EXPECT_DOUBLE_EQ(state.cache[0].likelihood, 0.6);

  state.maybe_cache(world, Cell{0, 0}, 0.3);  // belief 0.1 < lambda
  EXPECT_EQ(state.cache.size(), 1u);
  state.maybe_cache(world, Cell{2, 3}, 0.05);  // visited
  EXPECT_EQ(state.cache.size(), 1u);

  state.uncache(Cell{4, 4});
  EXPECT_TRUE(state.cache.empty());
  state.uncache(Cell{4, 4});  // absent: no-op

  EXPECT_THROW(MissionState::initial(world, -1.0), std::invalid_argument);
  EXPECT_THROW(MissionState::initial(world, 1.0, 2.0), std::invalid_argument);
}

TEST(SensorTest, SweepMarksFootprintOnce) {
  GridWorld world(5, 5, 0.0);
  world.set_likelihood(Cell{1, 1}, 0.8);
  world.set_likelihood(Cell{2, 2}, 0.4);
  world.set_home(Cell{1, 1});
  MissionState state = MissionState::initial(world, 50.0);
  const SensorModel sensor{1};

  const auto fresh = sense(world, sensor, state, 0.3);
  ASSERT_EQ(fresh.size(), 9u);
  EXPECT_EQ(fresh.front(), (Cell{0, 0}));  // row-major sweep
  EXPECT_EQ(fresh.back(), (Cell{2, 2}));
  EXPECT_TRUE(state.is_sensed(world, Cell{2, 2}));
  EXPECT_DOUBLE_EQ(state.belief_at(world, Cell{1, 1}), 0.8);
  EXPECT_DOUBLE_EQ(state.belief_at(world, Cell{2, 2}), 0.4);

  // Home is visited, so only the unvisited interesting cell is cached.
  ASSERT_EQ(state.cache.size(), 1u);
  EXPECT_EQ(state.cache[0].cell, (Cell{2, 2}));

  EXPECT_TRUE(sense(world, sensor, state, 0.3).empty());

  // Border clipping: a corner sweep covers only the in-grid quarter.
  MissionState corner = MissionState::initial(world, 50.0);
  corner.position = Cell{0, 0};
  EXPECT_EQ(sense(world, sensor, corner, 0.3).size(), 4u);

  // Radius 0 senses just the occupied cell.
  MissionState narrow = MissionState::initial(world, 50.0);
  EXPECT_EQ(sense(world, SensorModel{0}, narrow, 0.3).size(), 1u);
}

TEST(SensorTest, NoiseIsBoundedSeededAndRepeatable) {
  GridWorld world(3, 3, 0.5);
  SensorModel noisy{1, 0.1, 42};

  MissionState s1 = MissionState::initial(world, 10.0);
  s1.position = Cell{1, 1};
  sense(world, noisy, s1, 0.9);

  MissionState s2 = MissionState::initial(world, 10.0);
  s2.position = Cell{1, 1};
  sense(world, noisy, s2, 0.9);

  bool any_perturbed = false;
  for (std::size_t i = 0; i < world.size(); ++i) {
    EXPECT_EQ(s1.belief[i], s2.belief[i]);
    EXPECT_GE(s1.belief[i], 0.4 - 1e-12);
    EXPECT_LE(s1.belief[i], 0.6 + 1e-12);
    if (s1.belief[i] != 0.5) any_perturbed = true;
  }
  EXPECT_TRUE(any_perturbed);

  SensorModel reseeded{1, 0.1, 43};
  MissionState s3 = MissionState::initial(world, 10.0);
  s3.position = Cell{1, 1};
  sense(world, reseeded, s3, 0.9);
  EXPECT_NE(s1.belief, s3.belief);
}

}  // namespace
