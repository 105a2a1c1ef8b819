#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "rde/experiment/config.hpp"
#include "rde/experiment/metrics.hpp"
#include "rde/experiment/runner.hpp"
#include "rde/grid_world.hpp"
#include "rde/planner.hpp"

using rde::Cell;
using rde::ExperimentConfig;
using rde::GridWorld;
using rde::Trajectory;

namespace {

namespace fs = std::filesystem;

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rde_harness_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  EXPECT_TRUE(in) << p;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TEST(ConfigTest, DefaultsAndOverrides) {
  const ExperimentConfig cfg = rde::parse_config(
      "map = synthetic:blobs=3,seed=7\n"
      "planner = rde\n"
      "trials = 4\n"
      "steps = 500\n"
      "seed = 11\n"
      "# a comment line\n"
      "rho = 40.5   # trailing comment\n"
      "literal_sigma = true\n"
      "\n"
      "out_dir = results\n");
  EXPECT_EQ(cfg.map, "synthetic:blobs=3,seed=7");
  EXPECT_EQ(cfg.planner, "rde");
  EXPECT_EQ(cfg.trials, 4);
  EXPECT_EQ(cfg.steps, 500);
  EXPECT_EQ(cfg.seed, 11u);
  EXPECT_DOUBLE_EQ(cfg.rho, 40.5);
  EXPECT_TRUE(cfg.literal_sigma);
  EXPECT_EQ(cfg.out_dir, "results");
  // Untouched keys keep their defaults.
  EXPECT_DOUBLE_EQ(cfg.beta, 0.5);
  EXPECT_DOUBLE_EQ(cfg.lambda, 0.3);
  EXPECT_EQ(cfg.dwell_limit, 10);
  EXPECT_FALSE(cfg.b_min.has_value());
  EXPECT_EQ(cfg.sensor_radius, 1);
  EXPECT_DOUBLE_EQ(cfg.truth_threshold, 0.7);
  EXPECT_DOUBLE_EQ(cfg.baseline_c, 0.01);
  EXPECT_TRUE(cfg.wants_rde());
  EXPECT_FALSE(cfg.wants_baseline());
}

TEST(ConfigTest, Errors) {
  EXPECT_THROW(rde::parse_config("planner = both\n"), std::invalid_argument);
  EXPECT_THROW(rde::parse_config("map = m.csv\nbogus_key = 1\n"),
               std::invalid_argument);
  EXPECT_THROW(rde::parse_config("map = m.csv\ntrials = zero\n"),
               std::invalid_argument);
  EXPECT_THROW(rde::parse_config("map = m.csv\ntrials = 0\n"),
               std::invalid_argument);
  EXPECT_THROW(rde::parse_config("map = m.csv\nseed 12\n"),
               std::invalid_argument);
  EXPECT_THROW(rde::parse_config("map = m.csv\nseed = 1\nseed = 2\n"),
               std::invalid_argument);
  EXPECT_THROW(rde::parse_config("map = m.csv\nplanner = speedy\n"),
               std::invalid_argument);
  EXPECT_THROW(rde::parse_config("map = m.csv\nliteral_sigma = maybe\n"),
               std::invalid_argument);
  EXPECT_THROW(rde::parse_config("map = m.csv\nprior = 1.5\n"),
               std::invalid_argument);
}

TEST(ConfigTest, ResolveMapSyntheticAndFile) {
  ExperimentConfig cfg;
  cfg.map = "synthetic:width=12,height=9,blobs=2,seed=5,background=0.02";
  const GridWorld synth = rde::resolve_map(cfg);
  EXPECT_EQ(synth.width(), 12);
  EXPECT_EQ(synth.height(), 9);

  rde::SyntheticMapSpec spec;
  spec.width = 12;
  spec.height = 9;
  spec.blobs = 2;
  spec.seed = 5;
  spec.background = 0.02;
  EXPECT_EQ(synth.values(), rde::generate_synthetic_map(spec).values());

  cfg.map = "synthetic:blobs=2,wobble=4";
  EXPECT_THROW(rde::resolve_map(cfg), std::invalid_argument);

  // File paths resolve relative to the config's directory.
  const fs::path dir = temp_dir("cfgmap");
  rde::save_map_csv(GridWorld(3, 2, 0.5), dir / "m.csv");
  std::ofstream(dir / "exp.cfg") << "map = m.csv\n";
  const ExperimentConfig loaded = rde::load_config(dir / "exp.cfg");
  const GridWorld from_file = rde::resolve_map(loaded);
  EXPECT_EQ(from_file.width(), 3);
  EXPECT_DOUBLE_EQ(from_file.likelihood(Cell{2, 1}), 0.5);
}

TEST(MetricsTest, CoverageCurveByHand) {
  GridWorld world(5, 1, 0.0);
  world.set_likelihood(Cell{0, 0}, 0.9);
  world.set_likelihood(Cell{3, 0}, 0.8);
  world.set_likelihood(Cell{4, 0}, 0.75);
  // AoI at threshold 0.7: cells 0, 3, 4.

  Trajectory traj;
  traj.grid_width = 5;
  traj.grid_height = 1;
  traj.rows = {
      {0, Cell{0, 0}, 10.0, 0.0, rde::EventKind::kStart},
      {1, Cell{1, 0}, 9.0, 0.0, rde::EventKind::kMcmcMove},
      {2, Cell{2, 0}, 8.0, 0.0, rde::EventKind::kMcmcMove},
      {3, Cell{3, 0}, 7.0, 0.0, rde::EventKind::kMissionEnd},
  };
  const auto curve = rde::coverage_curve(traj, world, 1, 0.7);
  ASSERT_EQ(curve.size(), 4u);
  // t=0 senses {0,1}: 1 of 3. t=1 adds {2}: still 1. t=2 adds {3}: 2.
  // t=3 adds {4}: all 3.
  EXPECT_DOUBLE_EQ(curve[0], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(curve[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(curve[2], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(curve[3], 1.0);

  GridWorld other(4, 4, 0.0);
  EXPECT_THROW(rde::coverage_curve(traj, other, 1, 0.7),
               std::invalid_argument);

  // No interesting cells: the curve pins to 1.
  GridWorld dull(5, 1, 0.0);
  const auto flat = rde::coverage_curve(traj, dull, 1, 0.7);
  EXPECT_DOUBLE_EQ(flat[0], 1.0);
}

TEST(MetricsTest, HeatmapCountsRows) {
  GridWorld world(3, 3, 0.0);
  Trajectory a;
  a.grid_width = a.grid_height = 3;
  a.rows = {
      {0, Cell{0, 0}, 1, 0, rde::EventKind::kStart},
      {1, Cell{1, 1}, 1, 0, rde::EventKind::kMcmcMove},
      {2, Cell{1, 1}, 1, 0, rde::EventKind::kMissionEnd},
  };
  Trajectory b = a;
  b.rows.push_back({3, Cell{2, 2}, 1, 0, rde::EventKind::kMissionEnd});

  const auto counts = rde::visit_heatmap({a, b}, world);
  EXPECT_EQ(counts[world.index(Cell{0, 0})], 2u);
  EXPECT_EQ(counts[world.index(Cell{1, 1})], 4u);
  EXPECT_EQ(counts[world.index(Cell{2, 2})], 1u);
  EXPECT_EQ(counts[world.index(Cell{0, 1})], 0u);

  Trajectory wrong;
  wrong.grid_width = 2;
  wrong.grid_height = 3;
  EXPECT_THROW(rde::visit_heatmap({wrong}, world), std::invalid_argument);
}

TEST(MetricsTest, MedianAndMean) {
  EXPECT_DOUBLE_EQ(rde::median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(rde::median({4.0, 1.0, 3.0, 2.0}), 2.5);
  EXPECT_DOUBLE_EQ(rde::median({5.0}), 5.0);
  EXPECT_THROW(rde::median({}), std::invalid_argument);
  EXPECT_DOUBLE_EQ(rde::mean({1.0, 2.0, 6.0}), 3.0);
  EXPECT_THROW(rde::mean({}), std::invalid_argument);
}

TEST(RunExperimentTest, WritesAllArtifactsAndPairsTrials) {
  const fs::path out = temp_dir("artifacts");
  ExperimentConfig cfg;
  cfg.map = "synthetic:width=14,height=14,blobs=3,seed=9,background=0.05";
  cfg.planner = "both";
  cfg.trials = 3;
  cfg.steps = 160;
  cfg.seed = 21;
  cfg.lambda = 0.05;
  cfg.tau = 1.0;
  cfg.out_dir = (out / "run").string();

  const rde::CoverageReport report = rde::run_experiment(cfg);

  for (const std::string planner : {"rde", "baseline"}) {
    for (int i = 0; i < cfg.trials; ++i) {
      EXPECT_TRUE(fs::exists(out / "run" /
                             ("trial_" + std::to_string(i) + "_" + planner +
                              ".csv")));
    }
    EXPECT_TRUE(fs::exists(out / "run" / ("coverage_" + planner + ".csv")));
    EXPECT_TRUE(fs::exists(out / "run" / ("heatmap_" + planner + ".csv")));
  }

  ASSERT_TRUE(report.rde.has_value());
  ASSERT_TRUE(report.baseline.has_value());
  EXPECT_EQ(report.rde->trajectories.size(), 3u);
  EXPECT_EQ(report.margins.size(), 3u);
  EXPECT_GE(report.win_fraction, 0.0);
  EXPECT_LE(report.win_fraction, 1.0);

  // Paired trials share the start cell.
  for (int i = 0; i < cfg.trials; ++i) {
    EXPECT_EQ(report.rde->trajectories[i].rows.front().cell,
              report.baseline->trajectories[i].rows.front().cell);
  }

  // Coverage curves are monotone fractions.
  for (const auto& curve : report.rde->curves) {
    for (std::size_t i = 0; i < curve.size(); ++i) {
      EXPECT_GE(curve[i], 0.0);
      EXPECT_LE(curve[i], 1.0);
      if (i) EXPECT_GE(curve[i], curve[i - 1]);
    }
  }

  const auto summary = nlohmann::json::parse(slurp(out / "run" / "summary.json"));
  EXPECT_EQ(summary.at("config").at("trials").get<int>(), 3);
  EXPECT_TRUE(summary.contains("rde"));
  EXPECT_TRUE(summary.contains("baseline"));
  EXPECT_TRUE(summary.contains("comparison"));
  EXPECT_EQ(summary.at("rde").at("final_coverage").size(), 3u);
  // Latency is wall-clock and must stay out of the files.
  EXPECT_EQ(slurp(out / "run" / "summary.json").find("latency"),
            std::string::npos);

  // The coverage CSV has t, one column per trial, and a median column.
  std::istringstream cov(slurp(out / "run" / "coverage_rde.csv"));
  std::string header;
  ASSERT_TRUE(std::getline(cov, header));
  EXPECT_EQ(header, "t,trial_0,trial_1,trial_2,median");

  // Heatmap dimensions match the grid.
  std::istringstream heat(slurp(out / "run" / "heatmap_rde.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(heat, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 13);
  }
  EXPECT_EQ(rows, 14);
}

TEST(RunExperimentTest, ReRunsAreByteIdentical) {
  const fs::path out_a = temp_dir("bytes_a");
  ExperimentConfig cfg;
  cfg.map = "synthetic:width=12,height=12,blobs=2,seed=3,background=0.05";
  cfg.planner = "both";
  cfg.trials = 2;
  cfg.steps = 120;
  cfg.seed = 5;
  cfg.lambda = 0.05;
  cfg.tau = 1.0;

  // Same out_dir value both times so summary.json matches byte for byte;
  // capture the first run's files before the second overwrites them.
  cfg.out_dir = (out_a / "run").string();
  rde::run_experiment(cfg);
  std::map<std::string, std::string> first;
  for (const auto& entry : fs::directory_iterator(out_a / "run")) {
    first[entry.path().filename().string()] = slurp(entry.path());
  }
  fs::remove_all(out_a / "run");
  rde::run_experiment(cfg);
  std::map<std::string, std::string> second;
  for (const auto& entry : fs::directory_iterator(out_a / "run")) {
    second[entry.path().filename().string()] = slurp(entry.path());
  }
  ASSERT_EQ(first.size(), second.size());
  for (const auto& [name, text] : first) {
    ASSERT_TRUE(second.count(name)) << name;
    EXPECT_EQ(text, second.at(name)) << name << " differs between runs";
  }
  EXPECT_TRUE(first.count("summary.json"));
  EXPECT_EQ(first.size(), 2u * 2u + 2u * 2u + 1u);  // trials + aggregates + summary
}

TEST(RunExperimentTest, SinglePlannerSkipsComparison) {
  const fs::path out = temp_dir("solo");
  ExperimentConfig cfg;
  cfg.map = "synthetic:width=10,height=10,blobs=2,seed=4";
  cfg.planner = "baseline";
  cfg.trials = 1;
  cfg.steps = 80;
  cfg.out_dir = (out / "run").string();
  const rde::CoverageReport report = rde::run_experiment(cfg);
  EXPECT_FALSE(report.rde.has_value());
  ASSERT_TRUE(report.baseline.has_value());
  EXPECT_TRUE(report.margins.empty());
  EXPECT_FALSE(fs::exists(out / "run" / "trial_0_rde.csv"));
  const auto summary = nlohmann::json::parse(slurp(out / "run" / "summary.json"));
  EXPECT_FALSE(summary.contains("comparison"));
  EXPECT_FALSE(summary.contains("rde"));
}

}  // namespace
