#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rde/experiment/config.hpp"
#include "rde/experiment/metrics.hpp"
#include "rde/grid_world.hpp"
#include "rde/planner.hpp"
#include "rde/rng.hpp"
#include "rde/sensor.hpp"

namespace rde {

/// Results for one planner across all trials of an experiment.
struct PlannerOutcome {
  std::string name;
  std::vector<Trajectory> trajectories;
  std::vector<std::vector<double>> curves;  // coverage per trial
  std::vector<double> final_coverage;
  std::vector<std::uint64_t> heatmap;
  LatencyStats latency;

  double median_final() const { return median(final_coverage); }
  double mean_final() const { return mean(final_coverage); }
};

/// Everything run_experiment produces, plus the paired comparison when both
/// planners ran. Latency numbers live only here and on stdout; the files
/// written to out_dir are pure functions of the config.
struct CoverageReport {
  ExperimentConfig config;
  int map_width = 0;
  int map_height = 0;
  std::size_t aoi_cells = 0;
  std::optional<PlannerOutcome> rde;
  std::optional<PlannerOutcome> baseline;

  // Paired, shared-seed margins: (rde - baseline) / baseline per trial.
  std::vector<double> margins;
  double win_fraction = 0.0;
  double median_margin = 0.0;
};

namespace detail {

// Sub-stream tags so start cells and planner randomness never share draws.
inline constexpr std::uint64_t kStartStream = 0x5354u;
inline constexpr std::uint64_t kPlannerStream = 0x504Cu;

inline void write_file(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw std::runtime_error("failed writing " + path.string());
}

inline std::string format_fraction(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

inline std::string coverage_csv(const PlannerOutcome& outcome) {
  std::string text = "t";
  for (std::size_t i = 0; i < outcome.curves.size(); ++i) {
    text += ",trial_" + std::to_string(i);
  }
  text += ",median\n";
  std::size_t rows = 0;
  for (const auto& curve : outcome.curves) {
    rows = std::max(rows, curve.size());
  }
  for (std::size_t t = 0; t < rows; ++t) {
    text += std::to_string(t);
    std::vector<double> at;
    at.reserve(outcome.curves.size());
    for (const auto& curve : outcome.curves) {
      // A finished mission holds its final coverage.
      const double v = t < curve.size() ? curve[t] : curve.back();
      at.push_back(v);
      text += "," + format_fraction(v);
    }
    text += "," + format_fraction(median(at));
    text += "\n";
  }
  return text;
}

inline std::string heatmap_csv(const std::vector<std::uint64_t>& counts,
                               int width, int height) {
  std::string text;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (x) text += ",";
      text += std::to_string(counts[static_cast<std::size_t>(y) * width + x]);
    }
    text += "\n";
  }
  return text;
}

inline nlohmann::ordered_json planner_json(const PlannerOutcome& outcome) {
  nlohmann::ordered_json j;
  j["trials"] = outcome.trajectories.size();
  j["median_final_coverage"] = outcome.median_final();
  j["mean_final_coverage"] = outcome.mean_final();
  j["final_coverage"] = outcome.final_coverage;
  std::vector<std::size_t> steps, decisions, stalls;
  for (const Trajectory& traj : outcome.trajectories) {
    steps.push_back(traj.rows.size() - 1);
    decisions.push_back(traj.decision_micros.size());
    stalls.push_back(static_cast<std::size_t>(traj.stall_count));
  }
  j["steps"] = steps;
  j["decisions"] = decisions;
  j["stalls"] = stalls;
  return j;
}

}  // namespace detail

/// Runs the configured trials and writes, per planner, one trajectory CSV
/// per trial plus aggregate coverage and heatmap CSVs, and a summary.json
/// covering everything. Trial i draws its start cell from the experiment
/// seed plus i; with planner=both the two planners share that start cell
/// and the same planner seed, which makes the per-trial comparison paired.
/// Identical configs produce byte-identical files.
inline CoverageReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  CoverageReport report;
  report.config = cfg;

  const GridWorld base_world = resolve_map(cfg);
  report.map_width = base_world.width();
  report.map_height = base_world.height();
  report.aoi_cells = aoi_cell_count(base_world, cfg.truth_threshold);
  const RdeParams params = cfg.params(base_world);
  const RunOptions opts = cfg.run_options();
  const SensorModel sensor{cfg.sensor_radius};

  const std::filesystem::path out_dir = cfg.out_dir;
  std::filesystem::create_directories(out_dir);

  if (cfg.wants_rde()) report.rde.emplace().name = "rde";
  if (cfg.wants_baseline()) report.baseline.emplace().name = "baseline";

  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(trial);
    RngHandle start_rng(mix_seed(trial_seed, detail::kStartStream));
    const Cell start{
        static_cast<int>(start_rng.bounded(base_world.width())),
        static_cast<int>(start_rng.bounded(base_world.height()))};

    GridWorld world = base_world;
    world.set_home(start);

    const auto run_one = [&](PlannerOutcome& outcome, bool is_rde) {
      RngHandle rng(mix_seed(trial_seed, detail::kPlannerStream));
      Trajectory traj = is_rde
                            ? rde_run(world, params, sensor, rng, opts)
                            : baseline_run(world, params, sensor, rng, opts);
      std::ostringstream csv;
      write_trajectory_csv(traj, csv);
      detail::write_file(out_dir / ("trial_" + std::to_string(trial) + "_" +
                                    outcome.name + ".csv"),
                         csv.str());
      std::vector<double> curve =
          coverage_curve(traj, world, cfg.sensor_radius, cfg.truth_threshold);
      outcome.final_coverage.push_back(curve.back());
      outcome.curves.push_back(std::move(curve));
      outcome.trajectories.push_back(std::move(traj));
    };

    if (report.rde) run_one(*report.rde, true);
    if (report.baseline) run_one(*report.baseline, false);
  }

  for (PlannerOutcome* outcome :
       {report.rde ? &*report.rde : nullptr,
        report.baseline ? &*report.baseline : nullptr}) {
    if (!outcome) continue;
    outcome->heatmap = visit_heatmap(outcome->trajectories, base_world);
    outcome->latency = latency_stats(outcome->trajectories);
    detail::write_file(out_dir / ("coverage_" + outcome->name + ".csv"),
                       detail::coverage_csv(*outcome));
    detail::write_file(out_dir / ("heatmap_" + outcome->name + ".csv"),
                       detail::heatmap_csv(outcome->heatmap,
                                           base_world.width(),
                                           base_world.height()));
  }

  nlohmann::ordered_json summary;
  summary["config"] = {
      {"map", cfg.map},
      {"planner", cfg.planner},
      {"trials", cfg.trials},
      {"steps", cfg.steps},
      {"seed", cfg.seed},
      {"beta", cfg.beta},
      {"lambda", cfg.lambda},
      {"rho", cfg.rho},
      {"dwell_limit", cfg.dwell_limit},
      {"b_min", params.b_min},
      {"speed", cfg.speed},
      {"tau", cfg.tau},
      {"alpha", cfg.alpha},
      {"ra_weight", cfg.ra_weight},
      {"sensor_radius", cfg.sensor_radius},
      {"prior", cfg.prior},
      {"truth_threshold", cfg.truth_threshold},
      {"out_dir", cfg.out_dir},
      {"literal_sigma", cfg.literal_sigma},
      {"baseline_c", cfg.baseline_c},
  };
  summary["map_summary"] = {
      {"width", report.map_width},
      {"height", report.map_height},
      {"aoi_cells", report.aoi_cells},
  };
  if (report.rde) summary["rde"] = detail::planner_json(*report.rde);
  if (report.baseline) {
    summary["baseline"] = detail::planner_json(*report.baseline);
  }

  if (report.rde && report.baseline) {
    std::size_t wins = 0;
    for (int i = 0; i < cfg.trials; ++i) {
      const double r = report.rde->final_coverage[i];
      const double b = report.baseline->final_coverage[i];
      if (r > b) ++wins;
      double margin;
      if (b > 0.0) {
        margin = (r - b) / b;
      } else {
        margin = r > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
      }
      report.margins.push_back(margin);
    }
    report.win_fraction =
        static_cast<double>(wins) / static_cast<double>(cfg.trials);
    report.median_margin = median(report.margins);
    summary["comparison"] = {
        {"wins", wins},
        {"win_fraction", report.win_fraction},
        {"median_margin", report.median_margin},
    };
  }

  detail::write_file(out_dir / "summary.json", summary.dump(2) + "\n");
  return report;
}

}  // namespace rde
