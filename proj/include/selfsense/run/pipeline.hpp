#pragma once

#include <map>
#include <vector>

#include "selfsense/judge/aggregate.hpp"
#include "selfsense/run/config.hpp"
#include "selfsense/sem/data.hpp"

namespace selfsense::run {

/// Stable addressing inside runs/<id>/.
struct RunPaths {
  std::filesystem::path root;

  std::filesystem::path config_json() const { return root / "config.json"; }
  std::filesystem::path world_json() const { return root / "world.json"; }
  std::filesystem::path packets() const { return root / "packets.jsonl"; }
  std::filesystem::path trajectory() const { return root / "trajectory.jsonl"; }
  std::filesystem::path transcript() const { return root / "transcript.jsonl"; }
  std::filesystem::path scores() const { return root / "scores.jsonl"; }
  std::filesystem::path images_dir() const { return root / "images"; }
  std::filesystem::path report_dir() const { return root / "report"; }
};

/// The six experimental conditions: complete sensing plus the single-input
/// ablations.
const std::vector<std::pair<std::string, AblationMask>>& ablation_conditions();

/// World + trajectory + packets only (no model in the loop).
RunPaths simulate_run(const ExperimentConfig& config);

/// The full prediction-memory loop; writes packets, transcript and images.
RunPaths execute_run(const ExperimentConfig& config);

/// Scores an existing run's predictions into scores.jsonl.
void judge_run(const RunPaths& paths, const agent::BackendConfig& judge_backend);

/// Per-run report: summary table plus the four per-iteration score series.
void write_reports(const RunPaths& paths);

/// Runs, judges and reports every ablation condition; returns condition ->
/// run paths in execution order.
std::vector<std::pair<std::string, RunPaths>> run_ablation_study(
    const ExperimentConfig& base);

/// Condition x dimension table (mean, sd) plus radar-plot data.
void write_ablation_report(const std::vector<std::pair<std::string, RunPaths>>& runs,
                           const std::filesystem::path& out_dir);

std::vector<judge::JudgeScore> load_scores(const RunPaths& paths);

/// Assembles the SEM design matrix across scored runs: four rubric scores,
/// the two binary presence flags and the four kinematic scalars from the
/// packets (planar magnitudes, orientation as yaw), continuous columns
/// z-scored. Runs whose odometry or IMU were ablated are skipped (those
/// columns would be empty); lidar ablation is irrelevant here.
sem::SemData build_sem_dataset(const std::vector<RunPaths>& runs);

/// Run directories under a root that carry scores.
std::vector<RunPaths> discover_runs(const std::filesystem::path& root);

}  // namespace selfsense::run
