// Command-line front end: simulate / run / judge / ablate / sem / report.

#include <CLI11.hpp>
#include <iostream>
#include <nlohmann/json.hpp>

#include "selfsense/run/pipeline.hpp"
#include "selfsense/sem/report.hpp"

namespace {

using selfsense::run::ExperimentConfig;
using selfsense::run::RunPaths;

struct CommonFlags {
  std::string config_file;
  std::uint64_t seed = 7;
  int iterations = 60;
  std::string out_dir = "runs";
  std::string id;
  std::string backend = "mock";
  std::string judge_backend = "mock";
  std::string world_file;
  std::vector<std::string> ablate;
  double packet_hz = 1.0;
  std::string image_mode = "reference";
  bool no_images = false;
  std::string endpoint;
  std::string model;
  std::string transcript;
  std::string api_key_env = "MODEL_API_KEY";
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_file, "JSON config file (flags override it)");
  cmd->add_option("--seed", flags.seed, "experiment seed");
  cmd->add_option("-n,--iterations", flags.iterations, "iterations (packets) per run");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--id", flags.id, "run id (derived from seed when empty)");
  cmd->add_option("--backend", flags.backend, "agent backend: mock | live | replay");
  cmd->add_option("--judge-backend", flags.judge_backend,
                  "judge backend: mock | live");
  cmd->add_option("--world", flags.world_file, "world JSON file");
  cmd->add_option("--ablate", flags.ablate,
                  "inputs to withhold: memory camera odometry lidar imu");
  cmd->add_option("--packet-hz", flags.packet_hz, "packet rate (default 1 Hz)");
  cmd->add_option("--image-mode", flags.image_mode, "reference | base64");
  cmd->add_flag("--no-images", flags.no_images, "skip writing PNG files");
  cmd->add_option("--endpoint", flags.endpoint, "live backend endpoint URL");
  cmd->add_option("--model", flags.model, "live backend model name");
  cmd->add_option("--transcript", flags.transcript, "replay transcript path");
  cmd->add_option("--api-key-env", flags.api_key_env,
                  "environment variable holding the API key");
}

ExperimentConfig build_config(const CommonFlags& flags, const CLI::App* cmd) {
  ExperimentConfig cfg;
  if (!flags.config_file.empty()) cfg = ExperimentConfig::load(flags.config_file);

  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (flags.config_file.empty() || given("--seed")) cfg.seed = flags.seed;
  if (flags.config_file.empty() || given("--iterations")) cfg.iterations = flags.iterations;
  if (flags.config_file.empty() || given("--out")) cfg.out_dir = flags.out_dir;
  if (given("--id")) cfg.id = flags.id;
  if (given("--world")) cfg.world_file = flags.world_file;
  if (given("--packet-hz")) cfg.packet_hz = flags.packet_hz;
  if (given("--ablate")) cfg.ablation = selfsense::AblationMask::from_names(flags.ablate);
  if (given("--image-mode")) {
    cfg.image_mode = flags.image_mode == "base64" ? selfsense::fusion::ImageMode::Base64
                                                  : selfsense::fusion::ImageMode::Reference;
  }
  if (flags.no_images) cfg.save_images = false;

  if (flags.config_file.empty() || given("--backend")) {
    cfg.agent_backend.kind = selfsense::agent::backend_kind_from_string(flags.backend);
  }
  if (given("--endpoint")) cfg.agent_backend.endpoint = flags.endpoint;
  if (given("--model")) cfg.agent_backend.model = flags.model;
  if (given("--transcript")) cfg.agent_backend.transcript_path = flags.transcript;
  if (given("--api-key-env")) cfg.agent_backend.api_key_env = flags.api_key_env;
  cfg.agent_backend.mock_seed = cfg.seed;

  if (flags.config_file.empty() || given("--judge-backend")) {
    cfg.judge_backend.kind =
        selfsense::agent::backend_kind_from_string(flags.judge_backend);
  }
  cfg.judge_backend.mock_seed = cfg.seed;
  cfg.sim.seed = cfg.seed;
  return cfg;
}

int fail_with_json(const std::exception& e, const char* kind) {
  nlohmann::ordered_json err;
  err["error"] = kind;
  err["message"] = e.what();
  std::cerr << err.dump() << std::endl;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embodied self-recognition experiment harness"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* cmd_simulate =
      app.add_subcommand("simulate", "world + trajectory + packets, no model");
  add_common_flags(cmd_simulate, flags);

  auto* cmd_run = app.add_subcommand("run", "full prediction-memory loop");
  add_common_flags(cmd_run, flags);
  bool run_judge_after = false;
  cmd_run->add_flag("--judge", run_judge_after, "score the run right after it finishes");

  auto* cmd_judge = app.add_subcommand("judge", "score an existing run");
  std::string judge_run_dir;
  cmd_judge->add_option("--run", judge_run_dir, "run directory")->required();
  cmd_judge->add_option("--judge-backend", flags.judge_backend, "mock | live");
  cmd_judge->add_option("--endpoint", flags.endpoint, "live judge endpoint URL");
  cmd_judge->add_option("--model", flags.model, "live judge model name");
  cmd_judge->add_option("--api-key-env", flags.api_key_env, "API key env var");

  auto* cmd_ablate =
      app.add_subcommand("ablate", "run the six conditions: full + single ablations");
  add_common_flags(cmd_ablate, flags);

  auto* cmd_sem = app.add_subcommand("sem", "build the SEM dataset and fit the model");
  std::string sem_runs_dir;
  std::string sem_csv;
  std::string sem_out = "sem_report";
  std::uint64_t sem_seed = 0;
  int sem_bootstrap = 0;
  cmd_sem->add_option("--runs", sem_runs_dir, "directory of scored runs");
  cmd_sem->add_option("--csv", sem_csv, "design matrix CSV (alternative to --runs)");
  cmd_sem->add_option("--out", sem_out, "report output directory");
  cmd_sem->add_option("--seed", sem_seed, "multistart seed");
  cmd_sem->add_option("--bootstrap", sem_bootstrap, "bootstrap replications for SEs");

  auto* cmd_report = app.add_subcommand("report", "summary tables and score series");
  std::string report_run_dir;
  cmd_report->add_option("--run", report_run_dir, "run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_simulate->parsed()) {
      const auto paths = selfsense::run::simulate_run(build_config(flags, cmd_simulate));
      std::cout << paths.root.string() << "\n";
      return 0;
    }
    if (cmd_run->parsed()) {
      const ExperimentConfig cfg = build_config(flags, cmd_run);
      const auto paths = selfsense::run::execute_run(cfg);
      if (run_judge_after) {
        selfsense::run::judge_run(paths, cfg.judge_backend);
        selfsense::run::write_reports(paths);
      }
      std::cout << paths.root.string() << "\n";
      return 0;
    }
    if (cmd_judge->parsed()) {
      selfsense::agent::BackendConfig judge_cfg;
      judge_cfg.kind = selfsense::agent::backend_kind_from_string(flags.judge_backend);
      judge_cfg.endpoint = flags.endpoint;
      judge_cfg.model = flags.model;
      judge_cfg.api_key_env = flags.api_key_env;
      const RunPaths paths{judge_run_dir};
      selfsense::run::judge_run(paths, judge_cfg);
      selfsense::run::write_reports(paths);
      std::cout << paths.scores().string() << "\n";
      return 0;
    }
    if (cmd_ablate->parsed()) {
      const ExperimentConfig cfg = build_config(flags, cmd_ablate);
      const auto runs = selfsense::run::run_ablation_study(cfg);
      for (const auto& [name, paths] : runs) {
        std::cout << name << " " << paths.root.string() << "\n";
      }
      return 0;
    }
    if (cmd_sem->parsed()) {
      selfsense::sem::SemData data{Eigen::MatrixXd{}};
      if (!sem_csv.empty()) {
        data = selfsense::sem::SemData::load_csv(sem_csv);
      } else if (!sem_runs_dir.empty()) {
        const auto runs = selfsense::run::discover_runs(sem_runs_dir);
        data = selfsense::run::build_sem_dataset(runs);
      } else {
        throw selfsense::ConfigError("sem needs --runs or --csv");
      }
      const auto model = selfsense::sem::SemModel::paper_model();
      selfsense::sem::FitOptions options;
      options.seed = sem_seed;
      options.bootstrap = sem_bootstrap;
      const auto result = selfsense::sem::fit(model, data, options);

      std::filesystem::create_directories(sem_out);
      selfsense::sem::write_fit_report(result, std::filesystem::path(sem_out) /
                                                   "fit_report.json");
      selfsense::sem::write_path_csv(result,
                                     std::filesystem::path(sem_out) / "paths.csv");
      data.save_csv(std::filesystem::path(sem_out) / "dataset.csv");
      std::cout << "chi2=" << result.chi2 << " df=" << result.df
                << " cfi=" << result.cfi << " tli=" << result.tli
                << " rmsea=" << result.rmsea << "\n";
      return 0;
    }
    if (cmd_report->parsed()) {
      const RunPaths paths{report_run_dir};
      selfsense::run::write_reports(paths);
      std::cout << paths.report_dir().string() << "\n";
      return 0;
    }
  } catch (const selfsense::Error& e) {
    return fail_with_json(e, "selfsense_error");
  } catch (const std::exception& e) {
    return fail_with_json(e, "internal_error");
  }
  return 0;
}
