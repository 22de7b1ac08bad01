#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>

#include "selfsense/agent/session.hpp"

namespace selfsense::run {

/// Everything a run needs; serialized as config.json inside the run
/// directory. String values in config files may interpolate environment
/// variables with ${VAR}.
struct ExperimentConfig {
  std::uint64_t seed = 7;
  int iterations = 657;
  double packet_hz = 1.0;
  std::string world_file;  // generated from the seed when empty
  std::filesystem::path out_dir = "runs";
  std::string id;  // derived from subcommand + seed + condition when empty
  fusion::ImageMode image_mode = fusion::ImageMode::Reference;
  bool save_images = true;
  AblationMask ablation;
  agent::BackendConfig agent_backend;
  agent::BackendConfig judge_backend;
  sim::SimConfig sim;

  agent::SessionConfig session_config() const;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::filesystem::path& path);
  nlohmann::ordered_json to_json() const;
};

/// Replaces ${VAR} with the value of the environment variable VAR in every
/// string of the document. Unset variables become empty strings.
nlohmann::json interpolate_env(const nlohmann::json& j);

}  // namespace selfsense::run
