#include "selfsense/run/config.hpp"

#include <cstdlib>
#include <fstream>

#include "selfsense/errors.hpp"

namespace selfsense::run {

namespace {

std::string interpolate_string(const std::string& text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto open = text.find("${", pos);
    if (open == std::string::npos) {
      out += text.substr(pos);
      break;
    }
    const auto close = text.find('}', open + 2);
    if (close == std::string::npos) {
      out += text.substr(pos);
      break;
    }
    out += text.substr(pos, open - pos);
    const std::string var = text.substr(open + 2, close - open - 2);
    if (const char* value = std::getenv(var.c_str())) out += value;
    pos = close + 1;
  }
  return out;
}

agent::BackendConfig backend_from_json(const nlohmann::json& j, std::uint64_t seed) {
  agent::BackendConfig cfg;
  cfg.kind = agent::backend_kind_from_string(j.value("kind", "mock"));
  cfg.endpoint = j.value("endpoint", "");
  cfg.model = j.value("model", "");
  cfg.api_key_env = j.value("api_key_env", "MODEL_API_KEY");
  cfg.timeout_s = j.value("timeout_s", 30.0);
  cfg.retries = j.value("retries", 2);
  cfg.transcript_path = j.value("transcript", "");
  cfg.mock_seed = j.value("mock_seed", seed);
  return cfg;
}

nlohmann::ordered_json backend_to_json(const agent::BackendConfig& cfg) {
  nlohmann::ordered_json j;
  j["kind"] = agent::to_string(cfg.kind);
  j["endpoint"] = cfg.endpoint;
  j["model"] = cfg.model;
  j["api_key_env"] = cfg.api_key_env;
  j["timeout_s"] = cfg.timeout_s;
  j["retries"] = cfg.retries;
  j["transcript"] = cfg.transcript_path.string();
  j["mock_seed"] = cfg.mock_seed;
  return j;
}

}  // namespace

nlohmann::json interpolate_env(const nlohmann::json& j) {
  if (j.is_string()) return interpolate_string(j.get<std::string>());
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = interpolate_env(*it);
    return out;
  }
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& item : j) out.push_back(interpolate_env(item));
    return out;
  }
  return j;
}

agent::SessionConfig ExperimentConfig::session_config() const {
  agent::SessionConfig session;
  session.iterations = iterations;
  session.ablation = ablation;
  session.seed = seed;
  session.sim = sim;
  session.packet_hz = packet_hz;
  session.image_mode = image_mode;
  session.measure_latency = agent_backend.kind == agent::BackendKind::Live;
  if (!world_file.empty()) session.world = sim::WorldMap::load(world_file);
  return session;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& raw) {
  const nlohmann::json j = interpolate_env(raw);
  ExperimentConfig cfg;
  cfg.seed = j.value("seed", std::uint64_t{7});
  cfg.iterations = j.value("iterations", 657);
  cfg.packet_hz = j.value("packet_hz", 1.0);
  cfg.world_file = j.value("world_file", "");
  cfg.out_dir = j.value("out_dir", "runs");
  cfg.id = j.value("id", "");
  const std::string mode = j.value("image_mode", "reference");
  if (mode == "reference") {
    cfg.image_mode = fusion::ImageMode::Reference;
  } else if (mode == "base64") {
    cfg.image_mode = fusion::ImageMode::Base64;
  } else {
    throw ConfigError("image_mode must be reference or base64");
  }
  cfg.save_images = j.value("save_images", true);
  if (j.contains("ablation")) {
    cfg.ablation = AblationMask::from_names(j["ablation"].get<std::vector<std::string>>());
  }
  cfg.agent_backend = j.contains("agent_backend")
                          ? backend_from_json(j["agent_backend"], cfg.seed)
                          : agent::BackendConfig{.mock_seed = cfg.seed};
  cfg.judge_backend = j.contains("judge_backend")
                          ? backend_from_json(j["judge_backend"], cfg.seed)
                          : agent::BackendConfig{.mock_seed = cfg.seed};

  if (j.contains("sim")) {
    const auto& s = j["sim"];
    cfg.sim.clock_epoch = s.value("clock_epoch", 0.0);
    cfg.sim.tick_hz = s.value("tick_hz", 300);
    cfg.sim.gravity = s.value("gravity", sim::kGravity);
    if (s.contains("rates")) {
      const auto& r = s["rates"];
      cfg.sim.rates.odometry_hz = r.value("odometry_hz", 20.0);
      cfg.sim.rates.imu_hz = r.value("imu_hz", 50.0);
      cfg.sim.rates.camera_hz = r.value("camera_hz", 10.0);
      cfg.sim.rates.lidar_hz = r.value("lidar_hz", 12.0);
      cfg.sim.rates.policy_hz = r.value("policy_hz", 10.0);
    }
    if (s.contains("odometry_noise")) {
      const auto& n = s["odometry_noise"];
      cfg.sim.odometry_noise.enabled = n.value("enabled", true);
      cfg.sim.odometry_noise.position_sigma = n.value("position_sigma", 1e-3);
      cfg.sim.odometry_noise.velocity_sigma = n.value("velocity_sigma", 5e-3);
    }
    if (s.contains("imu_noise")) {
      const auto& n = s["imu_noise"];
      cfg.sim.imu_noise.enabled = n.value("enabled", true);
      cfg.sim.imu_noise.sigma = n.value("sigma", 0.02);
    }
  }
  cfg.sim.seed = cfg.seed;
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid config JSON: " + std::string(e.what()));
  }
  return from_json(j);
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["iterations"] = iterations;
  j["packet_hz"] = packet_hz;
  j["world_file"] = world_file;
  j["out_dir"] = out_dir.string();
  j["id"] = id;
  j["image_mode"] = image_mode == fusion::ImageMode::Reference ? "reference" : "base64";
  j["save_images"] = save_images;
  j["ablation"] = ablation.active_names();
  j["agent_backend"] = backend_to_json(agent_backend);
  j["judge_backend"] = backend_to_json(judge_backend);
  j["sim"] = {{"clock_epoch", sim.clock_epoch},
              {"tick_hz", sim.tick_hz},
              {"gravity", sim.gravity},
              {"rates",
               {{"odometry_hz", sim.rates.odometry_hz},
                {"imu_hz", sim.rates.imu_hz},
                {"camera_hz", sim.rates.camera_hz},
                {"lidar_hz", sim.rates.lidar_hz},
                {"policy_hz", sim.rates.policy_hz}}},
              {"odometry_noise",
               {{"enabled", sim.odometry_noise.enabled},
                {"position_sigma", sim.odometry_noise.position_sigma},
                {"velocity_sigma", sim.odometry_noise.velocity_sigma}}},
              {"imu_noise",
               {{"enabled", sim.imu_noise.enabled}, {"sigma", sim.imu_noise.sigma}}}};
  return j;
}

}  // namespace selfsense::run
