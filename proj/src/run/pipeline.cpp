#include "selfsense/run/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include "selfsense/io/jsonl.hpp"
#include "selfsense/io/png.hpp"
#include "selfsense/judge/judge.hpp"

namespace selfsense::run {

namespace {

std::string default_id(const char* kind, const ExperimentConfig& config) {
  return std::string(kind) + "-s" + std::to_string(config.seed);
}

RunPaths prepare_run_dir(const ExperimentConfig& config, const char* kind) {
  ExperimentConfig cfg = config;
  if (cfg.id.empty()) cfg.id = default_id(kind, config);
  RunPaths paths{cfg.out_dir / cfg.id};
  std::filesystem::create_directories(paths.root);
  if (cfg.save_images && !cfg.ablation.camera) {
    std::filesystem::create_directories(paths.images_dir());
  }
  std::ofstream out(paths.config_json());
  if (!out) throw IoError("cannot write " + paths.config_json().string());
  out << cfg.to_json().dump(2) << "\n";
  return paths;
}

sim::WorldMap resolve_world(const ExperimentConfig& config) {
  if (!config.world_file.empty()) return sim::WorldMap::load(config.world_file);
  return sim::WorldMap::generate(config.seed);
}

nlohmann::ordered_json iteration_to_json(const agent::IterationRecord& record) {
  nlohmann::ordered_json j;
  j["iteration"] = record.iteration;
  j["timestamp"] = record.timestamp;
  j["prompt"] = record.prompt;
  j["image_attached"] = record.image_attached;
  j["memory_used"] = record.memory_used;
  j["response"] = record.response;
  j["prediction"] = record.prediction
                        ? nlohmann::ordered_json::parse(
                              agent::serialize_prediction(*record.prediction))
                        : nlohmann::ordered_json(nullptr);
  j["error"] = record.error.empty() ? nlohmann::ordered_json(nullptr)
                                    : nlohmann::ordered_json(record.error);
  j["memory_after"] = record.memory_after;
  j["latency_ms"] = record.latency_ms;
  return j;
}

void save_packet_image(const RunPaths& paths, const fusion::FusedPacket& packet) {
  if (!packet.image || !packet.image->frame || packet.image->ref.empty()) return;
  const auto target = paths.root / packet.image->ref;
  std::filesystem::create_directories(target.parent_path());
  io::write_png(target, packet.image->frame->width, packet.image->frame->height,
                packet.image->frame->pixels);
}

agent::PredictionRecord prediction_from_json(const nlohmann::json& j) {
  agent::PredictionRecord pred;
  pred.iteration = j.at("iteration").get<int>();
  pred.dimensions.length = j.at("dimensions").at("length").get<double>();
  pred.dimensions.height = j.at("dimensions").at("height").get<double>();
  pred.dimensions.width = j.at("dimensions").at("width").get<double>();
  pred.movement = j.at("movement").get<std::string>();
  pred.entity = j.at("entity").get<std::string>();
  pred.environment = j.at("environment").get<std::string>();
  return pred;
}

nlohmann::ordered_json optional_score(const std::optional<int>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

double yaw_from_quaternion(double x, double y, double z, double w) {
  return std::atan2(2.0 * (w * z + x * y), 1.0 - 2.0 * (y * y + z * z));
}

}  // namespace

const std::vector<std::pair<std::string, AblationMask>>& ablation_conditions() {
  static const std::vector<std::pair<std::string, AblationMask>> conditions = {
      {"full", {}},
      {"no_memory", {.memory = true}},
      {"no_camera", {.camera = true}},
      {"no_odometry", {.odometry = true}},
      {"no_lidar", {.lidar = true}},
      {"no_imu", {.imu = true}},
  };
  return conditions;
}

RunPaths simulate_run(const ExperimentConfig& config) {
  const RunPaths paths = prepare_run_dir(config, "sim");
  sim::WorldMap world = resolve_world(config);
  world.save(paths.world_json());

  agent::SessionConfig session = config.session_config();
  sim::SimConfig sim_config = session.sim;
  sim_config.seed = config.seed;
  sim::Simulator simulator(world, sim_config);
  fusion::SensorBuffers buffers;

  io::JsonlWriter packet_writer(paths.packets());
  io::JsonlWriter trajectory_writer(paths.trajectory());

  const double session_start = sim_config.clock_epoch;
  const double period = 1.0 / config.packet_hz;
  const double half_tick = 0.5 / sim_config.tick_hz;

  for (int k = 1; k <= config.iterations; ++k) {
    const double t_ref = session_start + (k - 1) * period;
    while (simulator.now() <= t_ref + session.window + half_tick) {
      const auto events = simulator.step();
      if (events.odometry) buffers.push_odometry(*events.odometry);
      if (events.imu) buffers.push_imu(*events.imu);
      if (events.lidar) buffers.push_lidar(*events.lidar);
      if (events.camera) buffers.push_camera(*events.camera);
    }
    buffers.prune(simulator.now());

    const auto packet =
        fusion::make_packet(buffers, t_ref, session_start, config.ablation, session.window);
    packet_writer.write_line(fusion::serialize_packet(packet, config.image_mode));
    if (config.save_images) save_packet_image(paths, packet);

    const sim::RobotState& state = simulator.state();
    nlohmann::ordered_json pose;
    pose["iteration"] = k;
    pose["t"] = packet.timestamp;
    pose["x"] = state.position.x();
    pose["y"] = state.position.y();
    pose["heading"] = state.heading;
    trajectory_writer.write(pose);
  }
  return paths;
}

RunPaths execute_run(const ExperimentConfig& config) {
  const RunPaths paths = prepare_run_dir(config, "run");
  sim::WorldMap world = resolve_world(config);
  world.save(paths.world_json());

  agent::SessionConfig session = config.session_config();
  session.world = world;

  io::JsonlWriter packet_writer(paths.packets());
  io::JsonlWriter transcript_writer(paths.transcript());

  agent::SessionSinks sinks;
  sinks.on_packet = [&](int iteration, const fusion::FusedPacket& packet,
                        const std::string& serialized) {
    (void)iteration;
    packet_writer.write_line(serialized);
    if (config.save_images) save_packet_image(paths, packet);
  };
  sinks.on_iteration = [&](const agent::IterationRecord& record) {
    transcript_writer.write(iteration_to_json(record));
  };

  auto backend = agent::make_backend(config.agent_backend);
  agent::run_session(session, *backend, sinks);
  return paths;
}

void judge_run(const RunPaths& paths, const agent::BackendConfig& judge_backend) {
  if (!std::filesystem::exists(paths.transcript())) {
    throw MissingScores("run has no transcript to judge: " + paths.root.string());
  }

  std::unique_ptr<judge::JudgeClient> client;
  std::unique_ptr<agent::TextBackend> backend;
  if (judge_backend.kind == agent::BackendKind::Mock) {
    client = std::make_unique<judge::MockJudgeClient>();
  } else {
    backend = agent::make_backend(judge_backend);
    client = std::make_unique<judge::BackendJudgeClient>(*backend);
  }

  const judge::RubricSet rubrics = judge::default_rubrics();
  io::JsonlWriter writer(paths.scores());

  io::for_each_jsonl(paths.transcript(), [&](const nlohmann::json& line) {
    if (!line.contains("prediction") || line["prediction"].is_null()) return;
    const agent::PredictionRecord pred = prediction_from_json(line["prediction"]);
    judge::JudgeScore s = judge::score(pred, rubrics, *client);

    nlohmann::ordered_json j;
    j["iteration"] = line["iteration"].get<int>();
    j["entity"] = optional_score(s.entity);
    j["dimensions"] = optional_score(s.dimensions);
    j["movement"] = optional_score(s.movement);
    j["environment"] = optional_score(s.environment);
    j["rationales"] = s.rationales;
    writer.write(j);
  });
}

std::vector<judge::JudgeScore> load_scores(const RunPaths& paths) {
  if (!std::filesystem::exists(paths.scores())) {
    throw MissingScores("run has no scores.jsonl: " + paths.root.string());
  }
  std::vector<judge::JudgeScore> scores;
  io::for_each_jsonl(paths.scores(), [&](const nlohmann::json& j) {
    judge::JudgeScore s;
    s.iteration = j.at("iteration").get<int>();
    auto read = [&](const char* key) -> std::optional<int> {
      if (!j.contains(key) || j[key].is_null()) return std::nullopt;
      return j[key].get<int>();
    };
    s.entity = read("entity");
    s.dimensions = read("dimensions");
    s.movement = read("movement");
    s.environment = read("environment");
    scores.push_back(std::move(s));
  });
  return scores;
}

void write_reports(const RunPaths& paths) {
  const auto scores = load_scores(paths);
  const judge::ScoreSummary summary = judge::aggregate(scores);
  std::filesystem::create_directories(paths.report_dir());

  {
    std::ofstream out(paths.report_dir() / "summary.csv");
    out << "dimension,mean,sd,n\n";
    out.precision(6);
    out << std::fixed;
    for (judge::Dimension d : judge::kAllDimensions) {
      const auto& stat = summary.for_dimension(d);
      out << judge::to_string(d) << ',' << stat.mean << ',' << stat.sd << ',' << stat.n
          << '\n';
    }
  }
  {
    nlohmann::ordered_json j;
    for (judge::Dimension d : judge::kAllDimensions) {
      const auto& stat = summary.for_dimension(d);
      j[judge::to_string(d)] = {{"mean", stat.mean},
                                {"sd", stat.sd},
                                {"n", stat.n},
                                {"missing", stat.missing}};
    }
    std::ofstream out(paths.report_dir() / "summary.json");
    out << j.dump(2) << "\n";
  }
  for (judge::Dimension d : judge::kAllDimensions) {
    std::ofstream out(paths.report_dir() /
                      ("series_" + std::string(judge::to_string(d)) + ".csv"));
    out << "iteration,score\n";
    for (const judge::JudgeScore& s : scores) {
      if (const auto v = s.by_dimension(d)) out << s.iteration << ',' << *v << '\n';
    }
  }
}

std::vector<std::pair<std::string, RunPaths>> run_ablation_study(
    const ExperimentConfig& base) {
  ExperimentConfig root_config = base;
  if (root_config.id.empty()) root_config.id = default_id("ablate", base);
  const std::filesystem::path root = root_config.out_dir / root_config.id;

  std::vector<std::pair<std::string, RunPaths>> runs;
  for (const auto& [name, mask] : ablation_conditions()) {
    ExperimentConfig cfg = base;
    cfg.out_dir = root;
    cfg.id = name;
    cfg.ablation = mask;
    const RunPaths paths = execute_run(cfg);
    judge_run(paths, cfg.judge_backend);
    write_reports(paths);
    runs.emplace_back(name, paths);
  }
  write_ablation_report(runs, root);
  return runs;
}

void write_ablation_report(const std::vector<std::pair<std::string, RunPaths>>& runs,
                           const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir / "report");

  std::ofstream csv(out_dir / "report" / "ablation_summary.csv");
  if (!csv) throw IoError("cannot write ablation summary");
  csv << "condition,dimension,mean,sd,n\n";
  csv.precision(6);
  csv << std::fixed;

  nlohmann::ordered_json radar;
  for (const auto& [name, paths] : runs) {
    const judge::ScoreSummary summary = judge::aggregate(load_scores(paths));
    nlohmann::ordered_json entry;
    for (judge::Dimension d : judge::kAllDimensions) {
      const auto& stat = summary.for_dimension(d);
      csv << name << ',' << judge::to_string(d) << ',' << stat.mean << ',' << stat.sd
          << ',' << stat.n << '\n';
      entry[judge::to_string(d)] = {{"mean", stat.mean}, {"sd", stat.sd}};
    }
    radar[name] = std::move(entry);
  }
  std::ofstream radar_out(out_dir / "report" / "radar.json");
  radar_out << radar.dump(2) << "\n";
}

std::vector<RunPaths> discover_runs(const std::filesystem::path& root) {
  std::vector<RunPaths> runs;
  if (std::filesystem::exists(RunPaths{root}.scores())) runs.push_back(RunPaths{root});
  if (std::filesystem::is_directory(root)) {
    for (const auto& entry : std::filesystem::directory_iterator(root)) {
      if (!entry.is_directory()) continue;
      RunPaths candidate{entry.path()};
      if (std::filesystem::exists(candidate.scores())) runs.push_back(candidate);
    }
  }
  std::sort(runs.begin(), runs.end(),
            [](const RunPaths& a, const RunPaths& b) { return a.root < b.root; });
  return runs;
}

}  // namespace selfsense::run
