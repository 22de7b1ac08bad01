#include <cmath>
#include <map>

#include "selfsense/io/jsonl.hpp"
#include "selfsense/run/pipeline.hpp"

namespace selfsense::run {

namespace {

struct PacketScalars {
  bool image_present = false;
  bool has_kinematics = false;
  double position = 0.0;     // planar magnitude
  double orientation = 0.0;  // yaw
  double velocity = 0.0;     // planar magnitude
  double acceleration = 0.0; // planar magnitude
};

PacketScalars scalars_from_packet(const nlohmann::json& j) {
  PacketScalars s;
  s.image_present = j.contains("image") && !j["image"].is_null();
  if (j.contains("odometry") && !j["odometry"].is_null() && j.contains("imu") &&
      !j["imu"].is_null()) {
    const auto& odo = j["odometry"];
    const double px = odo["position"][0].get<double>();
    const double py = odo["position"][1].get<double>();
    const double qx = odo["orientation"][0].get<double>();
    const double qy = odo["orientation"][1].get<double>();
    const double qz = odo["orientation"][2].get<double>();
    const double qw = odo["orientation"][3].get<double>();
    const double vx = odo["linear_velocity"][0].get<double>();
    const double vy = odo["linear_velocity"][1].get<double>();
    const double ax = j["imu"]["linear_acceleration"][0].get<double>();
    const double ay = j["imu"]["linear_acceleration"][1].get<double>();
    s.has_kinematics = true;
    s.position = std::hypot(px, py);
    s.orientation = std::atan2(2.0 * (qw * qz + qx * qy), 1.0 - 2.0 * (qy * qy + qz * qz));
    s.velocity = std::hypot(vx, vy);
    s.acceleration = std::hypot(ax, ay);
  }
  return s;
}

bool run_usable_for_sem(const RunPaths& paths) {
  // The design matrix needs odometry and IMU columns; runs where those were
  // ablated contribute no usable rows. Lidar ablation is irrelevant (no
  // lidar column in the model).
  const auto config_path = paths.config_json();
  if (!std::filesystem::exists(config_path)) return true;
  const auto text = io::read_text_file(config_path);
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.contains("ablation")) return true;
  for (const auto& name : j["ablation"]) {
    const std::string n = name.get<std::string>();
    if (n == "odometry" || n == "imu") return false;
  }
  return true;
}

}  // namespace

sem::SemData build_sem_dataset(const std::vector<RunPaths>& runs) {
  std::vector<std::array<double, sem::kNumObserved>> rows;

  int usable_runs = 0;
  for (const RunPaths& paths : runs) {
    if (!run_usable_for_sem(paths)) continue;
    if (!std::filesystem::exists(paths.scores())) {
      throw MissingScores("run lacks judge output: " + paths.root.string());
    }
    ++usable_runs;

    std::vector<PacketScalars> packets;
    io::for_each_jsonl(paths.packets(), [&](const nlohmann::json& j) {
      packets.push_back(scalars_from_packet(j));
    });

    std::map<int, bool> memory_used;
    io::for_each_jsonl(paths.transcript(), [&](const nlohmann::json& j) {
      memory_used[j.at("iteration").get<int>()] = j.value("memory_used", false);
    });

    io::for_each_jsonl(paths.scores(), [&](const nlohmann::json& j) {
      for (const char* key : {"dimensions", "movement", "environment", "entity"}) {
        if (!j.contains(key) || j[key].is_null()) return;  // need all four scores
      }
      const int iteration = j.at("iteration").get<int>();
      if (iteration < 1 || iteration > static_cast<int>(packets.size())) return;
      const PacketScalars& p = packets[iteration - 1];
      if (!p.has_kinematics) return;

      std::array<double, sem::kNumObserved> row{};
      row[0] = j["dimensions"].get<double>();  // rubric_Dimensions
      row[1] = j["movement"].get<double>();    // rubric_Movement
      row[2] = j["environment"].get<double>(); // rubric_Image
      row[3] = j["entity"].get<double>();      // rubric_Individual
      row[4] = memory_used.count(iteration) && memory_used[iteration] ? 1.0 : 0.0;
      row[5] = p.image_present ? 1.0 : 0.0;
      row[6] = p.position;
      row[7] = p.orientation;
      row[8] = p.velocity;
      row[9] = p.acceleration;
      rows.push_back(row);
    });
  }

  if (usable_runs == 0) throw MissingScores("no usable runs for the SEM dataset");
  if (rows.empty()) throw MissingScores("no complete scored iterations across runs");

  Eigen::MatrixXd raw(static_cast<Eigen::Index>(rows.size()), sem::kNumObserved);
  for (Eigen::Index r = 0; r < raw.rows(); ++r) {
    for (int c = 0; c < sem::kNumObserved; ++c) raw(r, c) = rows[r][c];
  }
  return sem::SemData::from_raw(raw);
}

}  // namespace selfsense::run
