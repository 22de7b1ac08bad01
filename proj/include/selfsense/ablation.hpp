#pragma once

#include <array>
#include <string>
#include <vector>

#include "selfsense/errors.hpp"

namespace selfsense {

/// Which inputs are withheld from the agent for a run.
struct AblationMask {
  bool memory = false;
  bool camera = false;
  bool odometry = false;
  bool lidar = false;
  bool imu = false;

  bool any() const { return memory || camera || odometry || lidar || imu; }

  static constexpr std::array<const char*, 5> names() {
    return {"memory", "camera", "odometry", "lidar", "imu"};
  }

  bool& by_name(const std::string& name) {
    if (name == "memory") return memory;
    if (name == "camera") return camera;
    if (name == "odometry") return odometry;
    if (name == "lidar") return lidar;
    if (name == "imu") return imu;
    throw ConfigError("unknown ablation name: " + name);
  }

  static AblationMask from_names(const std::vector<std::string>& names) {
    AblationMask m;
    for (const auto& n : names) m.by_name(n) = true;
    return m;
  }

  std::vector<std::string> active_names() const {
    std::vector<std::string> out;
    if (memory) out.push_back("memory");
    if (camera) out.push_back("camera");
    if (odometry) out.push_back("odometry");
    if (lidar) out.push_back("lidar");
    if (imu) out.push_back("imu");
    return out;
  }
};

}  // namespace selfsense
