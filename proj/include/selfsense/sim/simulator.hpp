#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "selfsense/sim/policy.hpp"
#include "selfsense/sim/sensors.hpp"

namespace selfsense::sim {

struct SensorRates {
  double odometry_hz = 20.0;
  double imu_hz = 50.0;
  double camera_hz = 10.0;
  double lidar_hz = RawLidarScan::kRateHz;  // the platform's fixed 12 Hz
  double policy_hz = 10.0;
};

struct SimConfig {
  std::uint64_t seed = 0;
  SensorRates rates;
  OdometryNoise odometry_noise;
  ImuNoise imu_noise;
  double gravity = kGravity;
  /// Raw timestamps start at this epoch; packets re-reference to 0.0.
  double clock_epoch = 0.0;
  /// Base integration rate. Every sensor rate must divide it.
  int tick_hz = 300;
};

/// Deterministic single-threaded stepping under a virtual clock. Timestamps
/// are exact tick multiples, so every stream is jitter-free in virtual time.
class Simulator {
 public:
  struct TickEvents {
    std::optional<RawOdometrySample> odometry;
    std::optional<RawImuSample> imu;
    std::optional<RawLidarScan> lidar;
    std::optional<ImageFrame> camera;
  };

  Simulator(WorldMap world, SimConfig config);

  /// Emits any samples scheduled for the current virtual time, then
  /// integrates one tick.
  TickEvents step();

  double now() const { return config_.clock_epoch + static_cast<double>(ticks_) / config_.tick_hz; }
  std::int64_t ticks() const { return ticks_; }
  const RobotState& state() const { return state_; }
  const WorldMap& world() const { return world_; }
  const SimConfig& config() const { return config_; }

 private:
  WorldMap world_;
  SimConfig config_;
  RobotState state_;
  BodyVelocity command_;
  RawLidarScan last_scan_;
  std::deque<VelocitySnapshot> imu_history_;

  RandomStream policy_rng_;
  RandomStream odometry_rng_;
  RandomStream imu_rng_;

  std::int64_t ticks_ = 0;
  int odometry_div_, imu_div_, camera_div_, lidar_div_, policy_div_;

  std::optional<RawOdometrySample> prev_odometry_truth_;
};

}  // namespace selfsense::sim
