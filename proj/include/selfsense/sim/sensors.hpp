#pragma once

#include <Eigen/Geometry>
#include <cstdint>
#include <span>
#include <vector>

#include "selfsense/rng.hpp"
#include "selfsense/sim/robot.hpp"

namespace selfsense::sim {

struct RawLidarScan {
  static constexpr int kBeamCount = 529;
  static constexpr double kAngleIncrementDeg = 0.68;
  static constexpr double kMaxRange = 30.0;  // meters
  static constexpr double kRateHz = 12.0;

  double timestamp = 0.0;
  std::vector<double> ranges;  // exactly kBeamCount entries, meters
};

struct RawOdometrySample {
  double timestamp = 0.0;
  Eigen::Vector3d position{0, 0, 0};
  Eigen::Quaterniond orientation{1, 0, 0, 0};   // w, x, y, z
  Eigen::Vector3d linear_velocity{0, 0, 0};     // world frame
  Eigen::Vector3d angular_velocity{0, 0, 0};
};

struct RawImuSample {
  double timestamp = 0.0;
  Eigen::Vector3d linear_acceleration{0, 0, 0};  // body frame; z carries gravity
};

struct ImageFrame {
  static constexpr int kWidth = 640;
  static constexpr int kHeight = 480;

  double timestamp = 0.0;
  int width = kWidth;
  int height = kHeight;
  std::vector<std::uint8_t> pixels;  // RGB8, row-major
};

struct OdometryNoise {
  bool enabled = true;
  double position_sigma = 1e-3;  // m
  double velocity_sigma = 5e-3;  // m/s
};

struct ImuNoise {
  bool enabled = true;
  double sigma = 0.02;  // m/s^2, planar axes only
};

inline constexpr double kGravity = 9.81;

/// 529 beams spread CCW from the heading at 0.68 degree increments,
/// saturated at 30 m.
RawLidarScan raycast_lidar(const WorldMap& world, const RobotState& state, double t);

/// Ground-truth planar pose and velocity, with optional Gaussian noise whose
/// defaults stand in for 500 line/rev encoder quantization. The quaternion is
/// the planar rotation about z. state.velocity is interpreted as the world
/// sample's body-frame velocity at time t.
RawOdometrySample sample_odometry(const RobotState& state, double t,
                                  const OdometryNoise& noise, RandomStream& rng);

struct VelocitySnapshot {
  double t = 0.0;
  BodyVelocity velocity;
};

/// Planar acceleration by finite difference of body velocity between the two
/// most recent snapshots (an estimate centered between them); the z axis
/// reports the configured gravity constant exactly, noise-free.
/// Throws InsufficientHistory with fewer than two snapshots.
RawImuSample sample_imu(std::span<const VelocitySnapshot> history, double t,
                        double gravity, const ImuNoise& noise, RandomStream& rng);

/// First-person 640x480 raster: per-column depths from a 60 degree fan of
/// rays, a depth-shaded wall band (closer is darker and taller), distinct
/// ceiling and floor bands. Columns whose ray exceeds the lidar range render
/// no wall. Deterministic for identical (world, state).
ImageFrame render_camera(const WorldMap& world, const RobotState& state, double t);

}  // namespace selfsense::sim
