#pragma once

#include "selfsense/sim/world.hpp"

namespace selfsense::sim {

/// Commanded or actual platform velocity in the body frame: forward (vx),
/// lateral left (vy) in m/s, yaw rate omega in rad/s.
struct BodyVelocity {
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;
};

struct RobotDims {
  double length = 0.541;
  double height = 0.2255;
  double width = 0.581;
};

inline constexpr double kMaxSpeed = 1.83;  // m/s, platform limit

struct RobotState {
  Vec2 position{0.0, 0.0};
  double heading = 0.0;  // radians, CCW from +x
  BodyVelocity velocity;
  RobotDims dims;
  double max_speed = kMaxSpeed;

  /// Bounding-disc footprint used for collision checks.
  double footprint_radius() const {
    return 0.5 * std::hypot(dims.length, dims.width);
  }
};

/// Scales (vx, vy) down to the speed limit; omega passes through.
BodyVelocity clamp_speed(const BodyVelocity& cmd, double max_speed = kMaxSpeed);

/// Integrates one step of the omnidirectional platform. The command is
/// clamped to max speed, the body velocity is rotated into the world frame
/// and integrated; on contact with an obstacle or wall the translation stops
/// at the contact point and the velocity component into the surface is
/// zeroed. Heading always integrates.
RobotState step_kinematics(const WorldMap& world, const RobotState& state,
                           const BodyVelocity& cmd, double dt);

}  // namespace selfsense::sim
