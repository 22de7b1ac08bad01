#include "selfsense/sim/policy.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace selfsense::sim {

namespace {

// Compass sector minima over the 529 beams. Sector 0 is the front
// ([-22.5, 22.5) around the heading), then clockwise: front-right, right,
// rear-right, rear, rear-left, left, front-left.
std::array<double, 8> sector_clearances(const RawLidarScan& scan) {
  std::array<double, 8> out;
  out.fill(RawLidarScan::kMaxRange);
  for (std::size_t k = 0; k < scan.ranges.size(); ++k) {
    const double ccw = std::fmod(k * RawLidarScan::kAngleIncrementDeg + 22.5, 360.0);
    const int ccw_sector = static_cast<int>(ccw / 45.0);  // 0=front,1=front-left,...
    static constexpr int kToCompass[8] = {0, 7, 6, 5, 4, 3, 2, 1};
    const int s = kToCompass[ccw_sector];
    out[s] = std::min(out[s], scan.ranges[k]);
  }
  return out;
}

// Body-frame unit direction of a compass sector center.
Vec2 sector_direction(int sector) {
  const double ccw_deg = -45.0 * sector;  // compass order is clockwise
  const double a = ccw_deg * M_PI / 180.0;
  return {std::cos(a), std::sin(a)};
}

}  // namespace

BodyVelocity explore_policy(const RobotState& state, const RawLidarScan& scan,
                            RandomStream& rng) {
  constexpr double kBlocked = 0.5;   // m
  constexpr double kSlowdown = 1.5;  // m
  constexpr double kCruise = 0.7;    // m/s

  const auto clearance = sector_clearances(scan);
  const double front = clearance[0];
  const double left = clearance[6];
  const double right = clearance[2];

  BodyVelocity cmd;
  // Smooth seeded wander on top of the current turn rate.
  cmd.omega = std::clamp(0.8 * state.velocity.omega + 0.25 * rng.normal(), -0.9, 0.9);
  cmd.vy = 0.15 * rng.normal();

  if (front < kBlocked) {
    cmd.vx = -0.15;
    cmd.omega = (left >= right) ? 0.9 : -0.9;
  } else if (front < kSlowdown) {
    cmd.vx = kCruise * (front - kBlocked) / (kSlowdown - kBlocked);
    cmd.omega += (left >= right) ? 0.35 : -0.35;
  } else {
    cmd.vx = kCruise;
  }

  // Push away from any other crowded sector.
  for (int s = 1; s < 8; ++s) {
    if (clearance[s] < kBlocked) {
      const Vec2 away = -sector_direction(s);
      cmd.vx += 0.3 * away.x();
      cmd.vy += 0.3 * away.y();
    }
  }
  return clamp_speed(cmd, state.max_speed);
}

}  // namespace selfsense::sim
