#include "selfsense/sim/sensors.hpp"

#include <algorithm>
#include <cmath>

#include "selfsense/errors.hpp"

namespace selfsense::sim {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
}

RawLidarScan raycast_lidar(const WorldMap& world, const RobotState& state, double t) {
  RawLidarScan scan;
  scan.timestamp = t;
  scan.ranges.resize(RawLidarScan::kBeamCount);
  for (int k = 0; k < RawLidarScan::kBeamCount; ++k) {
    const double angle = state.heading + k * RawLidarScan::kAngleIncrementDeg * kDegToRad;
    scan.ranges[k] = raycast(world, state.position, angle, RawLidarScan::kMaxRange);
  }
  return scan;
}

RawOdometrySample sample_odometry(const RobotState& state, double t,
                                  const OdometryNoise& noise, RandomStream& rng) {
  RawOdometrySample s;
  s.timestamp = t;

  const double c = std::cos(state.heading), sn = std::sin(state.heading);
  const Vec2 v_world{c * state.velocity.vx - sn * state.velocity.vy,
                     sn * state.velocity.vx + c * state.velocity.vy};

  s.position = {state.position.x(), state.position.y(), 0.0};
  s.linear_velocity = {v_world.x(), v_world.y(), 0.0};
  s.angular_velocity = {0.0, 0.0, state.velocity.omega};
  s.orientation = Eigen::Quaterniond(Eigen::AngleAxisd(state.heading, Eigen::Vector3d::UnitZ()));

  if (noise.enabled) {
    s.position.x() += rng.normal(0.0, noise.position_sigma);
    s.position.y() += rng.normal(0.0, noise.position_sigma);
    s.linear_velocity.x() += rng.normal(0.0, noise.velocity_sigma);
    s.linear_velocity.y() += rng.normal(0.0, noise.velocity_sigma);
  }
  return s;
}

RawImuSample sample_imu(std::span<const VelocitySnapshot> history, double t,
                        double gravity, const ImuNoise& noise, RandomStream& rng) {
  if (history.size() < 2) {
    throw InsufficientHistory("sample_imu needs at least 2 velocity snapshots");
  }
  const VelocitySnapshot& prev = history[history.size() - 2];
  const VelocitySnapshot& last = history[history.size() - 1];
  const double dt = last.t - prev.t;
  if (dt <= 0.0) throw InsufficientHistory("sample_imu history not time-ordered");

  RawImuSample s;
  s.timestamp = t;
  s.linear_acceleration = {(last.velocity.vx - prev.velocity.vx) / dt,
                           (last.velocity.vy - prev.velocity.vy) / dt, gravity};
  if (noise.enabled) {
    s.linear_acceleration.x() += rng.normal(0.0, noise.sigma);
    s.linear_acceleration.y() += rng.normal(0.0, noise.sigma);
  }
  return s;
}

ImageFrame render_camera(const WorldMap& world, const RobotState& state, double t) {
  constexpr int W = ImageFrame::kWidth;
  constexpr int H = ImageFrame::kHeight;
  constexpr double kFovRad = 60.0 * kDegToRad;
  constexpr double kWallHalfHeight = 1.2;  // meters above/below the optical axis
  const double focal = (W / 2.0) / std::tan(kFovRad / 2.0);

  ImageFrame frame;
  frame.timestamp = t;
  frame.pixels.assign(static_cast<std::size_t>(W) * H * 3, 0);

  // Per-column wall extent and shade.
  std::array<int, W> top;
  std::array<int, W> bottom;
  std::array<std::uint8_t, W> shade;
  for (int c = 0; c < W; ++c) {
    const double offset = (0.5 - (c + 0.5) / W) * kFovRad;  // +30 deg at left edge
    const double d = raycast(world, state.position, state.heading + offset,
                             RawLidarScan::kMaxRange);
    if (d >= RawLidarScan::kMaxRange) {
      top[c] = H / 2;
      bottom[c] = H / 2;  // empty column: ceiling meets floor
      shade[c] = 0;
      continue;
    }
    const double d_perp = std::max(d * std::cos(offset), 1e-3);
    const int half = static_cast<int>(focal * kWallHalfHeight / d_perp);
    top[c] = std::max(0, H / 2 - half);
    bottom[c] = std::min(H, H / 2 + half);
    // Monotone depth-to-shade: nearer walls are darker.
    shade[c] = static_cast<std::uint8_t>(40.0 + 200.0 * d / RawLidarScan::kMaxRange);
  }

  constexpr std::uint8_t kCeiling[3] = {58, 66, 88};
  constexpr std::uint8_t kFloor[3] = {84, 78, 66};
  std::uint8_t* px = frame.pixels.data();
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x, px += 3) {
      if (y < top[x]) {
        px[0] = kCeiling[0];
        px[1] = kCeiling[1];
        px[2] = kCeiling[2];
      } else if (y >= bottom[x]) {
        px[0] = kFloor[0];
        px[1] = kFloor[1];
        px[2] = kFloor[2];
      } else {
        const std::uint8_t s = shade[x];
        px[0] = s;
        px[1] = s;
        px[2] = static_cast<std::uint8_t>(std::min(255, s + 12));
      }
    }
  }
  return frame;
}

}  // namespace selfsense::sim
