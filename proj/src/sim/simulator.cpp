#include "selfsense/sim/simulator.hpp"

#include <cmath>

#include "selfsense/errors.hpp"

namespace selfsense::sim {

namespace {

int rate_divisor(int tick_hz, double hz, const char* name) {
  const double ticks = tick_hz / hz;
  const int div = static_cast<int>(std::lround(ticks));
  if (div <= 0 || std::abs(ticks - div) > 1e-9) {
    throw ConfigError(std::string(name) + " rate must divide the tick rate");
  }
  return div;
}

}  // namespace

Simulator::Simulator(WorldMap world, SimConfig config)
    : world_(std::move(world)),
      config_(config),
      policy_rng_(derive_seed(config.seed, "policy")),
      odometry_rng_(derive_seed(config.seed, "odometry")),
      imu_rng_(derive_seed(config.seed, "imu")) {
  odometry_div_ = rate_divisor(config_.tick_hz, config_.rates.odometry_hz, "odometry");
  imu_div_ = rate_divisor(config_.tick_hz, config_.rates.imu_hz, "imu");
  camera_div_ = rate_divisor(config_.tick_hz, config_.rates.camera_hz, "camera");
  lidar_div_ = rate_divisor(config_.tick_hz, config_.rates.lidar_hz, "lidar");
  policy_div_ = rate_divisor(config_.tick_hz, config_.rates.policy_hz, "policy");

  state_.position = world_.bounds.center();
  if (collides(world_, state_.position, state_.footprint_radius())) {
    throw ConfigError("world has no free spawn region at its center");
  }
}

Simulator::TickEvents Simulator::step() {
  TickEvents events;
  const double t = now();

  if (ticks_ % lidar_div_ == 0) {
    last_scan_ = raycast_lidar(world_, state_, t);
    events.lidar = last_scan_;
  }

  if (ticks_ % odometry_div_ == 0) {
    // Encoders report displacement over the last period, so the published
    // velocity is the backward difference of the true pose. Integrating it
    // reproduces the sampled positions exactly.
    RobotState reported = state_;
    if (prev_odometry_truth_) {
      const double dt = t - prev_odometry_truth_->timestamp;
      const Eigen::Vector3d dv =
          (Eigen::Vector3d{state_.position.x(), state_.position.y(), 0.0} -
           prev_odometry_truth_->position) /
          dt;
      const double c = std::cos(state_.heading), s = std::sin(state_.heading);
      reported.velocity.vx = c * dv.x() + s * dv.y();
      reported.velocity.vy = -s * dv.x() + c * dv.y();
      const double prev_heading =
          2.0 * std::atan2(prev_odometry_truth_->orientation.z(),
                           prev_odometry_truth_->orientation.w());
      reported.velocity.omega = std::remainder(state_.heading - prev_heading, 2.0 * M_PI) / dt;
    }
    RawOdometrySample truth = sample_odometry(reported, t, OdometryNoise{false, 0, 0},
                                              odometry_rng_);
    prev_odometry_truth_ = truth;
    events.odometry =
        config_.odometry_noise.enabled
            ? sample_odometry(reported, t, config_.odometry_noise, odometry_rng_)
            : truth;
  }

  if (ticks_ % imu_div_ == 0) {
    imu_history_.push_back({t, state_.velocity});
    while (imu_history_.size() > 4) imu_history_.pop_front();
    if (imu_history_.size() >= 2) {
      const std::vector<VelocitySnapshot> hist(imu_history_.begin(), imu_history_.end());
      events.imu = sample_imu(hist, t, config_.gravity, config_.imu_noise, imu_rng_);
    }
  }

  if (ticks_ % camera_div_ == 0) {
    events.camera = render_camera(world_, state_, t);
  }

  if (ticks_ % policy_div_ == 0 && !last_scan_.ranges.empty()) {
    command_ = explore_policy(state_, last_scan_, policy_rng_);
  }

  state_ = step_kinematics(world_, state_, command_, 1.0 / config_.tick_hz);
  ++ticks_;
  return events;
}

}  // namespace selfsense::sim
