#include <cmath>

#include "selfsense/sim/robot.hpp"

namespace selfsense::sim {

namespace {

Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

/// Outward surface normal at the contact, estimated from the nearest
/// obstacle feature or the violated wall.
Vec2 contact_normal(const WorldMap& world, const Vec2& pos, double radius) {
  Vec2 n{0, 0};
  const Rect& b = world.bounds;
  if (pos.x() - radius <= b.xmin) n += Vec2{1, 0};
  if (pos.x() + radius >= b.xmax) n += Vec2{-1, 0};
  if (pos.y() - radius <= b.ymin) n += Vec2{0, 1};
  if (pos.y() + radius >= b.ymax) n += Vec2{0, -1};

  double best = radius + 1e-6;
  for (const Polygon& poly : world.obstacles) {
    const Vec2 q = closest_point_on_polygon(poly, pos);
    const double d = (pos - q).norm();
    if (d < best && d > 1e-12) {
      best = d;
      n = (pos - q) / d;
    }
  }
  if (n.squaredNorm() == 0.0) return {0, 0};
  return n.normalized();
}

}  // namespace

BodyVelocity clamp_speed(const BodyVelocity& cmd, double max_speed) {
  const double speed = std::hypot(cmd.vx, cmd.vy);
  if (speed <= max_speed || speed == 0.0) return cmd;
  const double k = max_speed / speed;
  return {cmd.vx * k, cmd.vy * k, cmd.omega};
}

RobotState step_kinematics(const WorldMap& world, const RobotState& state,
                           const BodyVelocity& cmd, double dt) {
  RobotState next = state;
  next.velocity = clamp_speed(cmd, state.max_speed);

  const Vec2 v_world = rotate({next.velocity.vx, next.velocity.vy}, state.heading);
  const Vec2 target = state.position + dt * v_world;
  const double r = state.footprint_radius();

  if (!collides(world, target, r)) {
    next.position = target;
  } else {
    // Binary search for the last collision-free fraction of the step.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 40; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (collides(world, state.position + mid * dt * v_world, r)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    next.position = state.position + lo * dt * v_world;

    // Zero the velocity component pushing into the surface.
    const Vec2 n = contact_normal(world, next.position, r);
    if (n.squaredNorm() > 0.0) {
      const double into = v_world.dot(n);
      if (into < 0.0) {
        const Vec2 v_slide = v_world - into * n;
        const Vec2 v_body = rotate(v_slide, -state.heading);
        next.velocity.vx = v_body.x();
        next.velocity.vy = v_body.y();
      }
    }
  }

  next.heading = std::remainder(state.heading + next.velocity.omega * dt, 2.0 * M_PI);
  return next;
}

}  // namespace selfsense::sim
