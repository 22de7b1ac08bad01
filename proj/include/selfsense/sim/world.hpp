#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace selfsense::sim {

using Vec2 = Eigen::Vector2d;

/// Convex polygon, vertices in counter-clockwise order, meters.
using Polygon = std::vector<Vec2>;

struct Rect {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  Vec2 center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }
  bool contains(const Vec2& p, double margin = 0.0) const {
    return p.x() >= xmin + margin && p.x() <= xmax - margin &&
           p.y() >= ymin + margin && p.y() <= ymax - margin;
  }
};

/// Deterministic 2D indoor environment: a rectangular boundary plus convex
/// obstacles. Identical seed yields an identical map.
struct WorldMap {
  Rect bounds;
  std::vector<Polygon> obstacles;
  std::uint64_t seed = 0;

  /// Large empty bounds; every lidar beam saturates at max range.
  static WorldMap open_space(double half_extent = 500.0);
  /// Empty square room centered at the origin.
  static WorldMap square_room(double side);
  /// Room with seeded convex obstacles and a free spawn region at the center.
  static WorldMap generate(std::uint64_t seed);

  static WorldMap load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

bool point_in_polygon(const Polygon& poly, const Vec2& p);
double distance_to_polygon(const Polygon& poly, const Vec2& p);
Vec2 closest_point_on_polygon(const Polygon& poly, const Vec2& p);
bool disc_intersects_polygon(const Polygon& poly, const Vec2& center, double radius);

/// Ray-segment intersection parameter along the ray direction (unit-free),
/// or nullopt when the ray misses the segment.
std::optional<double> ray_segment(const Vec2& origin, const Vec2& dir, const Vec2& a,
                                  const Vec2& b);

/// Distance from `origin` along `angle` to the nearest obstacle edge or
/// boundary wall, saturated at `max_range`.
double raycast(const WorldMap& world, const Vec2& origin, double angle, double max_range);

/// True when a disc footprint overlaps any obstacle or pokes outside bounds.
bool collides(const WorldMap& world, const Vec2& center, double radius);

}  // namespace selfsense::sim
