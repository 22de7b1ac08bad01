#include "selfsense/sim/world.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>

#include "selfsense/errors.hpp"
#include "selfsense/rng.hpp"

namespace selfsense::sim {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 closest_point_on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return a;
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

Polygon make_box(double cx, double cy, double hx, double hy) {
  return {Vec2{cx - hx, cy - hy}, Vec2{cx + hx, cy - hy}, Vec2{cx + hx, cy + hy},
          Vec2{cx - hx, cy + hy}};
}

}  // namespace

bool point_in_polygon(const Polygon& poly, const Vec2& p) {
  // Convex CCW polygon: inside iff p is left of (or on) every edge.
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    if (cross2(b - a, p - a) < 0.0) return false;
  }
  return true;
}

Vec2 closest_point_on_polygon(const Polygon& poly, const Vec2& p) {
  double best = std::numeric_limits<double>::infinity();
  Vec2 best_point = poly.front();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 q = closest_point_on_segment(poly[i], poly[(i + 1) % n], p);
    const double d = (q - p).squaredNorm();
    if (d < best) {
      best = d;
      best_point = q;
    }
  }
  return best_point;
}

double distance_to_polygon(const Polygon& poly, const Vec2& p) {
  if (point_in_polygon(poly, p)) return 0.0;
  return (closest_point_on_polygon(poly, p) - p).norm();
}

bool disc_intersects_polygon(const Polygon& poly, const Vec2& center, double radius) {
  return distance_to_polygon(poly, center) < radius;
}

std::optional<double> ray_segment(const Vec2& origin, const Vec2& dir, const Vec2& a,
                                  const Vec2& b) {
  const Vec2 seg = b - a;
  const double denom = cross2(dir, seg);
  if (std::abs(denom) < 1e-15) return std::nullopt;  // parallel
  const Vec2 ao = a - origin;
  const double t = cross2(ao, seg) / denom;  // along the ray
  const double u = cross2(ao, dir) / denom;  // along the segment
  if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

double raycast(const WorldMap& world, const Vec2& origin, double angle, double max_range) {
  const Vec2 dir{std::cos(angle), std::sin(angle)};
  double best = max_range;

  auto consider = [&](const Vec2& a, const Vec2& b) {
    if (auto t = ray_segment(origin, dir, a, b); t && *t < best) best = *t;
  };

  const Rect& r = world.bounds;
  consider({r.xmin, r.ymin}, {r.xmax, r.ymin});
  consider({r.xmax, r.ymin}, {r.xmax, r.ymax});
  consider({r.xmax, r.ymax}, {r.xmin, r.ymax});
  consider({r.xmin, r.ymax}, {r.xmin, r.ymin});

  for (const Polygon& poly : world.obstacles) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) consider(poly[i], poly[(i + 1) % n]);
  }
  return best;
}

bool collides(const WorldMap& world, const Vec2& center, double radius) {
  if (!world.bounds.contains(center, radius)) return true;
  for (const Polygon& poly : world.obstacles) {
    if (disc_intersects_polygon(poly, center, radius)) return true;
  }
  return false;
}

WorldMap WorldMap::open_space(double half_extent) {
  WorldMap w;
  w.bounds = {-half_extent, -half_extent, half_extent, half_extent};
  return w;
}

WorldMap WorldMap::square_room(double side) {
  WorldMap w;
  const double h = 0.5 * side;
  w.bounds = {-h, -h, h, h};
  return w;
}

WorldMap WorldMap::generate(std::uint64_t seed) {
  WorldMap w;
  w.seed = seed;
  w.bounds = {-6.0, -5.0, 6.0, 5.0};  // a 12 x 10 m hall

  RandomStream rng(derive_seed(seed, "world"));
  const int count = 3 + static_cast<int>(rng.uniform_int(0, 2));
  const double spawn_clear = 1.6;  // keep the center free for the robot

  for (int i = 0; i < count; ++i) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      const double hx = rng.uniform(0.3, 0.9);
      const double hy = rng.uniform(0.3, 0.9);
      const double cx = rng.uniform(w.bounds.xmin + hx + 0.5, w.bounds.xmax - hx - 0.5);
      const double cy = rng.uniform(w.bounds.ymin + hy + 0.5, w.bounds.ymax - hy - 0.5);
      if (std::hypot(cx, cy) < spawn_clear + std::hypot(hx, hy)) continue;

      Polygon poly;
      if (rng.uniform() < 0.7) {
        poly = make_box(cx, cy, hx, hy);
      } else {
        // convex n-gon inscribed in an ellipse
        const int verts = 5;
        for (int k = 0; k < verts; ++k) {
          const double a = 2.0 * M_PI * k / verts;
          poly.push_back(Vec2{cx + hx * std::cos(a), cy + hy * std::sin(a)});
        }
      }
      bool overlaps = false;
      for (const Polygon& other : w.obstacles) {
        for (const Vec2& v : poly) {
          if (distance_to_polygon(other, v) < 0.4) overlaps = true;
        }
      }
      if (!overlaps) {
        w.obstacles.push_back(std::move(poly));
        break;
      }
    }
  }
  return w;
}

WorldMap WorldMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open world file: " + path.string());
  nlohmann::json j;
  in >> j;

  WorldMap w;
  const auto& b = j.at("bounds");
  w.bounds = {b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>(),
              b.at(3).get<double>()};
  for (const auto& poly_json : j.value("obstacles", nlohmann::json::array())) {
    Polygon poly;
    for (const auto& v : poly_json) {
      poly.push_back(Vec2{v.at(0).get<double>(), v.at(1).get<double>()});
    }
    if (poly.size() < 3) throw ConfigError("obstacle polygon needs at least 3 vertices");
    w.obstacles.push_back(std::move(poly));
  }
  w.seed = j.value("seed", std::uint64_t{0});
  return w;
}

void WorldMap::save(const std::filesystem::path& path) const {
  nlohmann::ordered_json j;
  j["bounds"] = {bounds.xmin, bounds.ymin, bounds.xmax, bounds.ymax};
  auto obstacles_json = nlohmann::ordered_json::array();
  for (const Polygon& poly : obstacles) {
    auto poly_json = nlohmann::ordered_json::array();
    for (const Vec2& v : poly) poly_json.push_back({v.x(), v.y()});
    obstacles_json.push_back(poly_json);
  }
  j["obstacles"] = obstacles_json;
  j["seed"] = seed;

  std::ofstream out(path);
  if (!out) throw IoError("cannot write world file: " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace selfsense::sim
