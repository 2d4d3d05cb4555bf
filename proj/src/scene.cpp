#include "stlguard/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stlguard/error.hpp"

namespace stlguard {
namespace {

constexpr int kMaxAttempts = 10000;
// Start and goal keep this clearance from avoid boxes.
constexpr double kClearance = 0.5;
constexpr double kWallClearance = 0.25;
constexpr double kConflictRadius = 0.5;
// Lateral offset of the conflict box center from the start-goal segment.
constexpr double kConflictOffset = 1.0;
// The conflict box grazes the corridor instead of sitting on the segment.
constexpr double kMinConflictGap = 0.4;
// Under conflict bias start and goal share a room and both sit this far
// from one of its outer walls.
constexpr double kWallBandLo = 0.3;
constexpr double kWallBandHi = 0.7;

Box shrink(const Box& b, double by) { return {b.x_lo + by, b.x_hi - by, b.z_lo + by, b.z_hi - by}; }

double point_box_distance(const Eigen::Vector2d& p, const Box& b) {
  const double dx = std::max({b.x_lo - p.x(), 0.0, p.x() - b.x_hi});
  const double dz = std::max({b.z_lo - p.y(), 0.0, p.y() - b.z_hi});
  return std::hypot(dx, dz);
}

// Slab clipping of the segment against the box.
bool segment_hits_box(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Box& box) {
  double t0 = 0.0;
  double t1 = 1.0;
  const Eigen::Vector2d d = b - a;
  const double lo[2] = {box.x_lo, box.z_lo};
  const double hi[2] = {box.x_hi, box.z_hi};
  for (int k = 0; k < 2; ++k) {
    if (d(k) == 0.0) {
      if (a(k) < lo[k] || a(k) > hi[k]) return false;
      continue;
    }
    double ta = (lo[k] - a(k)) / d(k);
    double tb = (hi[k] - a(k)) / d(k);
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

// Rooms whose union is connected through shared edges, not just corners.
bool edge_connected(const std::vector<int>& chosen) {
  if (chosen.size() != 2) return true;
  // quadrants 0/3 and 1/2 are diagonal
  return chosen[0] + chosen[1] != 3;
}

Eigen::Vector2d uniform_in(const Box& b, Rng& rng) {
  std::uniform_real_distribution<double> ux(b.x_lo, b.x_hi);
  std::uniform_real_distribution<double> uz(b.z_lo, b.z_hi);
  const double x = ux(rng);
  const double z = uz(rng);
  return {x, z};
}

bool in_union(const std::vector<Box>& rooms, const Eigen::Vector2d& p) {
  return std::any_of(rooms.begin(), rooms.end(), [&](const Box& r) { return r.contains(p.x(), p.y()); });
}

Box unit_area_box(const Eigen::Vector2d& center, Rng& rng) {
  // aspect ratio log-uniform in [1/2, 2]
  std::uniform_real_distribution<double> log_aspect(-std::log(2.0), std::log(2.0));
  const double w = std::sqrt(kAvoidBoxArea * std::exp(log_aspect(rng)));
  const double h = kAvoidBoxArea / w;
  return {center.x() - 0.5 * w, center.x() + 0.5 * w, center.y() - 0.5 * h, center.y() + 0.5 * h};
}

double segment_box_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Box& box) {
  if (segment_hits_box(a, b, box)) return 0.0;
  double best = std::min(point_box_distance(a, box), point_box_distance(b, box));
  const Eigen::Vector2d corners[4] = {
      {box.x_lo, box.z_lo}, {box.x_hi, box.z_lo}, {box.x_lo, box.z_hi}, {box.x_hi, box.z_hi}};
  for (const auto& c : corners) best = std::min(best, point_segment_distance(c, a, b));
  return best;
}

enum class Wall { XLo, XHi, ZLo, ZHi };

// Walls of `room` with no chosen room on the other side.
std::vector<Wall> outer_walls(const Box& room, const std::vector<Box>& rooms) {
  constexpr double kProbe = 1e-3;
  const double xm = 0.5 * (room.x_lo + room.x_hi);
  const double zm = 0.5 * (room.z_lo + room.z_hi);
  std::vector<Wall> out;
  if (!in_union(rooms, {room.x_lo - kProbe, zm})) out.push_back(Wall::XLo);
  if (!in_union(rooms, {room.x_hi + kProbe, zm})) out.push_back(Wall::XHi);
  if (!in_union(rooms, {xm, room.z_lo - kProbe})) out.push_back(Wall::ZLo);
  if (!in_union(rooms, {xm, room.z_hi + kProbe})) out.push_back(Wall::ZHi);
  return out;
}

// Point at `depth` inside the wall and `along` on the axis parallel to it.
Eigen::Vector2d off_wall(const Box& room, Wall w, double depth, double along) {
  switch (w) {
    case Wall::XLo: return {room.x_lo + depth, along};
    case Wall::XHi: return {room.x_hi - depth, along};
    case Wall::ZLo: return {along, room.z_lo + depth};
    case Wall::ZHi: return {along, room.z_hi - depth};
  }
  return {};
}

bool inside(const Box& outer, const Box& inner) {
  return inner.x_lo >= outer.x_lo && inner.x_hi <= outer.x_hi && inner.z_lo >= outer.z_lo &&
         inner.z_hi <= outer.z_hi;
}

}  // namespace

void Box::validate() const {
  if (!(x_lo < x_hi) || !(z_lo < z_hi)) throw ConfigError("box bounds must satisfy lo < hi");
}

std::string_view name(SpecKind k) { return k == SpecKind::Avoid ? "avoid" : "geofence"; }

SpecKind spec_kind_from_name(std::string_view text) {
  if (text == "avoid") return SpecKind::Avoid;
  if (text == "geofence") return SpecKind::Geofence;
  throw ConfigError("unknown spec kind '" + std::string(text) + "'");
}

void Scene::validate() const {
  bounds.validate();
  for (const Box& b : avoid_boxes) {
    b.validate();
    if (std::abs(b.area() - kAvoidBoxArea) > 1e-9) throw ConfigError("avoid box area must be 1 m^2");
  }
  if (geofence_rooms.empty()) throw ConfigError("scene needs at least one geofence room");
  for (const Box& r : geofence_rooms) r.validate();
  if (!(start.theta >= -std::numbers::pi && start.theta < std::numbers::pi)) {
    throw ConfigError("start heading must lie in [-pi, pi)");
  }
  const Eigen::Vector2d s = start.position();
  if (!bounds.contains(s.x(), s.y())) throw ConfigError("start lies outside the world bounds");
  for (const Box& b : avoid_boxes) {
    if (b.contains(s.x(), s.y())) throw ConfigError("start lies inside an avoid box");
  }
  if (!in_union(geofence_rooms, s)) throw ConfigError("start lies outside every geofence room");
  if (!bounds.contains(goal.x(), goal.y())) throw ConfigError("goal lies outside the world bounds");
  if (!in_union(geofence_rooms, goal)) throw ConfigError("goal lies outside every geofence room");
}

void SceneGenConfig::validate() const {
  if (!(world_size > 4.0 * kClearance)) throw ConfigError("world_size too small");
  if (n_avoid < 0) throw ConfigError("n_avoid must be >= 0");
  if (n_rooms < 1 || n_rooms > 4) throw ConfigError("n_rooms must be in [1, 4]");
  if (!(goal_min_dist >= 0.0) || !(goal_min_dist < world_size * std::numbers::sqrt2)) {
    throw ConfigError("goal_min_dist must be in [0, world_size*sqrt(2))");
  }
}

std::vector<Box> quadrant_rooms(const Box& bounds) {
  const double xm = 0.5 * (bounds.x_lo + bounds.x_hi);
  const double zm = 0.5 * (bounds.z_lo + bounds.z_hi);
  return {{bounds.x_lo, xm, bounds.z_lo, zm},
          {xm, bounds.x_hi, bounds.z_lo, zm},
          {bounds.x_lo, xm, zm, bounds.z_hi},
          {xm, bounds.x_hi, zm, bounds.z_hi}};
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d d = b - a;
  const double len2 = d.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (a + t * d - p).norm();
}

bool box_meets_inflated_segment(const Box& box, const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                double radius) {
  return segment_box_distance(a, b, box) <= radius;
}

Scene generate_scene(const SceneGenConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5ce9eu};
  Rng rng(seq);

  Scene scene;
  scene.seed = seed;
  scene.bounds = {0.0, cfg.world_size, 0.0, cfg.world_size};
  const std::vector<Box> quads = quadrant_rooms(scene.bounds);

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // Room subset.
    std::vector<int> order{0, 1, 2, 3};
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> chosen(order.begin(), order.begin() + cfg.n_rooms);
    std::sort(chosen.begin(), chosen.end());
    if (!edge_connected(chosen)) continue;
    scene.geofence_rooms.clear();
    for (int q : chosen) scene.geofence_rooms.push_back(quads[static_cast<std::size_t>(q)]);

    // Start and goal.
    std::uniform_int_distribution<std::size_t> pick(0, chosen.size() - 1);
    Eigen::Vector2d s;
    Eigen::Vector2d g;
    if (cfg.conflict_bias) {
      const Box& room = scene.geofence_rooms[pick(rng)];
      const std::vector<Wall> walls = outer_walls(room, scene.geofence_rooms);
      if (walls.empty()) continue;
      const Wall w = walls[std::uniform_int_distribution<std::size_t>(0, walls.size() - 1)(rng)];
      const bool vertical = w == Wall::XLo || w == Wall::XHi;
      std::uniform_real_distribution<double> depth(kWallBandLo, kWallBandHi);
      std::uniform_real_distribution<double> along(vertical ? room.z_lo + kWallClearance : room.x_lo + kWallClearance,
                                                    vertical ? room.z_hi - kWallClearance : room.x_hi - kWallClearance);
      const double ds = depth(rng);
      const double dg = depth(rng);
      const double as = along(rng);
      const double ag = along(rng);
      s = off_wall(room, w, ds, as);
      g = off_wall(room, w, dg, ag);
    } else {
      s = uniform_in(shrink(scene.geofence_rooms[pick(rng)], kWallClearance), rng);
      g = uniform_in(shrink(scene.geofence_rooms[pick(rng)], kWallClearance), rng);
    }
    std::uniform_real_distribution<double> heading(-std::numbers::pi, std::numbers::pi);
    scene.start = {s.x(), s.y(), wrap_angle(heading(rng))};
    scene.goal = g;
    if ((g - s).norm() < cfg.goal_min_dist) continue;

    // Avoid boxes.
    scene.avoid_boxes.clear();
    bool ok = true;
    for (int i = 0; i < cfg.n_avoid && ok; ++i) {
      bool placed = false;
      for (int tries = 0; tries < 100 && !placed; ++tries) {
        Eigen::Vector2d center;
        if (cfg.conflict_bias && i == 0) {
          std::uniform_real_distribution<double> along(0.3, 0.7);
          std::uniform_real_distribution<double> across(-kConflictOffset, kConflictOffset);
          const Eigen::Vector2d dir = (g - s).normalized();
          const Eigen::Vector2d normal(-dir.y(), dir.x());
          const double u = along(rng);
          const double v = across(rng);
          center = s + u * (g - s) + v * normal;
        } else {
          center = uniform_in(scene.bounds, rng);
        }
        const Box box = unit_area_box(center, rng);
        if (!inside(scene.bounds, box)) continue;
        if (point_box_distance(s, box) < kClearance || point_box_distance(g, box) < kClearance) continue;
        if (cfg.conflict_bias && i == 0) {
          const double gap = segment_box_distance(s, g, box);
          if (gap < kMinConflictGap || gap > kConflictRadius) continue;
        }
        scene.avoid_boxes.push_back(box);
        placed = true;
      }
      ok = placed;
    }
    if (!ok) continue;

    scene.validate();
    return scene;
  }
  throw ConfigError("scene generation failed after " + std::to_string(kMaxAttempts) +
                    " attempts; configuration is overconstrained");
}

stl::Formula box_membership(const Box& box) {
  using stl::Relation;
  return stl::conjunction({stl::atom("x", Relation::GE, box.x_lo), stl::atom("x", Relation::LE, box.x_hi),
                           stl::atom("z", Relation::GE, box.z_lo), stl::atom("z", Relation::LE, box.z_hi)});
}

stl::Formula build_avoid_spec(const Scene& scene) {
  std::vector<stl::Formula> parts;
  parts.reserve(scene.avoid_boxes.size());
  for (const Box& b : scene.avoid_boxes) parts.push_back(!box_membership(b));
  return stl::globally(stl::conjunction(parts));
}

stl::Formula build_geofence_spec(const Scene& scene) {
  if (scene.geofence_rooms.empty()) throw ConfigError("geofence spec needs at least one room");
  std::vector<stl::Formula> parts;
  parts.reserve(scene.geofence_rooms.size());
  for (const Box& r : scene.geofence_rooms) parts.push_back(box_membership(r));
  return stl::globally(stl::disjunction(parts));
}

stl::Formula build_spec(const Scene& scene, SpecKind kind) {
  return kind == SpecKind::Avoid ? build_avoid_spec(scene) : build_geofence_spec(scene);
}

bool check_success(const stl::Trajectory& traj, std::optional<Action> last_action, const Scene& scene) {
  if (last_action != Action::Done) return false;
  const auto last = static_cast<Eigen::Index>(traj.length() - 1);
  const Eigen::Vector2d p(traj.channel("x")(last), traj.channel("z")(last));
  return (p - scene.goal).norm() <= kSuccessRadius;
}

}  // namespace stlguard
