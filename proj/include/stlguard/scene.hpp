#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "stlguard/dynamics.hpp"
#include "stlguard/formula.hpp"
#include "stlguard/trajectory.hpp"

namespace stlguard {

/// Axis-aligned rectangle in the x-z plane, closed on all sides.
struct Box {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double z_lo = 0.0;
  double z_hi = 0.0;

  double width() const { return x_hi - x_lo; }
  double height() const { return z_hi - z_lo; }
  double area() const { return width() * height(); }
  Eigen::Vector2d center() const { return {0.5 * (x_lo + x_hi), 0.5 * (z_lo + z_hi)}; }
  bool contains(double x, double z) const { return x >= x_lo && x <= x_hi && z >= z_lo && z <= z_hi; }

  /// Throws ConfigError unless x_lo < x_hi and z_lo < z_hi.
  void validate() const;

  friend bool operator==(const Box&, const Box&) = default;
};

enum class SpecKind { Avoid, Geofence };

std::string_view name(SpecKind k);
/// Accepts "avoid" and "geofence". Throws ConfigError otherwise.
SpecKind spec_kind_from_name(std::string_view text);

/// Area of every avoid region, m^2.
inline constexpr double kAvoidBoxArea = 1.0;
/// Success radius around the goal, m.
inline constexpr double kSuccessRadius = 1.0;

struct Scene {
  std::uint64_t seed = 0;
  Box bounds;
  std::vector<Box> avoid_boxes;
  std::vector<Box> geofence_rooms;
  State start;
  Eigen::Vector2d goal = Eigen::Vector2d::Zero();

  /// Throws ConfigError if any scene invariant is broken.
  void validate() const;

  friend bool operator==(const Scene&, const Scene&) = default;
};

struct SceneGenConfig {
  double world_size = 10.0;
  int n_avoid = 2;
  int n_rooms = 2;
  double goal_min_dist = 4.0;
  /// Start and goal run along an outer wall of one room, and the first avoid
  /// box grazes the corridor between them.
  bool conflict_bias = true;

  void validate() const;

  friend bool operator==(const SceneGenConfig&, const SceneGenConfig&) = default;
};

/// Deterministic in (cfg, seed). Throws ConfigError when the configuration
/// cannot be satisfied within a bounded number of attempts.
Scene generate_scene(const SceneGenConfig& cfg, std::uint64_t seed);

/// The four quadrant rooms of a square world, ordered (lo x, lo z), (hi x, lo z),
/// (lo x, hi z), (hi x, hi z).
std::vector<Box> quadrant_rooms(const Box& bounds);

/// Distance from a point to a segment.
double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b);
/// Whether the box meets the set of points within `radius` of segment ab.
bool box_meets_inflated_segment(const Box& box, const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                double radius);

/// x >= lo & x <= hi & z >= lo & z <= hi
stl::Formula box_membership(const Box& box);
/// G(AND_i !(membership of avoid box i)); G(true) when there are no boxes.
stl::Formula build_avoid_spec(const Scene& scene);
/// G(OR_i membership of room i). Throws ConfigError for an empty room list.
stl::Formula build_geofence_spec(const Scene& scene);
stl::Formula build_spec(const Scene& scene, SpecKind kind);

/// Final position within kSuccessRadius of the goal (inclusive) and the last
/// action issued was Done.
bool check_success(const stl::Trajectory& traj, std::optional<Action> last_action, const Scene& scene);

}  // namespace stlguard
