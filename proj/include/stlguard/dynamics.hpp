#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string_view>

#include <Eigen/Core>

#include "stlguard/trajectory.hpp"

namespace stlguard {

/// Discrete action vocabulary. The enumerator order is the logit index.
enum class Action : std::uint8_t { MoveAhead, MoveBack, RotateLeft, RotateRight, Done };

inline constexpr std::size_t kNumActions = 5;
inline constexpr std::array<Action, kNumActions> kActions{
    Action::MoveAhead, Action::MoveBack, Action::RotateLeft, Action::RotateRight, Action::Done};

constexpr std::size_t index(Action a) { return static_cast<std::size_t>(a); }
std::string_view name(Action a);
/// Throws ConfigError for an unknown name.
Action action_from_name(std::string_view name);

/// Leaves (x, z) unchanged under exact dynamics.
constexpr bool preserves_position(Action a) {
  return a == Action::RotateLeft || a == Action::RotateRight || a == Action::Done;
}

using Rng = std::mt19937_64;

/// Planar unicycle pose; theta lies in [-pi, pi).
template <typename Scalar>
struct BasicState {
  Scalar x{0};
  Scalar z{0};
  Scalar theta{0};

  Eigen::Matrix<Scalar, 2, 1> position() const { return {x, z}; }

  friend bool operator==(const BasicState&, const BasicState&) = default;
};

using State = BasicState<double>;

struct DynamicsConfig {
  double forward_step = 0.2;                      // m
  double yaw_step = std::numbers::pi / 6.0;       // rad
  double noise_translation_sigma = 0.0;           // m, per axis per step
  double noise_yaw_sigma = 0.0;                   // rad per step

  /// Throws ConfigError.
  void validate() const;
};

/// Wraps an angle into [-pi, pi). Exact for inputs already in range.
template <typename Scalar>
Scalar wrap_angle(Scalar theta) {
  constexpr Scalar kPi = std::numbers::pi_v<Scalar>;
  Scalar r = std::remainder(theta, Scalar(2) * kPi);
  if (r >= kPi) r -= Scalar(2) * kPi;
  return r;
}

template <typename Scalar>
BasicState<Scalar> step(const BasicState<Scalar>& s, Action a, const DynamicsConfig& cfg) {
  const Scalar d = static_cast<Scalar>(cfg.forward_step);
  const Scalar yaw = static_cast<Scalar>(cfg.yaw_step);
  BasicState<Scalar> out = s;
  switch (a) {
    case Action::MoveAhead:
      out.x = s.x + d * std::cos(s.theta);
      out.z = s.z + d * std::sin(s.theta);
      break;
    case Action::MoveBack:
      out.x = s.x - d * std::cos(s.theta);
      out.z = s.z - d * std::sin(s.theta);
      break;
    case Action::RotateLeft:
      out.theta = s.theta + yaw;
      break;
    case Action::RotateRight:
      out.theta = s.theta - yaw;
      break;
    case Action::Done:
      return s;
  }
  out.theta = wrap_angle(out.theta);
  return out;
}

/// Exact step followed by independent world-frame Gaussian offsets on x, z
/// (noise_translation_sigma) and theta (noise_yaw_sigma). Draws exactly three
/// normals per call, so the generator advances identically for every action.
State step_noisy(const State& s, Action a, const DynamicsConfig& cfg, Rng& rng);

/// Noise-free successor for every action, indexed by index(Action).
std::array<State, kNumActions> predict_successors(const State& s, const DynamicsConfig& cfg);

/// Channels x, z, theta at one instant.
stl::Sample state_sample(const State& s);
/// Channels x, z, theta over a state sequence (non-empty).
stl::Trajectory state_trajectory(std::span<const State> states);

}  // namespace stlguard
