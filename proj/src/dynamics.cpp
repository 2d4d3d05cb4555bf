#include "stlguard/dynamics.hpp"

#include <string>

#include "stlguard/error.hpp"

namespace stlguard {

std::string_view name(Action a) {
  switch (a) {
    case Action::MoveAhead: return "MoveAhead";
    case Action::MoveBack: return "MoveBack";
    case Action::RotateLeft: return "RotateLeft";
    case Action::RotateRight: return "RotateRight";
    case Action::Done: return "Done";
  }
  return "?";
}

Action action_from_name(std::string_view text) {
  for (Action a : kActions) {
    if (name(a) == text) return a;
  }
  throw ConfigError("unknown action '" + std::string(text) + "'");
}

void DynamicsConfig::validate() const {
  if (!(forward_step > 0.0)) throw ConfigError("forward_step must be positive");
  if (!(yaw_step > 0.0)) throw ConfigError("yaw_step must be positive");
  if (!(noise_translation_sigma >= 0.0) || !(noise_yaw_sigma >= 0.0)) {
    throw ConfigError("noise sigmas must be non-negative");
  }
}

State step_noisy(const State& s, Action a, const DynamicsConfig& cfg, Rng& rng) {
  std::normal_distribution<double> unit(0.0, 1.0);
  const double dx = unit(rng);
  const double dz = unit(rng);
  const double dtheta = unit(rng);
  State out = step(s, a, cfg);
  out.x += cfg.noise_translation_sigma * dx;
  out.z += cfg.noise_translation_sigma * dz;
  out.theta = wrap_angle(out.theta + cfg.noise_yaw_sigma * dtheta);
  return out;
}

std::array<State, kNumActions> predict_successors(const State& s, const DynamicsConfig& cfg) {
  std::array<State, kNumActions> out;
  for (Action a : kActions) out[index(a)] = step(s, a, cfg);
  return out;
}

stl::Sample state_sample(const State& s) { return {{"theta", s.theta}, {"x", s.x}, {"z", s.z}}; }

stl::Trajectory state_trajectory(std::span<const State> states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::VectorXd x(n), z(n), theta(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const State& s = states[static_cast<std::size_t>(i)];
    x(i) = s.x;
    z(i) = s.z;
    theta(i) = s.theta;
  }
  return stl::Trajectory({{"theta", std::move(theta)}, {"x", std::move(x)}, {"z", std::move(z)}});
}

}  // namespace stlguard
