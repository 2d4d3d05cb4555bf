#include "stlguard/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace stlguard {

void PolicyConfig::validate() const {
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  if (!(goal_weight >= 0.0) || !(heading_weight >= 0.0)) throw ConfigError("policy weights must be >= 0");
  if (!(done_distance >= 0.0)) throw ConfigError("done_distance must be >= 0");
  if (!(reverse_penalty >= 0.0)) throw ConfigError("reverse_penalty must be >= 0");
}

Logits compute_logits(const State& s, const Scene& scene, const PolicyConfig& cfg, const DynamicsConfig& dyn) {
  const double here = (scene.goal - s.position()).norm();
  Logits out;
  for (Action a : kActions) {
    if (a == Action::Done) {
      out(index(a)) = here <= cfg.done_distance ? kDoneLogit : -kDoneLogit;
      continue;
    }
    const State next = step(s, a, dyn);
    const Eigen::Vector2d to_goal = scene.goal - next.position();
    const double bearing_error = wrap_angle(std::atan2(to_goal.y(), to_goal.x()) - next.theta);
    double logit = cfg.goal_weight * (here - to_goal.norm()) + cfg.heading_weight * std::cos(bearing_error);
    if (a == Action::MoveBack) logit -= cfg.reverse_penalty;
    out(index(a)) = logit;
  }
  return out / cfg.temperature;
}

std::string_view name(SamplerMode m) {
  switch (m) {
    case SamplerMode::Greedy: return "greedy";
    case SamplerMode::Temperature: return "temperature";
    case SamplerMode::TopK: return "top_k";
  }
  return "?";
}

SamplerMode sampler_mode_from_name(std::string_view text) {
  for (SamplerMode m : {SamplerMode::Greedy, SamplerMode::Temperature, SamplerMode::TopK}) {
    if (name(m) == text) return m;
  }
  throw ConfigError("unknown sampler mode '" + std::string(text) + "'");
}

void SamplerSpec::validate() const {
  if (mode == SamplerMode::TopK && (k < 1 || k > kNumActions)) {
    throw ConfigError("top_k needs 1 <= k <= " + std::to_string(kNumActions));
  }
}

std::size_t sample_index(const Eigen::Ref<const Eigen::VectorXd>& logits, const SamplerSpec& spec, Rng& rng) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (logits.size() == 0 || logits.maxCoeff() == kNegInf) throw InfeasibleError("all logits are -inf");

  if (spec.mode == SamplerMode::Greedy) return static_cast<std::size_t>(argmax(logits));

  Eigen::VectorXd kept = logits;
  if (spec.mode == SamplerMode::TopK && static_cast<Eigen::Index>(spec.k) < logits.size()) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(logits.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return logits(a) > logits(b); });
    for (std::size_t r = spec.k; r < order.size(); ++r) kept(order[r]) = kNegInf;
  }

  const Eigen::VectorXd p = softmax(kept);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double cumulative = 0.0;
  Eigen::Index last_positive = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) <= 0.0) continue;
    last_positive = i;
    cumulative += p(i);
    if (u < cumulative) return static_cast<std::size_t>(i);
  }
  return static_cast<std::size_t>(last_positive);
}

Action sample(const Logits& logits, const SamplerSpec& spec, Rng& rng) {
  return kActions[sample_index(logits, spec, rng)];
}

}  // namespace stlguard
