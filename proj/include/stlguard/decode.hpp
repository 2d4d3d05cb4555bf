#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "stlguard/dynamics.hpp"
#include "stlguard/monitor.hpp"
#include "stlguard/policy.hpp"
#include "stlguard/scene.hpp"

namespace stlguard {

// ---------------------------------------------------------------------------
// Strategies

/// Sample straight from the policy logits.
struct Unconstrained {
  friend bool operator==(const Unconstrained&, const Unconstrained&) = default;
};

/// Sample from the policy; if the sampled action is predicted to violate the
/// invariant, execute `default_action` instead (a simplex-style fallback).
struct Filtering {
  Action default_action = Action::RotateLeft;
  friend bool operator==(const Filtering&, const Filtering&) = default;
};

/// Hard-constrained decoding: violating actions get logit -inf.
struct Hcd {
  friend bool operator==(const Hcd&, const Hcd&) = default;
};

/// Robustness-constrained decoding: logit_i += beta * exp(alpha * r_i).
struct Rcd {
  double alpha = 1.0;
  double beta = 1.0;
  friend bool operator==(const Rcd&, const Rcd&) = default;
};

using Strategy = std::variant<Unconstrained, Filtering, Hcd, Rcd>;

/// Short stable label, e.g. "hcd" or "rcd(alpha=1,beta=5)".
std::string label(const Strategy& s);
/// Throws ConfigError (non position-preserving fallback, alpha <= 0, beta < 0).
void validate(const Strategy& s);

// ---------------------------------------------------------------------------
// Logit transforms over arbitrary-length vectors

/// Exponent clamp for robustness weights.
inline constexpr double kMaxWeightExponent = 50.0;

/// Entries whose robustness is negative become -inf; others pass through
/// unchanged.
template <typename LogitsT, typename RobustT>
typename LogitsT::PlainObject mask_violations(const Eigen::MatrixBase<LogitsT>& logits,
                                              const Eigen::MatrixBase<RobustT>& robustness) {
  using Scalar = typename LogitsT::Scalar;
  return (robustness.array() < Scalar(0))
      .select(-std::numeric_limits<Scalar>::infinity(), logits.array())
      .matrix();
}

/// logits + beta * exp(clamp(alpha * robustness, +-50)). beta == 0 returns
/// the input unchanged.
template <typename LogitsT, typename RobustT>
typename LogitsT::PlainObject shift_by_robustness(const Eigen::MatrixBase<LogitsT>& logits,
                                                  const Eigen::MatrixBase<RobustT>& robustness,
                                                  typename LogitsT::Scalar alpha,
                                                  typename LogitsT::Scalar beta) {
  using Scalar = typename LogitsT::Scalar;
  if (beta == Scalar(0)) return logits;
  const auto exponent = (alpha * robustness.array()).max(-Scalar(kMaxWeightExponent)).min(Scalar(kMaxWeightExponent));
  return (logits.array() + beta * exponent.exp()).matrix();
}

// ---------------------------------------------------------------------------
// One decoding step

using ActionVector = Eigen::Matrix<double, static_cast<int>(kNumActions), 1>;

/// Running-minimum robustness the monitor would hold after each action's
/// noise-free successor. The monitor is not modified.
ActionVector successor_robustness(const State& s, const stl::OnlineMonitor& monitor, const DynamicsConfig& dyn);

Logits mask_logits_hcd(const Logits& logits, const State& s, const stl::OnlineMonitor& monitor,
                       const DynamicsConfig& dyn);

Logits reweight_logits_rcd(const Logits& logits, const State& s, const stl::OnlineMonitor& monitor,
                           const DynamicsConfig& dyn, double alpha, double beta);

/// Samples from the raw logits and substitutes `fallback` when the sample's
/// successor would drive the running minimum below zero.
Action filter_action(const Logits& logits, const State& s, const stl::OnlineMonitor& monitor,
                     const DynamicsConfig& dyn, Action fallback, const SamplerSpec& sampler, Rng& rng);

struct DecodeStepTrace {
  Logits raw_logits = Logits::Zero();
  Logits adjusted_logits = Logits::Zero();
  ActionVector robustness_per_action = ActionVector::Zero();
  std::array<bool, kNumActions> violated_mask{};
  Action chosen = Action::Done;
  /// HCD only: every action was masked and the least-violating one was taken.
  bool infeasible = false;
  /// Wall-clock time spent evaluating the specification for this step.
  double spec_eval_seconds = 0.0;
};

struct StepContext {
  const Scene& scene;
  const PolicyConfig& policy;
  const DynamicsConfig& dynamics;
  const SamplerSpec& sampler;
};

/// Computes logits, applies the strategy and picks an action. Every strategy
/// consumes the same amount of randomness from `rng` per step (none for
/// Greedy, one uniform otherwise), except HCD's all-masked fallback.
std::pair<Action, DecodeStepTrace> decode_step(const Strategy& strategy, const State& s,
                                               const stl::OnlineMonitor& monitor, const StepContext& ctx,
                                               Rng& rng);

// ---------------------------------------------------------------------------
// Episodes

struct EpisodeResult {
  std::uint64_t scene_seed = 0;
  Strategy strategy;
  SpecKind spec_kind = SpecKind::Avoid;
  bool stl_satisfied = false;
  bool success = false;
  std::size_t steps = 0;
  double min_robustness = 0.0;
  bool flagged_infeasible = false;
  /// states[i] is the pose before actions[i]. An episode that ends in Done
  /// has equal counts; a truncated one has one extra final state.
  std::vector<State> states;
  std::vector<Action> actions;

  // Not serialized.
  std::vector<DecodeStepTrace> traces;
  double spec_eval_seconds = 0.0;
  std::size_t spec_evals = 0;

  friend bool operator==(const EpisodeResult& a, const EpisodeResult& b);
};

struct RolloutConfig {
  PolicyConfig policy;
  /// Execution dynamics. Decoding always predicts with the noise-free model.
  DynamicsConfig dynamics;
  SamplerSpec sampler;
  std::size_t max_steps = 200;
  bool keep_traces = false;
};

/// Independent random streams for one episode.
struct EpisodeRngs {
  Rng sampling;
  Rng noise;
};

/// Streams for episode `scene_seed` under `spec`, independent of strategy so
/// that strategies are compared on paired randomness.
EpisodeRngs episode_rngs(std::uint64_t sampler_seed, std::uint64_t scene_seed, SpecKind spec);

/// Runs until Done or max_steps actions. The verdict is the batch robustness
/// of the full state trajectory (>= 0 counts as satisfied).
EpisodeResult rollout_episode(const Strategy& strategy, const Scene& scene, SpecKind spec,
                              const RolloutConfig& cfg, EpisodeRngs& rngs);

}  // namespace stlguard
