#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>

#include <Eigen/Core>

#include "stlguard/dynamics.hpp"
#include "stlguard/error.hpp"
#include "stlguard/scene.hpp"

namespace stlguard {

/// One score per action, indexed by index(Action).
template <typename Scalar>
using BasicLogits = Eigen::Matrix<Scalar, static_cast<int>(kNumActions), 1>;
using Logits = BasicLogits<double>;

/// Potential-field stand-in for a learned policy head.
struct PolicyConfig {
  double goal_weight = 5.0;      // 1/m
  double heading_weight = 2.0;
  double done_distance = 1.0;    // m
  double temperature = 1.0;
  /// Subtracted from the MoveBack logit so that a goal behind the agent is
  /// approached by turning rather than reversing.
  double reverse_penalty = 1.0;

  void validate() const;

  friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

/// Logit of Done when inside / outside done_distance (before temperature).
inline constexpr double kDoneLogit = 10.0;

/// Movement action a scores
///   goal_weight * (d(s) - d(s')) + heading_weight * cos(bearing error at s')
/// with s' = step(s, a); Done scores +-kDoneLogit. Everything is divided by
/// the temperature.
Logits compute_logits(const State& s, const Scene& scene, const PolicyConfig& cfg,
                      const DynamicsConfig& dyn = {});

enum class SamplerMode { Greedy, Temperature, TopK };

std::string_view name(SamplerMode m);
SamplerMode sampler_mode_from_name(std::string_view text);

struct SamplerSpec {
  SamplerMode mode = SamplerMode::Temperature;
  std::size_t k = kNumActions;  // TopK only
  std::uint64_t seed = 0;       // base of the per-episode sampling streams

  void validate() const;

  friend bool operator==(const SamplerSpec&, const SamplerSpec&) = default;
};

/// Numerically stable softmax; -inf entries get probability exactly 0.
/// Throws InfeasibleError when every entry is -inf.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> softmax(const Eigen::MatrixBase<Derived>& logits) {
  using Scalar = typename Derived::Scalar;
  const Scalar top = logits.maxCoeff();
  if (top == -std::numeric_limits<Scalar>::infinity()) throw InfeasibleError("all logits are -inf");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> p = (logits.array() - top).exp().matrix();
  return p / p.sum();
}

/// Index of the largest entry; ties go to the lowest index.
template <typename Derived>
Eigen::Index argmax(const Eigen::MatrixBase<Derived>& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(best)) best = i;
  }
  return best;
}

/// Draws an index from a logit vector of any length. Greedy consumes no
/// randomness; Temperature and TopK consume exactly one uniform draw.
/// Throws InfeasibleError when every entry is -inf.
std::size_t sample_index(const Eigen::Ref<const Eigen::VectorXd>& logits, const SamplerSpec& spec, Rng& rng);

Action sample(const Logits& logits, const SamplerSpec& spec, Rng& rng);

}  // namespace stlguard
