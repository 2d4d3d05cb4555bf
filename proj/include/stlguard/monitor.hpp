#pragma once

#include <cstddef>
#include <limits>

#include <Eigen/Core>

#include "stlguard/formula.hpp"
#include "stlguard/trajectory.hpp"

namespace stlguard::stl {

/// Robustness of the constant `true`. Large but finite so that exponential
/// weighting downstream never sees infinity.
inline constexpr double kTopRobustness = 1e9;

/// Windows are clamped to the samples that exist. A window that lies entirely
/// past the end is empty: G over it holds (+inf), F and U over it fail (-inf).
///
/// Robustness of every subformula at every time step, one entry per sample.
Eigen::VectorXd robustness_signal(const Formula& f, const Trajectory& traj);
/// Boolean satisfaction of f at every time step.
Eigen::Array<bool, Eigen::Dynamic, 1> satisfaction_signal(const Formula& f, const Trajectory& traj);

/// Robustness of f at time t. Throws EvalError on an unknown channel or t >= length.
double robustness(const Formula& f, const Trajectory& traj, std::size_t t = 0);
/// Boolean satisfaction of f at time t. Same errors as robustness().
bool eval_boolean(const Formula& f, const Trajectory& traj, std::size_t t = 0);

/// Instantaneous robustness of a temporal-operator-free formula at one sample.
double robustness(const Formula& body, const Sample& sample);
bool eval_boolean(const Formula& body, const Sample& sample);

/// Incremental monitor for invariants  G(body)  over a growing prefix.
///
/// After n appends value() equals robustness(G(body), prefix_n, 0) bit for bit.
/// Before the first append value() is +infinity.
class OnlineMonitor {
 public:
  /// Throws EvalError unless `invariant` satisfies is_invariant().
  explicit OnlineMonitor(Formula invariant);

  double append(const Sample& sample);
  /// Running minimum the monitor would hold after appending `sample`.
  double peek(const Sample& sample) const;

  double value() const { return running_min_; }
  std::size_t steps() const { return steps_; }
  const Formula& formula() const { return formula_; }
  const Formula& body() const { return formula_.operand(); }

 private:
  Formula formula_;
  double running_min_ = std::numeric_limits<double>::infinity();
  std::size_t steps_ = 0;
};

}  // namespace stlguard::stl
