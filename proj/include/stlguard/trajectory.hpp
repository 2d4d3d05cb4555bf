#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace stlguard::stl {

/// One time instant: channel name -> value.
using Sample = std::map<std::string, double, std::less<>>;

/// Uniformly sampled multi-channel signal. Every channel has the same length,
/// which is at least one.
class Trajectory {
 public:
  using Channels = std::map<std::string, Eigen::VectorXd, std::less<>>;

  explicit Trajectory(Channels channels);

  std::size_t length() const { return length_; }
  bool has_channel(std::string_view name) const;
  /// Throws EvalError for an unknown channel.
  const Eigen::VectorXd& channel(std::string_view name) const;
  const Channels& channels() const { return channels_; }

  Sample sample(std::size_t t) const;
  /// First n samples, 1 <= n <= length().
  Trajectory prefix(std::size_t n) const;

 private:
  Channels channels_;
  std::size_t length_ = 0;
};

}  // namespace stlguard::stl
