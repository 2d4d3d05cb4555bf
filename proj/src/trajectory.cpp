#include "stlguard/trajectory.hpp"

#include "stlguard/error.hpp"

namespace stlguard::stl {

Trajectory::Trajectory(Channels channels) : channels_(std::move(channels)) {
  if (channels_.empty()) throw EvalError("trajectory has no channels");
  length_ = static_cast<std::size_t>(channels_.begin()->second.size());
  for (const auto& [name, values] : channels_) {
    if (static_cast<std::size_t>(values.size()) != length_) {
      throw EvalError("channel '" + name + "' has " + std::to_string(values.size()) +
                      " samples, expected " + std::to_string(length_));
    }
  }
  if (length_ == 0) throw EvalError("trajectory must have at least one sample");
}

bool Trajectory::has_channel(std::string_view name) const {
  return channels_.find(name) != channels_.end();
}

const Eigen::VectorXd& Trajectory::channel(std::string_view name) const {
  auto it = channels_.find(name);
  if (it == channels_.end()) throw EvalError("unknown channel '" + std::string(name) + "'");
  return it->second;
}

Sample Trajectory::sample(std::size_t t) const {
  if (t >= length_) throw EvalError("time index " + std::to_string(t) + " out of range");
  Sample s;
  for (const auto& [name, values] : channels_) s.emplace(name, values(static_cast<Eigen::Index>(t)));
  return s;
}

Trajectory Trajectory::prefix(std::size_t n) const {
  if (n == 0 || n > length_) throw EvalError("prefix length " + std::to_string(n) + " out of range");
  Channels out;
  for (const auto& [name, values] : channels_) out.emplace(name, values.head(static_cast<Eigen::Index>(n)));
  return Trajectory(std::move(out));
}

}  // namespace stlguard::stl
