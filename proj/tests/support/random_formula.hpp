#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "naive_oracle.hpp"
#include "stlguard/formula.hpp"
#include "stlguard/trajectory.hpp"

namespace gen {

using stlguard::stl::Formula;
using Rng = std::mt19937_64;

inline const std::vector<std::string>& channel_names() {
  static const std::vector<std::string> names{"x", "z"};
  return names;
}

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline int integer(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Constants snapped to a 0.25 grid so that boundary hits (margin exactly 0) occur.
inline double grid(Rng& rng, double lo, double hi) { return 0.25 * integer(rng, static_cast<int>(lo * 4), static_cast<int>(hi * 4)); }

inline stlguard::stl::Predicate predicate(Rng& rng) {
  using stlguard::stl::Relation;
  stlguard::stl::Coefficients c;
  c["x"] = 0.0;
  if (integer(rng, 0, 2) != 0) c["x"] = integer(rng, 0, 1) ? 1.0 : grid(rng, -2, 2);
  if (c["x"] == 0.0 || integer(rng, 0, 1)) c["z"] = integer(rng, 0, 1) ? 1.0 : grid(rng, -2, 2);
  if (c["x"] == 0.0 && (!c.count("z") || c["z"] == 0.0)) c["z"] = 1.0;
  const Relation rel = static_cast<Relation>(integer(rng, 0, 3));
  return {c, rel, grid(rng, -2, 2)};
}

inline std::optional<stlguard::stl::Interval> window(Rng& rng, bool required) {
  if (!required && integer(rng, 0, 2) == 0) return std::nullopt;
  const int lo = integer(rng, 0, 4);
  return stlguard::stl::Interval(lo, lo + integer(rng, 0, 5));
}

/// Random formula with at most `depth` nested operators.
inline Formula formula(Rng& rng, int depth) {
  using namespace stlguard::stl;
  if (depth <= 0) {
    if (integer(rng, 0, 19) == 0) return truth(integer(rng, 0, 1) == 1);
    return atom(predicate(rng));
  }
  switch (integer(rng, 0, 7)) {
    case 0: return atom(predicate(rng));
    case 1: return !formula(rng, depth - 1);
    case 2: {
      const Formula a = formula(rng, depth - 1);
      return a & formula(rng, depth - 1);
    }
    case 3: {
      const Formula a = formula(rng, depth - 1);
      return a | formula(rng, depth - 1);
    }
    case 4: return globally(window(rng, false), formula(rng, depth - 1));
    case 5: return eventually(window(rng, false), formula(rng, depth - 1));
    default: {
      const Formula a = formula(rng, depth - 1);
      const auto w = *window(rng, true);
      return until(a, w, formula(rng, depth - 1));
    }
  }
}

/// Random temporal-free body with at most `depth` nested operators.
inline Formula body(Rng& rng, int depth) {
  using namespace stlguard::stl;
  if (depth <= 0) return atom(predicate(rng));
  switch (integer(rng, 0, 3)) {
    case 0: return atom(predicate(rng));
    case 1: return !body(rng, depth - 1);
    case 2: {
      const Formula a = body(rng, depth - 1);
      return a & body(rng, depth - 1);
    }
    default: {
      const Formula a = body(rng, depth - 1);
      return a | body(rng, depth - 1);
    }
  }
}

struct Signal {
  oracle::Signals plain;
  stlguard::stl::Trajectory traj;
};

inline Signal signal(Rng& rng, std::size_t max_len) {
  const std::size_t n = static_cast<std::size_t>(integer(rng, 1, static_cast<int>(max_len)));
  oracle::Signals plain;
  stlguard::stl::Trajectory::Channels ch;
  for (const std::string& name : channel_names()) {
    std::vector<double> v(n);
    for (double& e : v) e = integer(rng, 0, 3) == 0 ? grid(rng, -3, 3) : uniform(rng, -3, 3);
    Eigen::VectorXd ev(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) ev(static_cast<Eigen::Index>(i)) = v[i];
    plain[name] = std::move(v);
    ch[name] = std::move(ev);
  }
  return {std::move(plain), stlguard::stl::Trajectory(std::move(ch))};
}

}  // namespace gen
