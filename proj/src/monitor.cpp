#include "stlguard/monitor.hpp"

#include <algorithm>

#include "stlguard/error.hpp"

namespace stlguard::stl {
namespace {

using Index = Eigen::Index;
using BoolSignal = Eigen::Array<bool, Eigen::Dynamic, 1>;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Window {
  Index first;
  Index last;  // inclusive; first > last means empty
};

Window clamp_window(const std::optional<Interval>& w, Index t, Index n) {
  if (!w) return {t, n - 1};
  const Index first = t + static_cast<Index>(w->lo);
  const Index last = std::min(n - 1, t + static_cast<Index>(w->hi));
  return {first, last};
}

bool holds(Relation r, double margin) {
  // margin is already sign-flipped for LE/LT
  return (r == Relation::GE || r == Relation::LE) ? margin >= 0.0 : margin > 0.0;
}

Eigen::VectorXd atom_margin(const Predicate& p, const Trajectory& traj) {
  Eigen::VectorXd acc;
  bool first = true;
  for (const auto& [name, c] : p.coefficients()) {
    if (first) {
      acc = c * traj.channel(name).array();
      first = false;
    } else {
      acc = (acc.array() + c * traj.channel(name).array()).matrix();
    }
  }
  acc = (acc.array() - p.constant()).matrix();
  if (p.relation() == Relation::LE || p.relation() == Relation::LT) acc = -acc;
  return acc;
}

Eigen::VectorXd rob(const Formula& f, const Trajectory& traj) {
  const Index n = static_cast<Index>(traj.length());
  switch (f.kind()) {
    case Kind::Constant:
      return Eigen::VectorXd::Constant(n, f.constant_value() ? kTopRobustness : -kTopRobustness);
    case Kind::Atom:
      return atom_margin(f.predicate(), traj);
    case Kind::Not:
      return -rob(f.operand(), traj);
    case Kind::And:
      return rob(f.lhs(), traj).cwiseMin(rob(f.rhs(), traj));
    case Kind::Or:
      return rob(f.lhs(), traj).cwiseMax(rob(f.rhs(), traj));
    case Kind::Globally:
    case Kind::Eventually: {
      const bool is_g = f.kind() == Kind::Globally;
      const Eigen::VectorXd inner = rob(f.operand(), traj);
      Eigen::VectorXd out(n);
      for (Index t = 0; t < n; ++t) {
        const Window w = clamp_window(f.interval(), t, n);
        if (w.first > w.last) {
          out(t) = is_g ? kInf : -kInf;
        } else {
          auto seg = inner.segment(w.first, w.last - w.first + 1);
          out(t) = is_g ? seg.minCoeff() : seg.maxCoeff();
        }
      }
      return out;
    }
    case Kind::Until: {
      const Eigen::VectorXd hold = rob(f.lhs(), traj);
      const Eigen::VectorXd reach = rob(f.rhs(), traj);
      Eigen::VectorXd out(n);
      for (Index t = 0; t < n; ++t) {
        const Window w = clamp_window(f.interval(), t, n);
        double best = -kInf;
        double hold_min = kInf;
        for (Index u = t; u <= w.last; ++u) {
          hold_min = std::min(hold_min, hold(u));
          if (u >= w.first) best = std::max(best, std::min(reach(u), hold_min));
        }
        out(t) = best;
      }
      return out;
    }
  }
  throw EvalError("unhandled formula kind");
}

BoolSignal sat(const Formula& f, const Trajectory& traj) {
  const Index n = static_cast<Index>(traj.length());
  switch (f.kind()) {
    case Kind::Constant:
      return BoolSignal::Constant(n, f.constant_value());
    case Kind::Atom: {
      const Eigen::VectorXd m = atom_margin(f.predicate(), traj);
      BoolSignal out(n);
      for (Index t = 0; t < n; ++t) out(t) = holds(f.predicate().relation(), m(t));
      return out;
    }
    case Kind::Not:
      return !sat(f.operand(), traj);
    case Kind::And:
      return sat(f.lhs(), traj) && sat(f.rhs(), traj);
    case Kind::Or:
      return sat(f.lhs(), traj) || sat(f.rhs(), traj);
    case Kind::Globally:
    case Kind::Eventually: {
      const bool is_g = f.kind() == Kind::Globally;
      const BoolSignal inner = sat(f.operand(), traj);
      BoolSignal out(n);
      for (Index t = 0; t < n; ++t) {
        const Window w = clamp_window(f.interval(), t, n);
        if (w.first > w.last) {
          out(t) = is_g;
        } else {
          auto seg = inner.segment(w.first, w.last - w.first + 1);
          out(t) = is_g ? seg.all() : seg.any();
        }
      }
      return out;
    }
    case Kind::Until: {
      const BoolSignal hold = sat(f.lhs(), traj);
      const BoolSignal reach = sat(f.rhs(), traj);
      BoolSignal out(n);
      for (Index t = 0; t < n; ++t) {
        const Window w = clamp_window(f.interval(), t, n);
        bool found = false;
        bool held = true;
        for (Index u = t; u <= w.last && held && !found; ++u) {
          held = held && hold(u);
          found = u >= w.first && held && reach(u);
        }
        out(t) = found;
      }
      return out;
    }
  }
  throw EvalError("unhandled formula kind");
}

void check_time(const Trajectory& traj, std::size_t t) {
  if (t >= traj.length()) {
    throw EvalError("time index " + std::to_string(t) + " out of range for trajectory of length " +
                    std::to_string(traj.length()));
  }
}

double lookup(const Sample& s, const std::string& name) {
  auto it = s.find(name);
  if (it == s.end()) throw EvalError("unknown channel '" + name + "'");
  return it->second;
}

}  // namespace

Eigen::VectorXd robustness_signal(const Formula& f, const Trajectory& traj) { return rob(f, traj); }

Eigen::Array<bool, Eigen::Dynamic, 1> satisfaction_signal(const Formula& f, const Trajectory& traj) {
  return sat(f, traj);
}

double robustness(const Formula& f, const Trajectory& traj, std::size_t t) {
  check_time(traj, t);
  return rob(f, traj)(static_cast<Index>(t));
}

bool eval_boolean(const Formula& f, const Trajectory& traj, std::size_t t) {
  check_time(traj, t);
  return sat(f, traj)(static_cast<Index>(t));
}

double robustness(const Formula& body, const Sample& sample) {
  switch (body.kind()) {
    case Kind::Constant:
      return body.constant_value() ? kTopRobustness : -kTopRobustness;
    case Kind::Atom:
      return body.predicate().margin([&](const std::string& name) { return lookup(sample, name); });
    case Kind::Not:
      return -robustness(body.operand(), sample);
    case Kind::And:
      return std::min(robustness(body.lhs(), sample), robustness(body.rhs(), sample));
    case Kind::Or:
      return std::max(robustness(body.lhs(), sample), robustness(body.rhs(), sample));
    default:
      throw EvalError("instantaneous evaluation needs a temporal-operator-free formula");
  }
}

bool eval_boolean(const Formula& body, const Sample& sample) {
  switch (body.kind()) {
    case Kind::Constant:
      return body.constant_value();
    case Kind::Atom: {
      const auto& p = body.predicate();
      return holds(p.relation(), p.margin([&](const std::string& name) { return lookup(sample, name); }));
    }
    case Kind::Not:
      return !eval_boolean(body.operand(), sample);
    case Kind::And:
      return eval_boolean(body.lhs(), sample) && eval_boolean(body.rhs(), sample);
    case Kind::Or:
      return eval_boolean(body.lhs(), sample) || eval_boolean(body.rhs(), sample);
    default:
      throw EvalError("instantaneous evaluation needs a temporal-operator-free formula");
  }
}

OnlineMonitor::OnlineMonitor(Formula invariant) : formula_(std::move(invariant)) {
  if (!is_invariant(formula_)) {
    throw EvalError("online monitor needs G(body) with a temporal-operator-free body, got " +
                    to_string(formula_));
  }
}

double OnlineMonitor::append(const Sample& sample) {
  running_min_ = peek(sample);
  ++steps_;
  return running_min_;
}

double OnlineMonitor::peek(const Sample& sample) const {
  return std::min(running_min_, robustness(body(), sample));
}

}  // namespace stlguard::stl
