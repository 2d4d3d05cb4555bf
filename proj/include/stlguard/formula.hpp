#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace stlguard::stl {

enum class Relation { GE, GT, LE, LT };

using Coefficients = std::map<std::string, double, std::less<>>;

/// Affine inequality  sum_i c_i * s_i(t)  <rel>  constant.
///
/// Zero coefficients are dropped on construction; at least one must remain.
class Predicate {
 public:
  Predicate(Coefficients coefficients, Relation relation, double constant);

  const Coefficients& coefficients() const { return coefficients_; }
  Relation relation() const { return relation_; }
  double constant() const { return constant_; }

  /// Signed margin of the inequality; the same value for strict and
  /// non-strict relations, negated for LE/LT.
  template <typename Lookup>
  double margin(Lookup&& lookup) const;

  friend bool operator==(const Predicate&, const Predicate&) = default;

 private:
  Coefficients coefficients_;
  Relation relation_;
  double constant_;
};

/// Closed window [lo, hi] in whole time steps, relative to the evaluation time.
struct Interval {
  std::size_t lo = 0;
  std::size_t hi = 0;

  Interval() = default;
  Interval(std::size_t lo, std::size_t hi);

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Kind { Constant, Atom, Not, And, Or, Globally, Eventually, Until };

/// Immutable STL syntax tree. Copies share structure.
class Formula {
 public:
  Kind kind() const;

  bool constant_value() const;                     // Constant
  const Predicate& predicate() const;              // Atom
  const Formula& operand() const;                  // Not, Globally, Eventually
  const Formula& lhs() const;                      // And, Or, Until
  const Formula& rhs() const;                      // And, Or, Until
  const std::optional<Interval>& interval() const; // Globally, Eventually, Until (always set)

  friend bool operator==(const Formula& a, const Formula& b);

  friend Formula truth(bool value);
  friend Formula atom(Predicate p);
  friend Formula operator!(const Formula& f);
  friend Formula operator&(const Formula& a, const Formula& b);
  friend Formula operator|(const Formula& a, const Formula& b);
  friend Formula globally(std::optional<Interval> window, const Formula& f);
  friend Formula eventually(std::optional<Interval> window, const Formula& f);
  friend Formula until(const Formula& a, Interval window, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula truth(bool value);
Formula atom(Predicate p);
Formula operator!(const Formula& f);
Formula operator&(const Formula& a, const Formula& b);
Formula operator|(const Formula& a, const Formula& b);
Formula globally(std::optional<Interval> window, const Formula& f);
Formula eventually(std::optional<Interval> window, const Formula& f);
Formula until(const Formula& a, Interval window, const Formula& b);

inline Formula globally(const Formula& f) { return globally(std::nullopt, f); }
inline Formula eventually(const Formula& f) { return eventually(std::nullopt, f); }

/// Single-channel atom, e.g. atom("x", Relation::GE, 0.0) is  x >= 0.
Formula atom(std::string channel, Relation relation, double constant);

/// Left-folded conjunction; the empty conjunction is `true`.
Formula conjunction(const std::vector<Formula>& parts);
/// Left-folded disjunction; the empty disjunction is `false`.
Formula disjunction(const std::vector<Formula>& parts);

bool is_temporal_free(const Formula& f);
/// G over the whole signal of a temporal-operator-free body.
bool is_invariant(const Formula& f);
std::size_t depth(const Formula& f);
std::set<std::string> channels(const Formula& f);

/// Concrete syntax accepted by parse_formula. Binary operands are
/// parenthesized so the output re-parses to the same tree.
std::string to_string(const Formula& f);
std::string to_string(const Predicate& p);
std::ostream& operator<<(std::ostream& os, const Formula& f);

// ---------------------------------------------------------------------------

struct Formula::Node {
  Kind kind;
  bool value = false;
  std::optional<Predicate> pred;
  std::optional<Interval> window;
  std::optional<Formula> first;
  std::optional<Formula> second;
};

template <typename Lookup>
double Predicate::margin(Lookup&& lookup) const {
  double acc = 0.0;
  bool first = true;
  for (const auto& [name, c] : coefficients_) {
    const double term = c * lookup(name);
    acc = first ? term : acc + term;
    first = false;
  }
  const double m = acc - constant_;
  return (relation_ == Relation::GE || relation_ == Relation::GT) ? m : -m;
}

}  // namespace stlguard::stl
