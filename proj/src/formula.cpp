#include "stlguard/formula.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <ostream>
#include <sstream>

#include "stlguard/error.hpp"

namespace stlguard::stl {

Predicate::Predicate(Coefficients coefficients, Relation relation, double constant)
    : relation_(relation), constant_(constant) {
  for (auto& [name, c] : coefficients) {
    if (c != 0.0) coefficients_.emplace(name, c);
  }
  if (coefficients_.empty()) {
    throw ConfigError("predicate needs at least one nonzero coefficient");
  }
}

Interval::Interval(std::size_t lo_, std::size_t hi_) : lo(lo_), hi(hi_) {
  if (hi < lo) {
    throw ConfigError("malformed interval [" + std::to_string(lo) + "," +
                      std::to_string(hi) + "]: upper bound below lower bound");
  }
}

Kind Formula::kind() const { return node_->kind; }

bool Formula::constant_value() const {
  if (node_->kind != Kind::Constant) throw EvalError("formula is not a constant");
  return node_->value;
}

const Predicate& Formula::predicate() const {
  if (node_->kind != Kind::Atom) throw EvalError("formula is not an atom");
  return *node_->pred;
}

const Formula& Formula::operand() const {
  switch (node_->kind) {
    case Kind::Not:
    case Kind::Globally:
    case Kind::Eventually:
      return *node_->first;
    default:
      throw EvalError("formula has no single operand");
  }
}

const Formula& Formula::lhs() const {
  switch (node_->kind) {
    case Kind::And:
    case Kind::Or:
    case Kind::Until:
      return *node_->first;
    default:
      throw EvalError("formula is not binary");
  }
}

const Formula& Formula::rhs() const {
  switch (node_->kind) {
    case Kind::And:
    case Kind::Or:
    case Kind::Until:
      return *node_->second;
    default:
      throw EvalError("formula is not binary");
  }
}

const std::optional<Interval>& Formula::interval() const { return node_->window; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Kind::Constant:
      return x.value == y.value;
    case Kind::Atom:
      return *x.pred == *y.pred;
    case Kind::Not:
      return *x.first == *y.first;
    case Kind::And:
    case Kind::Or:
      return *x.first == *y.first && *x.second == *y.second;
    case Kind::Globally:
    case Kind::Eventually:
      return x.window == y.window && *x.first == *y.first;
    case Kind::Until:
      return x.window == y.window && *x.first == *y.first && *x.second == *y.second;
  }
  return false;
}

Formula truth(bool value) {
  return Formula(std::make_shared<const Formula::Node>(
      Formula::Node{Kind::Constant, value, std::nullopt, std::nullopt, std::nullopt, std::nullopt}));
}

Formula atom(Predicate p) {
  return Formula(std::make_shared<const Formula::Node>(
      Formula::Node{Kind::Atom, false, std::move(p), std::nullopt, std::nullopt, std::nullopt}));
}

Formula operator!(const Formula& f) {
  return Formula(std::make_shared<const Formula::Node>(
      Formula::Node{Kind::Not, false, std::nullopt, std::nullopt, f, std::nullopt}));
}

Formula operator&(const Formula& a, const Formula& b) {
  return Formula(std::make_shared<const Formula::Node>(
      Formula::Node{Kind::And, false, std::nullopt, std::nullopt, a, b}));
}

Formula operator|(const Formula& a, const Formula& b) {
  return Formula(std::make_shared<const Formula::Node>(
      Formula::Node{Kind::Or, false, std::nullopt, std::nullopt, a, b}));
}

Formula globally(std::optional<Interval> window, const Formula& f) {
  return Formula(std::make_shared<const Formula::Node>(
      Formula::Node{Kind::Globally, false, std::nullopt, window, f, std::nullopt}));
}

Formula eventually(std::optional<Interval> window, const Formula& f) {
  return Formula(std::make_shared<const Formula::Node>(
      Formula::Node{Kind::Eventually, false, std::nullopt, window, f, std::nullopt}));
}

Formula until(const Formula& a, Interval window, const Formula& b) {
  return Formula(std::make_shared<const Formula::Node>(
      Formula::Node{Kind::Until, false, std::nullopt, window, a, b}));
}

Formula atom(std::string channel, Relation relation, double constant) {
  return atom(Predicate(Coefficients{{std::move(channel), 1.0}}, relation, constant));
}

Formula conjunction(const std::vector<Formula>& parts) {
  if (parts.empty()) return truth(true);
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = acc & parts[i];
  return acc;
}

Formula disjunction(const std::vector<Formula>& parts) {
  if (parts.empty()) return truth(false);
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = acc | parts[i];
  return acc;
}

bool is_temporal_free(const Formula& f) {
  switch (f.kind()) {
    case Kind::Constant:
    case Kind::Atom:
      return true;
    case Kind::Not:
      return is_temporal_free(f.operand());
    case Kind::And:
    case Kind::Or:
      return is_temporal_free(f.lhs()) && is_temporal_free(f.rhs());
    default:
      return false;
  }
}

bool is_invariant(const Formula& f) {
  return f.kind() == Kind::Globally && !f.interval() && is_temporal_free(f.operand());
}

std::size_t depth(const Formula& f) {
  switch (f.kind()) {
    case Kind::Constant:
    case Kind::Atom:
      return 0;
    case Kind::Not:
    case Kind::Globally:
    case Kind::Eventually:
      return 1 + depth(f.operand());
    default:
      return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
  }
}

namespace {

void collect_channels(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Constant:
      return;
    case Kind::Atom:
      for (const auto& [name, c] : f.predicate().coefficients()) out.insert(name);
      return;
    case Kind::Not:
    case Kind::Globally:
    case Kind::Eventually:
      collect_channels(f.operand(), out);
      return;
    default:
      collect_channels(f.lhs(), out);
      collect_channels(f.rhs(), out);
  }
}

// Shortest decimal that reads back to the same double.
std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

const char* relation_text(Relation r) {
  switch (r) {
    case Relation::GE: return ">=";
    case Relation::GT: return ">";
    case Relation::LE: return "<=";
    case Relation::LT: return "<";
  }
  return "?";
}

std::string window_text(const std::optional<Interval>& w) {
  if (!w) return "";
  return "[" + std::to_string(w->lo) + "," + std::to_string(w->hi) + "]";
}

void print(const Formula& f, std::ostream& os);

void print_wrapped(const Formula& f, std::ostream& os) {
  if (f.kind() == Kind::Constant) {
    print(f, os);
    return;
  }
  os << '(';
  print(f, os);
  os << ')';
}

void print(const Formula& f, std::ostream& os) {
  switch (f.kind()) {
    case Kind::Constant:
      os << (f.constant_value() ? "true" : "false");
      return;
    case Kind::Atom:
      os << to_string(f.predicate());
      return;
    case Kind::Not:
      os << '!';
      print_wrapped(f.operand(), os);
      return;
    case Kind::Globally:
    case Kind::Eventually:
      os << (f.kind() == Kind::Globally ? "G" : "F") << window_text(f.interval()) << ' ';
      print_wrapped(f.operand(), os);
      return;
    case Kind::And:
    case Kind::Or:
      print_wrapped(f.lhs(), os);
      os << (f.kind() == Kind::And ? " & " : " | ");
      print_wrapped(f.rhs(), os);
      return;
    case Kind::Until:
      print_wrapped(f.lhs(), os);
      os << " U" << window_text(f.interval()) << ' ';
      print_wrapped(f.rhs(), os);
      return;
  }
}

}  // namespace

std::set<std::string> channels(const Formula& f) {
  std::set<std::string> out;
  collect_channels(f, out);
  return out;
}

std::string to_string(const Predicate& p) {
  std::string out;
  bool first = true;
  for (const auto& [name, c] : p.coefficients()) {
    if (!first) out += " + ";
    first = false;
    if (c == 1.0) {
      out += name;
    } else {
      out += format_number(c) + "*" + name;
    }
  }
  out += ' ';
  out += relation_text(p.relation());
  out += ' ';
  out += format_number(p.constant());
  return out;
}

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print(f, os);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  print(f, os);
  return os;
}

}  // namespace stlguard::stl
