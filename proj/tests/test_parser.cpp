#include <doctest.h>

#include "stlguard/error.hpp"
#include "stlguard/parser.hpp"
#include "support/random_formula.hpp"

using namespace stlguard;
using namespace stlguard::stl;

TEST_CASE("parse unbounded globally of an atom") {
  const Formula f = parse_formula("G (x >= 0.0)");
  CHECK(f == globally(atom("x", Relation::GE, 0.0)));
  CHECK_FALSE(f.interval().has_value());
}

TEST_CASE("parse bounded globally of a negated conjunction") {
  const Formula f = parse_formula("G[0,5] (!(x >= 1.0 & z >= 1.0))");
  REQUIRE(f.kind() == Kind::Globally);
  REQUIRE(f.interval().has_value());
  CHECK(*f.interval() == Interval(0, 5));
  CHECK(f.operand() == !(atom("x", Relation::GE, 1.0) & atom("z", Relation::GE, 1.0)));
}

TEST_CASE("interval with upper bound below lower bound is rejected") {
  try {
    parse_formula("G[5,2] (x >= 0)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("malformed interval") != std::string::npos);
    CHECK(e.line() == 1);
    CHECK(e.column() == 2);
  }
}

TEST_CASE("unknown operator reports its position") {
  CHECK_THROWS_AS(parse_formula("x >= 0 && z >= 1"), ParseError);
  CHECK_THROWS_AS(parse_formula("x == 0"), ParseError);
  try {
    parse_formula("x >= 0 ->\n z >= 1");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unknown operator") != std::string::npos);
    CHECK(e.line() == 1);
    CHECK(e.column() == 8);
  }
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_formula("G (x >= 0\n  & )");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("x"), ParseError);
  CHECK_THROWS_AS(parse_formula("x >= "), ParseError);
  CHECK_THROWS_AS(parse_formula("(x >= 0"), ParseError);
  CHECK_THROWS_AS(parse_formula("x >= 0 U z >= 0"), ParseError);
  CHECK_THROWS_AS(parse_formula("G[1,2 x >= 0"), ParseError);
  CHECK_THROWS_AS(parse_formula("G[-1,2] x >= 0"), ParseError);
  CHECK_THROWS_AS(parse_formula("x >= 0 z >= 0"), ParseError);
}

TEST_CASE("affine predicates") {
  const Formula f = parse_formula("2*x + -0.5*z + x < 3e-1");
  REQUIRE(f.kind() == Kind::Atom);
  const Predicate& p = f.predicate();
  CHECK(p.coefficients().at("x") == 3.0);
  CHECK(p.coefficients().at("z") == -0.5);
  CHECK(p.relation() == Relation::LT);
  CHECK(p.constant() == doctest::Approx(0.3));
  CHECK_THROWS_AS(parse_formula("x + -1*x >= 0"), ParseError);
}

TEST_CASE("operator precedence and associativity") {
  const Formula a = atom("a", Relation::GE, 0);
  const Formula b = atom("b", Relation::GE, 0);
  const Formula c = atom("c", Relation::GE, 0);
  CHECK(parse_formula("a >= 0 | b >= 0 & c >= 0") == (a | (b & c)));
  CHECK(parse_formula("a >= 0 & b >= 0 & c >= 0") == ((a & b) & c));
  CHECK(parse_formula("!a >= 0 & b >= 0") == ((!a) & b));
  CHECK(parse_formula("G a >= 0 & b >= 0") == (globally(a) & b));
  CHECK(parse_formula("F[1,2] !a >= 0") == eventually(Interval(1, 2), !a));
  CHECK(parse_formula("a >= 0 | b >= 0 U[0,3] c >= 0") == until(a | b, Interval(0, 3), c));
  CHECK(parse_formula("a >= 0 U[0,1] b >= 0 U[2,3] c >= 0") ==
        until(until(a, Interval(0, 1), b), Interval(2, 3), c));
  CHECK(parse_formula("true & !false") == (truth(true) & !truth(false)));
}

TEST_CASE("printing then parsing returns the same tree") {
  gen::Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = gen::formula(rng, 4);
    const std::string text = to_string(f);
    INFO(text);
    CHECK(parse_formula(text) == f);
  }
}

TEST_CASE("pretty printer output for box specs") {
  const Formula box = atom("x", Relation::GE, 0) & atom("x", Relation::LE, 1) & atom("z", Relation::GE, 0) &
                      atom("z", Relation::LE, 1);
  const Formula spec = globally(!box);
  CHECK(parse_formula(to_string(spec)) == spec);
  CHECK(parse_formula("G !(x >= 0 & x <= 1 & z >= 0 & z <= 1)") == spec);
}
