#include <doctest.h>

#include <cmath>

#include "stlguard/error.hpp"
#include "stlguard/monitor.hpp"
#include "stlguard/parser.hpp"
#include "support/random_formula.hpp"

using namespace stlguard;
using namespace stlguard::stl;

namespace {

Trajectory xs(std::vector<double> values) {
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return Trajectory({{"x", v}});
}

Sample sample_x(double x) { return {{"x", x}}; }

}  // namespace

TEST_CASE("single atom") {
  const Formula f = parse_formula("x >= 0");
  CHECK(eval_boolean(f, xs({3.0})));
  CHECK(robustness(f, xs({3.0})) == 3.0);
  CHECK(robustness(parse_formula("!(x >= 0)"), xs({3.0})) == -3.0);
}

TEST_CASE("bounded globally and eventually") {
  const Trajectory t = xs({1.0, -2.0, 3.0});
  CHECK_FALSE(eval_boolean(parse_formula("G[0,2] (x >= 0)"), t));
  CHECK(robustness(parse_formula("G[0,2] (x >= 0)"), t) == -2.0);
  CHECK(eval_boolean(parse_formula("F[0,2] (x >= 0)"), xs({-1.0, -2.0, 3.0})));
  CHECK(robustness(parse_formula("F[0,2] (x >= 0)"), xs({-1.0, -2.0, 3.0})) == 3.0);
}

TEST_CASE("windows clamp to the available samples") {
  const Trajectory t = xs({1.0, 2.0});
  CHECK(robustness(parse_formula("G[0,10] x >= 0"), t) == 1.0);
  CHECK(robustness(parse_formula("G[1,10] x >= 0"), t, 1) == std::numeric_limits<double>::infinity());
  CHECK(robustness(parse_formula("F[1,10] x >= 0"), t, 1) == -std::numeric_limits<double>::infinity());
  CHECK(eval_boolean(parse_formula("G[5,6] x >= 100"), t));
  CHECK_FALSE(eval_boolean(parse_formula("F[5,6] x >= -100"), t));
}

TEST_CASE("until") {
  // x stays positive until z reaches 1
  Trajectory::Channels ch;
  ch["x"] = Eigen::Vector4d(2.0, 1.0, 0.5, -1.0);
  ch["z"] = Eigen::Vector4d(0.0, 0.0, 1.5, 0.0);
  const Trajectory t(ch);
  const Formula f = parse_formula("x > 0 U[0,3] z >= 1");
  CHECK(eval_boolean(f, t));
  CHECK(robustness(f, t) == doctest::Approx(0.5));
  CHECK_FALSE(eval_boolean(parse_formula("x > 0 U[3,3] z >= 1"), t));
}

TEST_CASE("strict and non-strict relations share robustness") {
  const Trajectory t = xs({0.0});
  CHECK(robustness(parse_formula("x >= 0"), t) == 0.0);
  CHECK(robustness(parse_formula("x > 0"), t) == 0.0);
  CHECK(eval_boolean(parse_formula("x >= 0"), t));
  CHECK_FALSE(eval_boolean(parse_formula("x > 0"), t));
  CHECK(eval_boolean(parse_formula("x <= 0"), t));
  CHECK_FALSE(eval_boolean(parse_formula("x < 0"), t));
}

TEST_CASE("constants") {
  const Trajectory t = xs({0.0});
  CHECK(robustness(truth(true), t) == kTopRobustness);
  CHECK(robustness(globally(truth(true)), t) == kTopRobustness);
  CHECK(robustness(truth(false), t) == -kTopRobustness);
  CHECK(eval_boolean(truth(true), t));
}

TEST_CASE("evaluation errors") {
  const Trajectory t = xs({1.0, 2.0});
  CHECK_THROWS_AS(robustness(parse_formula("z >= 0"), t), EvalError);
  CHECK_THROWS_AS(eval_boolean(parse_formula("x >= 0"), t, 2), EvalError);
  CHECK_THROWS_AS(robustness(parse_formula("x >= 0"), t, 5), EvalError);
  CHECK_THROWS_AS(robustness(parse_formula("G x >= 0"), sample_x(1.0)), EvalError);
  CHECK_THROWS_AS(Trajectory({{"x", Eigen::VectorXd(2)}, {"z", Eigen::VectorXd(3)}}), EvalError);
  CHECK_THROWS_AS(Trajectory({{"x", Eigen::VectorXd(0)}}), EvalError);
}

TEST_CASE("online monitor running minimum") {
  OnlineMonitor m(parse_formula("G (x >= 0)"));
  CHECK(m.value() == std::numeric_limits<double>::infinity());
  CHECK(m.steps() == 0);
  CHECK(m.peek(sample_x(5.0)) == 5.0);
  CHECK(m.value() == std::numeric_limits<double>::infinity());
  CHECK(m.append(sample_x(2.0)) == 2.0);
  CHECK(m.append(sample_x(-1.0)) == -1.0);
  CHECK(m.append(sample_x(4.0)) == -1.0);
  CHECK(m.steps() == 3);
}

TEST_CASE("online monitor only accepts invariants") {
  CHECK_THROWS_AS(OnlineMonitor(parse_formula("x >= 0")), EvalError);
  CHECK_THROWS_AS(OnlineMonitor(parse_formula("G[0,3] x >= 0")), EvalError);
  CHECK_THROWS_AS(OnlineMonitor(parse_formula("G F x >= 0")), EvalError);
  CHECK_NOTHROW(OnlineMonitor(parse_formula("G !(x >= 0 & x <= 1)")));
}

TEST_CASE("robustness matches the naive recursive oracle") {
  gen::Rng rng(11);
  for (int i = 0; i < 3000; ++i) {
    const Formula f = gen::formula(rng, 3);
    const gen::Signal s = gen::signal(rng, 10);
    const Eigen::VectorXd batch = robustness_signal(f, s.traj);
    for (std::size_t t = 0; t < s.traj.length(); ++t) {
      const double expect = oracle::rho(f, s.plain, t);
      const double got = batch(static_cast<Eigen::Index>(t));
      INFO(to_string(f), " t=", t);
      if (std::isinf(expect)) {
        CHECK(got == expect);
      } else {
        CHECK(std::abs(got - expect) <= 1e-9);
      }
      CHECK(eval_boolean(f, s.traj, t) == oracle::sat(f, s.plain, t));
    }
  }
}

TEST_CASE("sign of robustness agrees with Boolean semantics") {
  gen::Rng rng(12);
  int decided = 0;
  for (int i = 0; i < 3000; ++i) {
    const Formula f = gen::formula(rng, 3);
    const gen::Signal s = gen::signal(rng, 10);
    const Eigen::VectorXd r = robustness_signal(f, s.traj);
    const auto b = satisfaction_signal(f, s.traj);
    for (Eigen::Index t = 0; t < r.size(); ++t) {
      if (std::abs(r(t)) <= 1e-9) continue;
      ++decided;
      INFO(to_string(f), " t=", t);
      CHECK((r(t) > 0) == b(t));
    }
  }
  CHECK(decided > 10000);
}

TEST_CASE("negation is exact antisymmetry and De Morgan holds exactly") {
  gen::Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = gen::formula(rng, 2);
    const Formula g = gen::formula(rng, 2);
    const gen::Signal s = gen::signal(rng, 10);
    for (std::size_t t = 0; t < s.traj.length(); ++t) {
      CHECK(robustness(!f, s.traj, t) == -robustness(f, s.traj, t));
      CHECK(robustness(!(f & g), s.traj, t) == robustness((!f) | (!g), s.traj, t));
    }
  }
}

TEST_CASE("invariant robustness never increases as the prefix grows") {
  gen::Rng rng(14);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = globally(gen::body(rng, 3));
    const gen::Signal s = gen::signal(rng, 10);
    for (std::size_t n = 1; n < s.traj.length(); ++n) {
      CHECK(robustness(f, s.traj.prefix(n + 1)) <= robustness(f, s.traj.prefix(n)));
    }
  }
}

TEST_CASE("online monitor equals batch robustness on every prefix, bit for bit") {
  gen::Rng rng(15);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = globally(gen::body(rng, 3));
    const gen::Signal s = gen::signal(rng, 10);
    OnlineMonitor m(f);
    double previous = m.value();
    for (std::size_t n = 1; n <= s.traj.length(); ++n) {
      const Sample smp = s.traj.sample(n - 1);
      const double peeked = m.peek(smp);
      const double v = m.append(smp);
      CHECK(peeked == v);
      CHECK(v <= previous);
      CHECK(v == robustness(f, s.traj.prefix(n)));
      previous = v;
    }
  }
}
