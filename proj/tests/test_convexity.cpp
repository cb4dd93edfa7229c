#include <doctest.h>

#include <cmath>

#include "hhbounds/convexity.hpp"

using namespace hhb;

namespace {
const Rect kUnit(0, 1, 0, 1);
}

TEST_CASE("checker accepts the bilinear equality case") {
  const Fn2D xy{[](double x, double y) { return x * y; }};
  const ConvexityReport rep = check_coordinate_convexity(xy, kUnit, 1000, 1e-10, 1);
  CHECK(rep.passed);
  CHECK(rep.max_violation >= 0);
  CHECK_FALSE(rep.witness.has_value());
  CHECK(rep.samples == 1000);
}

TEST_CASE("checker rejects a function concave in x") {
  const Fn2D f{[](double x, double) { return -x * x; }};
  const ConvexityReport rep = check_coordinate_convexity(f, kUnit, 1000, 1e-10, 1);
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_violation < 0);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->axis == Axis::X);
  // the witness reproduces its own slack
  const auto& w = *rep.witness;
  const double slack = w.lambda * f(w.u1, w.fixed) + (1 - w.lambda) * f(w.u2, w.fixed) - f(w.x, w.y);
  CHECK(slack == doctest::Approx(rep.max_violation).epsilon(1e-12));
}

TEST_CASE("checker accepts sum of squares on several rectangles") {
  const Fn2D f{[](double x, double y) { return x * x + y * y; }};
  for (const Rect& r : {kUnit, Rect(-3, 2, 5, 9), Rect(-0.01, 0.01, 100, 101)}) {
    const ConvexityReport rep = check_coordinate_convexity(f, r, 2000, 1e-10, 5);
    CHECK(rep.passed);
    CHECK(rep.max_violation >= 0);
  }
}

TEST_CASE("checker is deterministic given the seed") {
  const Fn2D f{[](double x, double y) { return -(x - 0.5) * (x - 0.5) + y * y; }};
  const ConvexityReport a = check_coordinate_convexity(f, kUnit, 500, 1e-10, 77);
  const ConvexityReport b = check_coordinate_convexity(f, kUnit, 500, 1e-10, 77);
  CHECK(a.max_violation == b.max_violation);
  REQUIRE(a.witness);
  REQUIRE(b.witness);
  CHECK(a.witness->u1 == b.witness->u1);
  CHECK(a.witness->lambda == b.witness->lambda);
}

TEST_CASE("concave-in-one-axis counterexample is caught for every checker seed") {
  const Fn2D f{[](double x, double y) { return -(x - 0.5) * (x - 0.5) + y * y; }};
  int rejected = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ConvexityReport rep = check_coordinate_convexity(f, kUnit, 10000, 1e-10, seed);
    if (!rep.passed) ++rejected;
  }
  CHECK(rejected >= 100);
}

TEST_CASE("affine-only generated functions pass") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Fn2D f = random_coordinate_convex(seed, kUnit, 0);
    const ConvexityReport rep = check_coordinate_convexity(f, kUnit, 1000, 1e-10, seed);
    CHECK(rep.passed);
  }
}

TEST_CASE("generated function for seed 42 passes the checker") {
  const Fn2D f = random_coordinate_convex(42, kUnit, 3);
  CHECK(check_coordinate_convexity(f, kUnit, 10000, 1e-10, 0).passed);
}

TEST_CASE("generator soundness over many seeds and rectangles") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const ConvexInstance inst = random_instance(seed);
    const ConvexityReport rep = check_coordinate_convexity(inst.f, inst.rect, 10000, 1e-10, seed);
    CHECK_MESSAGE(rep.passed, inst.f.label);
  }
}

TEST_CASE("positive flag implies positivity on a 33x33 grid") {
  int positives = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ConvexInstance inst = random_instance(seed);
    if (!inst.f.positive) continue;
    ++positives;
    CHECK(grid_minimum(inst.f, inst.rect, 33) > 0);
  }
  CHECK(positives > 50);
}

TEST_CASE("generator is deterministic") {
  const Rect r(-1, 1, 0.5, 2);
  const Fn2D a = random_coordinate_convex(1234, r, 4);
  const Fn2D b = random_coordinate_convex(1234, r, 4);
  CHECK(a.label == b.label);
  for (double x : {-1.0, -0.3, 0.9}) {
    for (double y : {0.5, 1.1, 2.0}) CHECK(a(x, y) == b(x, y));
  }
  const Fn2D c = random_coordinate_convex(1235, r, 4);
  CHECK(c.label != a.label);
}

TEST_CASE("atoms are convex and nonnegative where the generator uses them") {
  ConvexAtomSpec sq;
  CHECK(sq(-2.0) == 4.0);
  ConvexAtomSpec ab{ConvexAtomSpec::Kind::AbsShift, 0.25};
  CHECK(ab(1.0) == 0.75);
  ConvexAtomSpec ex{ConvexAtomSpec::Kind::Exp, 0, 2.0};
  CHECK(ex(0.5) == doctest::Approx(std::exp(1.0)));
  ConvexAtomSpec af{ConvexAtomSpec::Kind::Affine, 0, 0, -1.0, 2.0};
  CHECK(af(1.5) == 0.5);
}

TEST_CASE("parameter validation") {
  const Fn2D xy{[](double x, double y) { return x * y; }};
  CHECK_THROWS_AS(check_coordinate_convexity(xy, kUnit, 0, 1e-10, 0), PreconditionError);
  CHECK_THROWS_AS(check_coordinate_convexity(xy, kUnit, 10, -1, 0), PreconditionError);
  CHECK_THROWS_AS(random_coordinate_convex(0, kUnit, -1), PreconditionError);
  const Fn2D bad{[](double x, double) { return 1 / (x - 0.5); }};
  CHECK_THROWS_AS(grid_minimum(bad, kUnit, 3), EvaluationError);
}

TEST_CASE("1-D generator") {
  const Interval iv(-1, 2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Fn1D f = random_convex_1d(seed, iv, 3, true);
    CHECK(f.positive);
    for (int k = 0; k <= 30; ++k) CHECK(f(-1 + 0.1 * k) > 0);
  }
}
