#include <doctest.h>

#include <plspan/linalg.hpp>

using namespace plspan;

namespace {

VecQ vecn(std::initializer_list<Rational> xs) {
  VecQ v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const Rational& x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_SUITE_BEGIN("linalg");

TEST_CASE("dot, cross2, cross3") {
  CHECK(dot(vec2(1, 2), vec2(3, 4)) == Rational(11));
  CHECK(cross2(vec2(1, 0), vec2(0, 1)) == Rational(1));
  CHECK(cross2(vec2(2, 3), vec2(4, 6)) == Rational(0));
  Vec3Q c = cross3(vec3(1, 0, 0), vec3(0, 1, 0));
  CHECK(points_equal(c, vec3(0, 0, 1)));
  CHECK(dot(cross3(vec3(1, 2, 3), vec3(4, 5, 6)), vec3(1, 2, 3)) ==
        Rational(0));
}

TEST_CASE("lexicographic order breaks ties deterministically") {
  CHECK(lex_less(vecn({0, 1, 5}), vecn({1, 0, 0})));
  CHECK(lex_less(vecn({1, 0, 0}), vecn({1, 0, Rational(1, 2)})));
  CHECK_FALSE(lex_less(vecn({1, 0, 0}), vecn({1, 0, 0})));
}

TEST_CASE("solve_linear: unique system") {
  MatQ a(3, 3);
  a << Rational(2), Rational(1), Rational(-1),
       Rational(-3), Rational(-1), Rational(2),
       Rational(-2), Rational(1), Rational(2);
  VecQ b = vecn({8, -11, -3});
  LinearSolution s = solve_linear(a, b);
  REQUIRE(s.unique());
  CHECK(points_equal(s.particular, vecn({2, 3, -1})));
}

TEST_CASE("solve_linear: inconsistent system") {
  MatQ a(2, 2);
  a << Rational(1), Rational(1), Rational(2), Rational(2);
  LinearSolution s = solve_linear(a, vecn({1, 3}));
  CHECK_FALSE(s.consistent);
}

TEST_CASE("solve_linear: underdetermined system reports a kernel basis") {
  MatQ a(1, 3);
  a << Rational(1), Rational(2), Rational(3);
  VecQ b = vecn({6});
  LinearSolution s = solve_linear(a, b);
  REQUIRE(s.consistent);
  REQUIRE(s.kernel.size() == 2);
  // Particular solution has free variables pinned to zero.
  CHECK(points_equal(s.particular, vecn({6, 0, 0})));
  for (const VecQ& k : s.kernel) {
    Rational r = k(0) + Rational(2) * k(1) + Rational(3) * k(2);
    CHECK(r == Rational(0));
  }
}

TEST_CASE("solve_linear: fractional pivots stay exact") {
  MatQ a(2, 2);
  a << Rational(1, 3), Rational(1, 7), Rational(1, 2), Rational(-1, 5);
  VecQ b = vecn({1, 0});
  LinearSolution s = solve_linear(a, b);
  REQUIRE(s.unique());
  CHECK(a(0, 0) * s.particular(0) + a(0, 1) * s.particular(1) == Rational(1));
  CHECK(a(1, 0) * s.particular(0) + a(1, 1) * s.particular(1) == Rational(0));
}

TEST_CASE("determinants of small matrices") {
  MatQ a(2, 2);
  a << Rational(1), Rational(2), Rational(3), Rational(4);
  CHECK(det(a) == Rational(-2));
  MatQ b(3, 3);
  b << Rational(2), Rational(0), Rational(0),
       Rational(0), Rational(3), Rational(0),
       Rational(0), Rational(0), Rational(5);
  CHECK(det(b) == Rational(30));
  MatQ c(3, 3);
  c << Rational(1), Rational(2), Rational(3),
       Rational(2), Rational(4), Rational(6),
       Rational(0), Rational(1), Rational(1);
  CHECK(det(c) == Rational(0));
}

TEST_CASE("projection frames lift back exactly") {
  ProjectionFrame f{vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)};
  Vec3Q p = vec3(Rational(7, 3), Rational(-1, 2), Rational(5));
  Vec2Q q = project_point(p, f);
  CHECK(q(0) == Rational(7, 3));
  CHECK(points_equal(lift_point(q(0), q(1), height(p, f), f), p));

  // A frame that is not orthonormal still inverts exactly.
  ProjectionFrame g{vec3(1, 1, 0), vec3(0, 1, 1), vec3(1, 0, 1)};
  Vec2Q qg = project_point(p, g);
  CHECK(points_equal(lift_point(qg(0), qg(1), height(p, g), g), p));
}

TEST_SUITE_END();
