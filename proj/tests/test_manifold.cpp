#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "cpd/manifold.hpp"
#include "cpd/rng.hpp"

using namespace cpd;

namespace {

// random coordinates with theta bounded away from +-pi/2 like any arctan of
// a finite shift is
ManifoldCoords random_coords(Xoshiro256pp& rng) {
  const double t = 1e-6 + (1.0 - 2e-6) * rng.uniform01();
  const double shift = 8.0 * (rng.uniform01() - 0.5);
  return {t, std::atan(shift)};
}

bool equivalent(const ManifoldCoords& a, const ManifoldCoords& b) {
  const bool a_zero = a.t == 0.0 || a.theta == 0.0;
  const bool b_zero = b.t == 0.0 || b.theta == 0.0;
  if (a_zero || b_zero) return a_zero && b_zero;
  return a.t == b.t && a.theta == b.theta;
}

}  // namespace

TEST_CASE("embedding maps the identified no-change inputs to the exact origin") {
  CHECK(embed(0.0, 1.2).is_origin());
  CHECK(embed(0.3, 0.0).is_origin());
  CHECK(embed(0.0, 0.0).is_origin());
}

TEST_CASE("embedding matches the hand-evaluated half-split point") {
  const ManifoldPoint u = embed(0.5, std::numbers::pi / 4.0);
  // 0.25 * (1 - sqrt(2)/2) and 0.25 * sqrt(2)/2
  CHECK(u.u1 == doctest::Approx(-0.0732233047033631).epsilon(1e-12));
  CHECK(std::abs(u.u2) < 1e-16);
  CHECK(u.u3 == doctest::Approx(0.1767766952966369).epsilon(1e-12));
}

TEST_CASE("embedding rejects out-of-domain coordinates") {
  CHECK_THROWS_AS(embed(-0.1, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(embed(1.0, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(embed(0.5, std::numbers::pi / 2.0), std::invalid_argument);
  CHECK_THROWS_AS(embed(0.5, -std::numbers::pi / 2.0), std::invalid_argument);
}

TEST_CASE("unembedding inverts the embedding") {
  CHECK(unembed(ManifoldPoint{}).t == 0.0);
  CHECK(unembed(ManifoldPoint{}).theta == 0.0);

  const ManifoldCoords a = unembed(embed(0.5, std::numbers::pi / 4.0));
  CHECK(a.t == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(a.theta == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-12));

  // exercises quadrant handling (2 pi t in the fourth quadrant) and theta < 0
  const ManifoldCoords b = unembed(embed(0.9, -0.3));
  CHECK(b.t == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(b.theta == doctest::Approx(-0.3).epsilon(1e-12));
}

TEST_CASE("points off the surface are rejected") {
  CHECK_THROWS_AS(unembed(ManifoldPoint{0.1, 0.1, 5.0}), std::invalid_argument);
  CHECK_THROWS_AS(unembed(ManifoldPoint{0.0, 0.0, 0.1}), std::invalid_argument);
  ManifoldPoint u = embed(0.4, 0.7);
  u.u3 *= 1.5;
  CHECK_THROWS_AS(unembed(u), std::invalid_argument);
}

TEST_CASE("coordinate roundtrip holds to 1e-10 over random draws") {
  Xoshiro256pp rng(20250801, 11);
  for (int i = 0; i < 10000; ++i) {
    const ManifoldCoords c = random_coords(rng);
    if (c.theta == 0.0) continue;
    const ManifoldCoords back = unembed(embed(c));
    CHECK(std::abs(back.t - c.t) <= 1e-10 * std::max(1.0, std::abs(c.t)));
    CHECK(std::abs(back.theta - c.theta) <=
          1e-10 * std::max(1.0, std::abs(c.theta)));
  }
}

TEST_CASE("radius identity of embedded points") {
  Xoshiro256pp rng(20250801, 12);
  for (int i = 0; i < 2000; ++i) {
    const ManifoldCoords c = random_coords(rng);
    const ManifoldPoint u = embed(c);
    if (u.is_origin()) continue;
    const double radius = c.t * (1.0 - c.t);
    const double rho = std::hypot(u.u1, u.u2);
    CHECK(std::abs(rho - radius * (1.0 - std::cos(c.theta))) < 1e-12);
    CHECK(std::abs(u.u3 - radius * std::sin(c.theta)) < 1e-12);
  }
}

TEST_CASE("zero-pass distance worked examples") {
  CHECK(zero_pass_distance({0.5, 0.4}, {0.5, 0.1}) == doctest::Approx(0.075).epsilon(1e-12));
  CHECK(zero_pass_distance({0.25, 0.4}, {0.5, -0.2}) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(zero_pass_distance({0.37, -0.9}, {0.37, -0.9}) == 0.0);
  // distance to the no-change point
  CHECK(zero_pass_distance({0.5, 0.4}, {0.0, 0.0}) == doctest::Approx(0.25 * 0.4).epsilon(1e-12));
}

TEST_CASE("same-t opposite-sign pairs agree with the through-zero path") {
  Xoshiro256pp rng(20250801, 13);
  for (int i = 0; i < 2000; ++i) {
    const double t = 0.05 + 0.9 * rng.uniform01();
    const double th1 = 0.01 + rng.uniform01();
    const double th2 = -(0.01 + rng.uniform01());
    const double same_t = zero_pass_distance({t, th1}, {t, th2});
    const double through_zero =
        t * (1.0 - t) * std::abs(th1) + t * (1.0 - t) * std::abs(th2);
    CHECK(same_t == doctest::Approx(through_zero).epsilon(1e-15));
  }
}

TEST_CASE("metric axioms on random triples") {
  Xoshiro256pp rng(20250801, 14);
  for (int i = 0; i < 10000; ++i) {
    ManifoldCoords a = random_coords(rng);
    ManifoldCoords b = random_coords(rng);
    ManifoldCoords c = random_coords(rng);
    if (i % 7 == 0) a = {0.0, 0.0};
    if (i % 11 == 0) b = {b.t, 0.0};

    const double ab = zero_pass_distance(a, b);
    const double bc = zero_pass_distance(b, c);
    const double ac = zero_pass_distance(a, c);

    CHECK(ab >= 0.0);
    CHECK(ab == zero_pass_distance(b, a));
    CHECK(ac <= ab + bc + 1e-12);
    if (equivalent(a, b)) {
      CHECK(ab == 0.0);
    } else {
      CHECK(ab > 0.0);
    }
  }
}
