#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qctame/error.hpp"
#include "qctame/modulus.hpp"
#include "qctame/pointsets.hpp"
#include "qctame/qcmaps.hpp"

using namespace qctame;

TEST_CASE("map specs") {
  CHECK_THROWS_AS(MapSpec::affine({0, 0}, {1, 0}), InvalidArgument);
  CHECK_THROWS_AS(MapSpec::horizontal_stretch(0.5), InvalidArgument);
  CHECK_THROWS_AS(MapSpec::piecewise_affine({0.0}, {1.0, -1.0}), InvalidArgument);
  const MapSpec pw = MapSpec::piecewise_affine({-1.0, 2.0}, {0.5, 2.0, 1.0});
  CHECK(pw.exact_dilatation() == 2.0);
  CHECK(pw.apply({0, 3}) == Point{0, 3});
  CHECK(pw.apply({2, 0}).re == doctest::Approx(4.0));
  CHECK(pw.apply({-3, 0}).re == doctest::Approx(-3.0));
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  const MapSpec af = MapSpec::affine({1.5, -0.5}, {2, 3});
  for (int t = 0; t < 100; ++t) {
    const Point p{u(rng), u(rng)};
    for (const MapSpec& m : {pw, af, MapSpec::horizontal_stretch(3.0)}) {
      const Point q = m.inverse(m.apply(p));
      CHECK(q.re == doctest::Approx(p.re).epsilon(1e-12));
      CHECK(q.im == doctest::Approx(p.im).epsilon(1e-12));
    }
  }
}

TEST_CASE("dilatation estimate") {
  const Window w = Window::square({0.3, -0.2}, 2.0);
  CHECK(dilatation_estimate(MapSpec::identity(), w, 0.05) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dilatation_estimate(MapSpec::affine({0.3, 2.0}, {5, -1}), w, 0.05) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dilatation_estimate(MapSpec::horizontal_stretch(3.0), w, 0.05) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(dilatation_estimate(MapSpec::horizontal_stretch(1.7), w, 0.1) == doctest::Approx(1.7).epsilon(1e-9));
  const MapSpec pw = MapSpec::piecewise_affine({0.05}, {1.0, 4.0});
  const double k = dilatation_estimate(pw, w, 0.1);
  CHECK(k <= pw.exact_dilatation() * (1 + 1e-9));
  CHECK(k >= 1.0);
}

TEST_CASE("lemma 3 check examples") {
  const auto id = lemma3_check(MapSpec::identity(), 1.0, 0, 10, 1);
  CHECK(id.lhs == doctest::Approx(0.1));
  CHECK(id.rhs == doctest::Approx(24.57).epsilon(2e-3));
  CHECK(id.holds);
  const auto st = lemma3_check(MapSpec::horizontal_stretch(2), 2.0, 0, 10, 1);
  CHECK(st.lhs == doctest::Approx(0.1));
  CHECK(st.rhs == doctest::Approx(652.6).epsilon(2e-3));
  CHECK(st.holds);
  const auto near = lemma3_check(MapSpec::identity(), 1.0, 0, 2, 1);
  CHECK(near.lhs == doctest::Approx(0.5));
  CHECK(near.rhs == doctest::Approx(std::exp(std::numbers::pi * std::numbers::pi / std::log(5.0)) - 1));
  CHECK(near.holds);
  CHECK_THROWS_AS(lemma3_check(MapSpec::horizontal_stretch(2), 1.0, 0, 10, 1), InvalidArgument);
  CHECK_THROWS_AS(lemma3_check(MapSpec::identity(), 1.0, 5, 5, 1), InvalidArgument);
}

TEST_CASE("lemma 3 holds on a randomized grid of built-in maps") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long long> gap(1, 1000), dd(1, 100), start(-500, 500);
  std::uniform_real_distribution<double> slope(0.2, 5.0), k(1.0, 6.0);
  int violations = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<MapSpec> maps{MapSpec::identity(), MapSpec::horizontal_stretch(k(rng)),
                              MapSpec::affine({slope(rng), slope(rng) - 2.5}, {1.0, 2.0}),
                              MapSpec::piecewise_affine({-3.0, 4.0}, {slope(rng), slope(rng), slope(rng)})};
    const long long n = start(rng);
    const long long m = n + gap(rng);
    const long long d = dd(rng);
    for (const MapSpec& f : maps) violations += !lemma3_check(f, f.exact_dilatation(), n, m, d).holds;
  }
  CHECK(violations == 0);
}

TEST_CASE("small diameter search") {
  CHECK(small_diameter_search(MapSpec::identity(), 1, 1.5, -10, 10) == -9);
  CHECK_FALSE(small_diameter_search(MapSpec::identity(), 1, 0.5, -10, 10));
  CHECK(small_diameter_search(MapSpec::horizontal_stretch(2), 2, 4.0, 0, 5) == 2);

  const MapSpec pw = MapSpec::piecewise_affine({-5.0, 5.0}, {3.0, 0.25, 3.0});
  const auto n = small_diameter_search(pw, 2, 0.6, -20, 20);
  REQUIRE(n);
  // Re-verify at ten times the sampling density.
  CHECK(image_interval_diameter(pw, static_cast<double>(*n - 2), static_cast<double>(*n), 40960) <= 0.6 + 1e-12);
}

TEST_CASE("uniform domain conditions") {
  const Point z1{-1, 1}, z2{1, 1};
  const Curve straight({z1, z2});
  const auto far = uniform_conditions_check(straight, z1, z2, Curve({{-100, -100}, {100, -100}}), 1.0);
  CHECK(far.cond1);
  CHECK(far.cond2);

  const Curve detour({z1, {-1, 3}, {1, 3}, z2});
  CHECK(detour.length() == doctest::Approx(6.0));
  CHECK_FALSE(uniform_conditions_check(detour, z1, z2, Curve({{-100, -100}, {100, -100}}), 2.0).cond1);

  const double r = 2.0;
  const Curve arc = Curve::upper_half_circle({0, 0}, r, 512);
  const double c = std::numbers::pi / 2 * (1 + 1e-3);
  const auto half = uniform_conditions_check(arc, {-r, 0}, {r, 0}, Curve({{-10, 0}, {10, 0}}), c);
  CHECK(half.cond1);
  CHECK(half.length_ratio == doctest::Approx(arc.length() / (2 * r)));
  // The worst cigar ratio is at the top of the arc: (pi r / 2) / r.
  CHECK(half.cond2);
  CHECK(half.worst_cigar == doctest::Approx(std::numbers::pi / 2).epsilon(1e-4));
  CHECK_FALSE(uniform_conditions_check(arc, {-r, 0}, {r, 0}, Curve({{-10, 0}, {10, 0}}), 1.5).cond2);

  const auto lifted = uniform_conditions_check(Curve({{0, 0.5}, {3, 0.5}}), {0, 0.5}, {3, 0.5},
                                               SetSpec::integers(), 4.0);
  CHECK(lifted.cond1);
  CHECK(lifted.cond2);

  CHECK_THROWS_AS(uniform_conditions_check(straight, z1, {5, 5}, SetSpec::integers(), 1.0), InvalidArgument);
}
