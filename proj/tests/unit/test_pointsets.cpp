#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "../oracles.hpp"
#include "qctame/error.hpp"
#include "qctame/pointsets.hpp"

using namespace qctame;

namespace {

std::vector<SetSpec> generators() {
  return {SetSpec::integers(),        SetSpec::gauss_int(),        SetSpec::family_as(0.5),
          SetSpec::family_as(2.0),    SetSpec::family_as_prime(1.5), SetSpec::geometric(),
          SetSpec::shrinking_rings()};
}

}  // namespace

TEST_CASE("window containment chain") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 2000; ++t) {
    const Point c{u(rng), u(rng)};
    const double r = std::abs(u(rng)) + 0.1;
    const Point p{c.re + u(rng), c.im + u(rng)};
    if (Window::disk(c, r).contains(p)) CHECK(Window::square(c, r).contains(p));
    if (Window::square(c, r).contains(p)) CHECK(Window::disk(c, std::sqrt(2.0) * r * (1 + 1e-15)).contains(p));
  }
  CHECK_THROWS_AS(Window::disk({0, 0}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(Window::square({0, 0}, -1.0), InvalidArgument);
}

TEST_CASE("enumerate examples") {
  const auto ints = enumerate(SetSpec::integers(), Window::disk({0, 0}, 2.5));
  CHECK(ints == std::vector<Point>{{-2, 0}, {-1, 0}, {0, 0}, {1, 0}, {2, 0}});

  const auto gauss = enumerate(SetSpec::gauss_int(), Window::square({0, 0}, 1));
  CHECK(gauss.size() == 9);

  const Window w = Window::disk({0, 32}, 0.1);
  const auto ring = enumerate(SetSpec::shrinking_rings(), w);
  CHECK(ring == oracle::rings(6, 1, w));
  REQUIRE(ring.size() == 5);
  for (const Point& p : ring) CHECK(std::hypot(p.re, p.im - 32.0) == doctest::Approx(1.0 / 64).epsilon(1e-12));
}

TEST_CASE("shrinking ring level one is a single point") {
  const auto pts = enumerate(SetSpec::shrinking_rings(), Window::square({0, 2}, 0.5));
  CHECK(pts == std::vector<Point>{{0.0, 2.25}});
}

TEST_CASE("generators agree with formula enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> cx(-4.0, 4.0), cy(-30.0, 70.0), ext(0.3, 12.0);
  for (int t = 0; t < 200; ++t) {
    const WindowShape shape = t % 2 ? WindowShape::Disk : WindowShape::Square;
    const Window w(shape, {cx(rng), cy(rng)}, ext(rng));
    const int kmax = 20;
    CHECK(enumerate(SetSpec::gauss_int(), w) ==
          oracle::rows([] { std::vector<double> h; for (int k = -100; k <= 100; ++k) h.push_back(k); return h; }(),
                       kmax, w));
    CHECK(enumerate(SetSpec::family_as(0.5), w) == oracle::rows(oracle::as_heights(0.5, 10000, true), kmax, w));
    CHECK(enumerate(SetSpec::family_as(2.0), w) == oracle::rows(oracle::as_heights(2.0, 100, true), kmax, w));
    CHECK(enumerate(SetSpec::family_as_prime(1.5), w) == oracle::rows(oracle::as_heights(1.5, 100, false), kmax, w));
    CHECK(enumerate(SetSpec::geometric(), w) ==
          oracle::rows({1, 2, 4, 8, 16, 32, 64, 128, 256}, kmax, w));
    CHECK(enumerate(SetSpec::shrinking_rings(), w) == oracle::rings(8, kmax, w));
  }
}

TEST_CASE("nested windows restrict enumeration") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0), r(0.5, 10.0);
  for (const SetSpec& set : generators()) {
    for (int t = 0; t < 30; ++t) {
      const Point c{u(rng), u(rng) + 20.0};
      const double r2 = r(rng);
      const double r1 = r2 * 0.6;
      const Window outer = Window::square(c, r2);
      const Window inner = Window::disk({c.re + 0.1 * r2, c.im}, r1);
      std::vector<Point> filtered;
      for (const Point& p : enumerate(set, outer)) {
        if (inner.contains(p)) filtered.push_back(p);
      }
      CHECK(enumerate(set, inner) == filtered);
    }
  }
}

TEST_CASE("period translation symmetry") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0), r(0.5, 6.0);
  for (const SetSpec& set : generators()) {
    REQUIRE(set.period());
    const Point b(*set.period());
    for (int t = 0; t < 20; ++t) {
      const Window w = Window::disk({u(rng), u(rng) + 10.0}, r(rng));
      auto shifted = enumerate(set, w);
      for (Point& p : shifted) p = {p.re + b.re, p.im + b.im};
      auto direct = enumerate(set, w.translated(b));
      // Real parts that differ only by rounding noise can swap order after the shift.
      const auto by_column = [](const Point& p, const Point& q) {
        if (std::abs(p.re - q.re) > 1e-9) return p.re < q.re;
        return p.im < q.im;
      };
      std::sort(shifted.begin(), shifted.end(), by_column);
      std::sort(direct.begin(), direct.end(), by_column);
      REQUIRE(direct.size() == shifted.size());
      for (std::size_t i = 0; i < direct.size(); ++i) {
        CHECK(direct[i].re == doctest::Approx(shifted[i].re).epsilon(1e-12));
        CHECK(direct[i].im == shifted[i].im);
      }
    }
  }
}

TEST_CASE("nearest distance examples and oracles") {
  CHECK(nearest_distance(SetSpec::integers(), {0.5, 0}) == 0.5);
  CHECK(nearest_distance(SetSpec::gauss_int(), {0.5, 0.5}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(nearest_distance(SetSpec::family_as(1.0), {0.5, 0.5}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> x(-50.0, 50.0), y(-40.0, 40.0);
  for (int t = 0; t < 500; ++t) {
    const Point w{x(rng), y(rng)};
    // min over k in a certified range of (x - k)^2 + y^2
    double best = INFINITY;
    for (int k = static_cast<int>(std::floor(w.re)) - 3; k <= static_cast<int>(std::floor(w.re)) + 3; ++k) {
      best = std::min(best, (w.re - k) * (w.re - k) + w.im * w.im);
    }
    CHECK(nearest_distance(SetSpec::integers(), w) == doctest::Approx(std::sqrt(best)).epsilon(1e-14));
  }

  std::uniform_real_distribution<double> rx(-2.0, 2.0), ry(0.0, 140.0);
  const auto ring_pool = oracle::rings(9, 6, Window::square({0, 0}, 1000));
  const auto geo_pool = oracle::rows({1, 2, 4, 8, 16, 32, 64, 128, 256, 512}, 8, Window::square({0, 0}, 1000));
  const auto as_pool = oracle::rows(oracle::as_heights(2.0, 16, true), 8, Window::square({0, 0}, 1000));
  for (int t = 0; t < 300; ++t) {
    const Point w{rx(rng), ry(rng)};
    CHECK(nearest_distance(SetSpec::shrinking_rings(), w) == doctest::Approx(oracle::nearest(ring_pool, w)).epsilon(1e-13));
    CHECK(nearest_distance(SetSpec::geometric(), w) == doctest::Approx(oracle::nearest(geo_pool, w)).epsilon(1e-13));
    CHECK(nearest_distance(SetSpec::family_as(2.0), {w.re, w.im - 70.0}) ==
          doctest::Approx(oracle::nearest(as_pool, {w.re, w.im - 70.0})).epsilon(1e-13));
  }
}

TEST_CASE("nearest distance is 1-Lipschitz and vanishes exactly on the set") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-6.0, 6.0), small(-0.3, 0.3);
  for (const SetSpec& set : generators()) {
    for (int t = 0; t < 200; ++t) {
      const Point a{u(rng), u(rng) + 8.0};
      const Point b{a.re + small(rng), a.im + small(rng)};
      CHECK(std::abs(nearest_distance(set, a) - nearest_distance(set, b)) <= distance(a, b) * (1 + 1e-12) + 1e-15);
      const bool member = !enumerate(set, Window::square(a, 1e-9)).empty();
      CHECK((nearest_distance(set, a) == 0.0) == member);
    }
    for (const Point& p : enumerate(set, Window::square({0.3, 4.0}, 3.0))) CHECK(nearest_distance(set, p) == 0.0);
  }
}

TEST_CASE("set construction errors") {
  CHECK_THROWS_WITH_AS(SetSpec::family_as(-1.0), "s must be positive", InvalidArgument);
  CHECK_THROWS_WITH_AS(SetSpec::family_as_prime(0.0), "s must be positive", InvalidArgument);
  CHECK_THROWS_AS(SetSpec::explicit_points({{0, 0}, {0, 0}}), InvalidArgument);
  CHECK_THROWS_AS(SetSpec::explicit_points({{0, NAN}}), InvalidArgument);
}

TEST_CASE("normalize period") {
  CHECK_THROWS_WITH_AS(normalize_period(SetSpec::explicit_points({{0, 0}})),
                       "set has no declared translation symmetry", InvalidArgument);

  const SetSpec doubled = SetSpec::mapped(SetSpec::gauss_int(), MapSpec::affine({2, 0}, {0, 0}));
  REQUIRE(doubled.period());
  CHECK(*doubled.period() == std::complex<double>(2, 0));
  const SetSpec halved = normalize_period(doubled);
  CHECK(*halved.period() == std::complex<double>(1, 0));
  CHECK(enumerate(halved, Window::square({0, 0}, 2)) == enumerate(SetSpec::gauss_int(), Window::square({0, 0}, 2)));

  const SetSpec vertical = SetSpec::mapped(SetSpec::integers(), MapSpec::affine({0, 1}, {0, 0}));
  REQUIRE(vertical.period());
  CHECK(*vertical.period() == std::complex<double>(0, 1));
  const auto rotated = enumerate(normalize_period(vertical), Window::square({0, 0}, 3.5));
  CHECK(rotated == enumerate(SetSpec::integers(), Window::square({0, 0}, 3.5)));

  const auto rings = SetSpec::shrinking_rings();
  const Window w = Window::square({0.2, 30}, 40);
  CHECK(enumerate(normalize_period(rings), w) == enumerate(rings, w));
}

TEST_CASE("mapped sets compose with affine maps") {
  const MapSpec g = MapSpec::affine({0.5, 0.75}, {1.25, -2.0});
  const SetSpec base = SetSpec::family_as(1.5);
  const SetSpec image = SetSpec::mapped(base, g);
  const Window w = Window::disk({0.5, 1.0}, 6.0);
  std::vector<Point> expected;
  for (const Point& p : enumerate(base, Window::square({0, 0}, 60))) {
    const Point q = g.apply(p);
    if (w.contains(q)) expected.push_back({q.re + 0.0, q.im + 0.0});
  }
  std::sort(expected.begin(), expected.end());
  CHECK(enumerate(image, w) == expected);
}

TEST_CASE("point files round-trip and report errors") {
  const auto dir = std::filesystem::temp_directory_path() / "qctame_pointsets_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "gauss.csv";
  save_points(SetSpec::gauss_int(), Window::square({0, 0}, 2), file);
  const SetSpec loaded = load_points(file);
  CHECK(enumerate(loaded, Window::square({0, 0}, 10)) == enumerate(SetSpec::gauss_int(), Window::square({0, 0}, 2)));
  CHECK(enumerate(loaded, Window::square({0, 0}, 10)).size() == 25);

  const std::vector<Point> odd{{0.1, 1.0 / 3.0}, {-1e-300, 12345.678901234567}};
  save_points(odd, dir / "odd.csv");
  CHECK(enumerate(load_points(dir / "odd.csv"), Window::square({0, 0}, 1e5)) == oracle::sorted(odd));

  CHECK(parse_points_csv("0,0\n1,0").size() == 2);
  CHECK(parse_points_csv("re,im\n0,0\n").size() == 1);
  CHECK_THROWS_WITH_AS(parse_points_csv("abc,0", "pts.csv"), "pts.csv: malformed row at line 1", InvalidArgument);
  std::ofstream(dir / "dup.csv") << "0,0\n0,0\n";
  CHECK_THROWS_AS(load_points(dir / "dup.csv"), InvalidArgument);
  CHECK_THROWS_AS(load_points(dir / "missing.csv"), IoError);
  std::filesystem::remove_all(dir);
}
