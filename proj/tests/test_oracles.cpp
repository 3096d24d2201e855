#include <doctest.h>

#include <cmath>

#include "suita/error.hpp"
#include "suita/green.hpp"
#include "suita/oracles.hpp"
#include "support.hpp"

using namespace suita;
using namespace testing_support;

TEST_CASE("counter rng streams are reproducible and independent") {
  CounterRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
  }
  CounterRng u(1, 1);
  double mean = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double v = u.uniform();
    CHECK((v >= 0.0 && v < 1.0));
    mean += v;
  }
  CHECK(std::abs(mean / 100000 - 0.5) < 0.005);
}

TEST_CASE("walk on spheres: disc example and determinism") {
  const Domain disc(Disc{});
  const Point w(0.3, -0.2);
  const McEstimate a = wos_green(disc, w, 0.5, 100000, 11);
  const McEstimate b = wos_green(disc, w, 0.5, 100000, 11);
  CHECK(a.mean == b.mean);
  CHECK(a.stdError == b.stdError);
  CHECK(a.samples == 100000);
  CHECK(std::abs(a.mean - green_eval(disc, w, 0.5).value) <= 4 * a.stdError);
  CHECK(wos_green(disc, w, 0.5, 100000, 12).mean != a.mean);
  // with the pole at the centre every walk contributes the same value
  CHECK(wos_green(disc, 0.0, 0.5, 1000, 1).mean == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(wos_green(disc, 0.0, 2.0, 100, 1), Error);
}

TEST_CASE("walk on spheres on a polygon is symmetric") {
  const Domain square(Polygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
  const Point z(0.3, 0.4), w(0.6, 0.7);
  const McEstimate a = wos_green(square, w, z, 200000, 1), b = wos_green(square, z, w, 200000, 2);
  CHECK(std::abs(a.mean - b.mean) <= 3 * std::hypot(a.stdError, b.stdError));
  CHECK(a.mean < 0.0);
}

TEST_CASE("monte carlo area") {
  const McEstimate m = mc_area(Domain(Disc{}), 0.0, -1.0, 200000, 5);
  CHECK(std::abs(m.mean - kPi * std::exp(-2.0)) <= 4 * m.stdError);
  CHECK(mc_area(Domain(Disc{}), 0.0, -1.0, 200000, 5).mean == m.mean);
}

TEST_CASE("equivariance under rotation of the annulus") {
  const Domain ring(Annulus{0.5});
  const Point w(0.7, 0.0), z(-0.6, 0.2);
  const McEstimate base = wos_green(ring, w, z, 100000, 3);
  const double exact = green_eval(ring, w, z).value;
  CHECK(std::abs(base.mean - exact) <= 4 * base.stdError);
  for (double angle : {kPi / 5, 2.0, -2.5}) {
    const Point rot = std::polar(1.0, angle);
    const McEstimate r = wos_green(ring, w * rot, z * rot, 100000, 3);
    CHECK(std::abs(r.mean - base.mean) <= 4 * std::hypot(r.stdError, base.stdError));
    CHECK(green_eval(ring, w * rot, z * rot).value == doctest::Approx(exact).epsilon(1e-12));
    const McEstimate a = mc_area(ring, w * rot, -1.0, 100000, 4), b = mc_area(ring, w, -1.0, 100000, 4);
    CHECK(std::abs(a.mean - b.mean) <= 4 * std::hypot(a.stdError, b.stdError));
  }
}

TEST_CASE("robin extrapolation and grid scan") {
  const Domain ring(Annulus{0.5});
  const double c = robin_capacity(ring, 0.7).capacity;
  CHECK(rel(robin_extrapolate(ring, 0.7, {0.04, 0.02, 0.01, 0.005}), c) <= 1e-6);
  const auto seeds = grid_min_gradient(ring, 0.7, 256);
  const auto cps = critical_points(ring, 0.7);
  REQUIRE_FALSE(seeds.empty());
  REQUIRE(cps.size() == 1);
  double best = 1e300;
  for (Point s : seeds) best = std::min(best, std::abs(s - cps.front().location));
  CHECK(best <= 2.0 / 256 * 2);
}
