#include <doctest.h>

#include <cmath>

#include "suita/error.hpp"
#include "suita/oracles.hpp"
#include "suita/sublevel.hpp"
#include "support.hpp"

using namespace suita;
using namespace testing_support;

namespace {

// {G < t} for the unit disc with pole a is the disc |z - a| / |1 - conj(a) z| < e^t
double disc_sublevel_area(double a, double t) {
  const double s = std::exp(t);
  const double r = s * (1 - a * a) / (1 - s * s * a * a);
  return kPi * r * r;
}

}  // namespace

TEST_CASE("disc sublevel areas") {
  const Domain disc(Disc{});
  const SublevelGrid centred(disc, 0.0, 256);
  const SublevelGrid shifted(disc, 0.5, 256);
  for (double t : {-3.0, -1.0, -0.5, -0.1}) {
    CHECK(rel(centred.area(t).area, kPi * std::exp(2 * t)) <= 1e-10);
    CHECK(rel(shifted.area(t).area, disc_sublevel_area(0.5, t)) <= 1e-8);
    CHECK(rel(centred.coarea(t), 2 * kPi * std::exp(2 * t)) <= 1e-8);
  }
  CHECK_THROWS_AS(centred.area(0.1), Error);
}

TEST_CASE("annulus sublevel area against Monte Carlo") {
  const Domain ring(Annulus{0.5});
  const SublevelGrid grid(ring, 0.7, 512);
  for (double t : {-2.0, -1.0, -0.3}) {
    const SublevelArea a = grid.area(t);
    const McEstimate mc = mc_area(ring, 0.7, t, 400000, 3);
    CHECK(std::abs(a.area - mc.mean) <= 4 * mc.stdError + a.errorEstimate);
    CHECK(a.errorEstimate <= 1e-6 * a.area);
  }
}

TEST_CASE("co-area integral matches the derivative of the area") {
  const std::vector<std::pair<Domain, Point>> s = {{Domain(Annulus{0.5}), 0.7},
                                                   {Domain(Annulus{0.3}), Point(-0.4, 0.3)},
                                                   {make_moebius(Domain(Disc{}), 2, Point(0.5, 0.5), 0, 1), 1.1}};
  const double h = 1e-4;
  for (const auto& [d, w] : s) {
    const SublevelGrid grid(d, w, 512);
    for (double t : {-1.5, -0.6, -0.2}) {
      const double fd = (grid.area(t + h).area - grid.area(t - h).area) / (2 * h);
      CHECK(rel(grid.coarea(t), fd) <= 1e-5);
    }
  }
}

TEST_CASE("profile invariants") {
  const SublevelProfile p = profile_scan(Domain(Annulus{0.5}), 0.7, -3.0, -0.1, 12, 256);
  REQUIRE(p.t.size() == 12);
  CHECK(p.t.front() == -3.0);
  CHECK(p.t.back() == -0.1);
  CHECK(std::isnan(p.secondDiff.front()));
  CHECK(std::isnan(p.secondDiff.back()));
  CHECK(p.lambdaHalf.size() == 12);
  for (std::size_t i = 0; i < p.t.size(); ++i) {
    CHECK(p.lambda[i] > 0.0);
    CHECK(p.lambda[i] < domain_area(Domain(Annulus{0.5})));
    if (i) CHECK(p.lambda[i] > p.lambda[i - 1]);
    CHECK(p.logLambda[i] == doctest::Approx(std::log(p.lambda[i])));
    CHECK(p.e2tLambda[i] == doctest::Approx(std::exp(-2 * p.t[i]) * p.lambda[i]));
    if (!p.criticalLevel[i]) CHECK(p.gammaPrime[i] > 0.0);
  }
  CHECK(monotonicity_check(p).pass);
  CHECK_THROWS_AS(profile_scan(Domain(Disc{}), 0.0, -1.0, -2.0, 12, 64), Error);
  CHECK_THROWS_AS(profile_scan(Domain(Disc{}), 0.0, -1.0, -0.5, 4, 64), Error);
}

TEST_CASE("corrupted profile fails the monotonicity check") {
  SublevelProfile p = profile_scan(Domain(Disc{}), 0.5, -2.0, -0.2, 10, 128, false);
  CHECK(monotonicity_check(p).pass);
  p.lambda[5] *= 0.9;
  refresh_profile(p);
  const MonotonicityResult m = monotonicity_check(p);
  CHECK_FALSE(m.pass);
  CHECK(m.maxIncrease > m.tolerance);
}

TEST_CASE("convexity verdicts on synthetic profiles") {
  SublevelProfile p;
  for (int i = 0; i < 21; ++i) {
    const double t = -2.0 + 0.1 * i;
    p.t.push_back(t);
    p.lambda.push_back(std::exp(2 * t + 0.3 * t * t));  // log lambda convex
    p.errEst.push_back(1e-14);
  }
  refresh_profile(p);
  ConvexityReport r = convexity_report(p, -1.0);
  CHECK(r.verdict == ConvexityVerdict::ConvexWithinTolerance);
  CHECK(r.minSecondDiff == doctest::Approx(0.6).epsilon(1e-6));

  p.lambda[10] *= std::exp(0.05);  // a bump makes log lambda concave at t = -1
  refresh_profile(p);
  r = convexity_report(p, -1.0);
  CHECK(r.verdict == ConvexityVerdict::NonConvexDetected);
  CHECK(r.argminT == doctest::Approx(-1.0));

  // the same bump is invisible once the claimed error swamps it
  for (double& e : p.errEst) e = 1e-1;
  CHECK(convexity_report(p, -1.0).verdict == ConvexityVerdict::ConvexWithinTolerance);
  CHECK_THROWS_AS(convexity_report(p, -1.0, 0.2), Error);
}

TEST_CASE("reconstruction of lambda from the co-area integral") {
  const Domain ring(Annulus{0.5});
  const SublevelGrid grid(ring, 0.7, 512);
  // lambda(t1) - lambda(t0) = integral of gamma' over [t0, t1] (Simpson)
  const double t0 = -2.0, t1 = -0.5;
  const int n = 60;
  const double h = (t1 - t0) / n;
  double s = grid.coarea(t0) + grid.coarea(t1);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * grid.coarea(t0 + i * h);
  s *= h / 3;
  const double exact = grid.area(t1).area - grid.area(t0).area;
  CHECK(rel(s, exact) <= 1e-2);
  CHECK(rel(s, exact) <= 1e-6);
}

TEST_CASE("near-pole asymptotics lambda ~ pi e^{2t} / c^2") {
  const Domain ring(Annulus{0.5});
  const double c = robin_capacity(ring, 0.7).capacity;
  const SublevelGrid grid(ring, 0.7, 512);
  const double t = -6.0;
  CHECK(rel(grid.area(t).area, kPi * std::exp(2 * t) / (c * c)) <= 1e-3);
}

TEST_CASE("level curves of the centred disc are circles") {
  const SublevelGrid grid(Domain(Disc{}), 0.0, 128);
  const auto curves = grid.level_curves(-1.0);
  REQUIRE_FALSE(curves.empty());
  for (const auto& c : curves)
    for (Point p : c) CHECK(std::abs(std::abs(p) - std::exp(-1.0)) <= 1e-10);
}
