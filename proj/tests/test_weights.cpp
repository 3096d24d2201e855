#include <doctest.h>

#include <cmath>

#include "suita/error.hpp"
#include "suita/weights.hpp"
#include "support.hpp"

using namespace suita;
using namespace testing_support;

namespace {

long double eta_direct(long double s) { return -std::log(std::expm1(s) - s); }
long double gamma_direct(long double s) { return eta_direct(s) + std::log(-std::expm1(s)); }

}  // namespace

TEST_CASE("weights examples") {
  const WeightValues v = eval_weights(-1.0);
  CHECK(v.eta0 == doctest::Approx(1.0).epsilon(1e-15));  // e^{-1} - 1 + 1 = e^{-1}
  CHECK(v.gamma0 == doctest::Approx(1.0 + std::log(1 - std::exp(-1.0))).epsilon(1e-14));
  CHECK(v.s == -1.0);
  CHECK_THROWS_AS(eval_weights(0.0), Error);
  CHECK_THROWS_AS(eval_weights(0.5), Error);
}

TEST_CASE("weights against long double evaluation and finite differences") {
  for (double s : {-0.01, -0.3, -1.0, -3.0, -10.0, -25.0, -29.9, -30.1, -45.0}) {
    const WeightValues v = eval_weights(s);
    CHECK(rel(v.eta0, static_cast<double>(eta_direct(s))) <= 1e-12);
    CHECK(rel(v.gamma0, static_cast<double>(gamma_direct(s))) <= 1e-12);
    const long double h = 1e-4L * std::abs(s);
    const long double d1 = (eta_direct(s + h) - eta_direct(s - h)) / (2 * h);
    const long double d2 = (eta_direct(s + h) - 2 * eta_direct(s) + eta_direct(s - h)) / (h * h);
    const long double g1 = (gamma_direct(s + h) - gamma_direct(s - h)) / (2 * h);
    CHECK(rel(v.eta0p, static_cast<double>(d1)) <= 1e-6);
    CHECK(rel(v.eta0pp, static_cast<double>(d2)) <= 1e-4);
    CHECK(std::abs(v.gamma0p - static_cast<double>(g1)) <= 1e-6 * std::max(1.0, std::abs(v.gamma0p)));
  }
}

TEST_CASE("weights are continuous across the seam") {
  const WeightValues a = eval_weights(kWeightSeam - 1e-9), b = eval_weights(kWeightSeam + 1e-9);
  CHECK(rel(a.eta0, b.eta0) <= 1e-9);
  CHECK(rel(a.eta0p, b.eta0p) <= 1e-9);
  CHECK(rel(a.eta0pp, b.eta0pp) <= 1e-8);
  CHECK(rel(a.gamma0, b.gamma0) <= 1e-9);
  CHECK(rel(a.gap, b.gap) <= 1e-8);
}

TEST_CASE("weight invariants on a sample of s") {
  std::mt19937 gen(4);
  std::uniform_real_distribution<double> u(-60.0, -1e-3);
  for (int i = 0; i < 2000; ++i) {
    const double s = u(gen);
    const WeightValues v = eval_weights(s);
    CHECK(v.eta0p > 0.0);
    CHECK(v.eta0pp > 0.0);
    CHECK(v.gap >= 0.0);
    CHECK(v.gamma0 <= v.eta0);
    CHECK(identity_residual(s) <= 1e-10);
  }
}

TEST_CASE("war probe equals log(1 - e^s)") {
  const std::vector<double> s = {-1, -5, -10, -20, -40};
  const auto p = war_probe(s);
  REQUIRE(p.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(p[i] < 0.0);
    CHECK(std::abs(p[i] - std::log1p(-std::exp(s[i]))) <= 1e-12 * std::max(1e-300, std::abs(p[i])) + 1e-15);
    if (i) CHECK(std::abs(p[i]) < std::abs(p[i - 1]));
  }
  CHECK_THROWS_AS(war_probe({-1.0, 0.0}), Error);
}
