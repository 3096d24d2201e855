#include <doctest.h>

#include <cmath>
#include <sstream>

#include "suita/bergman.hpp"
#include "suita/cli.hpp"
#include "suita/error.hpp"
#include "suita/verify.hpp"
#include "support.hpp"

using namespace suita;
using namespace testing_support;

TEST_CASE("make_check margins and status") {
  const ToleranceTable tol = default_tolerances();
  const CheckContext ctx{"disc:0,0,1", "0,0", ""};
  Check c = make_check("suita.j0", 1.0, 2.0, false, ctx, tol);
  CHECK(c.margin == 1.0);
  CHECK(c.status == CheckStatus::Pass);
  c = make_check("suita.j0", 2.0, 1.0, false, ctx, tol);
  CHECK(c.margin == -1.0);
  CHECK(c.failed());
  c = make_check("suita.j0", 2.0, 1.0, true, ctx, tol);
  CHECK(c.margin == -1.0);
  c = make_check("suita.j0", 1.0, 1.0 + 1e-10, true, ctx, tol);
  CHECK(c.status == CheckStatus::Pass);
  c = make_check("suita.j0", 1.0, 1.0 + 1e-6, true, ctx, tol);
  CHECK(c.failed());
  c = make_check("suita.j0", std::nan(""), 1.0, false, ctx, tol);
  CHECK(c.failed());
  CHECK(skipped_check("thm2", ctx).status == CheckStatus::Skipped);
}

TEST_CASE("tolerance lookup falls back through prefixes") {
  ToleranceTable t = default_tolerances();
  CHECK(t.lookup("blb.monotone") == 1e-4);
  CHECK(t.lookup("blb.lower") == 1e-6);
  CHECK(t.lookup("thm4") == 0.0);
  CHECK(t.lookup("oracle.robin") == 1e-6);
  CHECK(t.lookup("nothing.here") == 1e-8);
  CHECK(t.lookup("thm1.r") == 1e-8);
}

TEST_CASE("capacity-distance bound constant") {
  CHECK(kThm2Constant == doctest::Approx((11 + 5 * std::sqrt(5.0)) / (4 * kPi)).epsilon(1e-15));
  CHECK(kThm2Constant == doctest::Approx(1.76505537).epsilon(1e-8));
}

TEST_CASE("suita checks pass on sample domains") {
  for (const auto& [d, w] : std::vector<std::pair<Domain, Point>>{
           {Domain(Disc{}), 0.5}, {Domain(Annulus{0.3}), 0.58}, {Domain(PolarComplement{}), 1.0}}) {
    const auto checks = suita_check(d, w, 6);
    CHECK(checks.size() == 7);
    for (const auto& c : checks) CHECK_FALSE(c.failed());
  }
  // on q = 0.3 the gap is about 1e-6 relative: strictly positive even with zero tolerance
  ToleranceTable strict = default_tolerances();
  for (auto& [k, v] : strict.values) v = 0.0;
  for (const auto& c : suita_check(Domain(Annulus{0.3}), 0.58, 6, strict)) CHECK(c.margin > 0.0);
}

TEST_CASE("negative control: an understated kernel fails") {
  const Domain ring(Annulus{0.3});
  const auto checks = suita_check(ring, 0.58, 0);
  REQUIRE(checks.size() == 1);
  const Check& good = checks.front();
  const Check bad = make_check(good.name, good.lhs, good.lhs * (1 - 1e-3), false, good.context, default_tolerances());
  CHECK(bad.failed());
}

TEST_CASE("kernel upper bound checks") {
  for (const auto& c : thm1_check(Domain(Annulus{0.5}), 0.7, {})) CHECK_FALSE(c.failed());
  CHECK(thm1_check(Domain(Disc{}), 0.0, {}).back().name == "thm1.optimal");
  CHECK(thm2_check(Domain(Disc{}), 0.0).status == CheckStatus::Skipped);
  CHECK_FALSE(thm2_ratio(Domain(Disc{}), 0.0).has_value());
  const Check t2 = thm2_check(Domain(Annulus{0.5}), 0.7);
  CHECK(t2.status == CheckStatus::Pass);
  CHECK(*thm2_ratio(Domain(Annulus{0.5}), 0.7) < kThm2Constant);
  CHECK(poisson_step_check(Domain(Annulus{0.5}), 0.7, 0.05).status == CheckStatus::Pass);
}

TEST_CASE("blb check detects a corrupted profile") {
  const Domain ring(Annulus{0.5});
  SublevelProfile p = profile_scan(ring, 0.7, -2.0, -0.2, 10, 128, false);
  for (const auto& c : blb_check(ring, 0.7, p)) CHECK_FALSE(c.failed());
  p.lambda[4] *= 1.5;  // exceeds pi e^{2t} / c^2
  refresh_profile(p);
  bool anyFailed = false;
  for (const auto& c : blb_check(ring, 0.7, p)) anyFailed = anyFailed || c.failed();
  CHECK(anyFailed);
}

TEST_CASE("characterization probe") {
  const auto checks = characterization_probe({{Domain(PolarComplement{}), 1.0}, {Domain(Annulus{0.5}), 0.7}}, 1);
  CHECK_FALSE(checks.empty());
  for (const auto& c : checks) CHECK_FALSE(c.failed());
}

TEST_CASE("small run_suite is deterministic and validated") {
  Config cfg;
  cfg.samples = {{Domain(Disc{}), {0.3}}, {Domain(Annulus{0.5}), {0.7}}};
  cfg.suite = "thm1";
  cfg.seeds = {3};
  const VerificationReport a = run_suite(cfg), b = run_suite(cfg);
  CHECK(a.all_passed());
  CHECK(a.checks.size() == 10);
  std::ostringstream sa, sb;
  write_report_csv(a, sa);
  write_report_csv(b, sb);
  CHECK(sa.str() == sb.str());

  Config bad = cfg;
  bad.suite = "nope";
  CHECK_THROWS_AS(run_suite(bad), Error);
  bad = cfg;
  bad.samples = {{Domain(Disc{}), {2.0}}};
  CHECK_THROWS_AS(run_suite(bad), Error);

  Config strict = cfg;
  strict.suite = "suita";
  strict.toleranceOverrides["*"] = 0.0;
  const VerificationReport s = run_suite(strict);
  CHECK(s.checks.size() == 14);
}
