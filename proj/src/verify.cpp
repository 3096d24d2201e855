#include "suita/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

#include "suita/bergman.hpp"
#include "suita/error.hpp"
#include "suita/green.hpp"
#include "suita/oracles.hpp"
#include "suita/parallel.hpp"

namespace suita {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kProbePoints = 5;
constexpr int kProbeMaxOrder = 6;

std::string fmt(const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.12g", key, v);
  return buf;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

bool simply_connected_with_green(const Domain& d) { return d.has_green_function() && d.is_simply_connected(); }

Check error_check(const std::string& name, const CheckContext& ctx, const Error& e) {
  Check c;
  c.name = name;
  c.lhs = c.rhs = c.margin = std::numeric_limits<double>::quiet_NaN();
  c.status = CheckStatus::Fail;
  c.context = ctx;
  c.context.params += (c.context.params.empty() ? "" : ";") + std::string("error=") + to_string(e.kind());
  return c;
}

}  // namespace

const double kThm2Constant = (11.0 + 5.0 * std::sqrt(5.0)) / (4.0 * kPi);

double ToleranceTable::lookup(const std::string& name) const {
  std::string key = name;
  while (true) {
    if (auto it = values.find(key); it != values.end()) return it->second;
    const auto dot = key.rfind('.');
    if (dot == std::string::npos) break;
    key.resize(dot);
  }
  if (auto it = values.find(""); it != values.end()) return it->second;
  return 1e-8;
}

ToleranceTable default_tolerances() {
  ToleranceTable t;
  t.version = "1";
  t.values = {
      {"", 1e-8},
      {"suita", 1e-8},
      {"thm1", 1e-8},
      {"thm2", 1e-8},
      {"poisson", 1e-8},
      {"blb", 1e-6},
      {"blb.monotone", 1e-4},
      {"thm4", 0.0},
      {"characterization", 1e-8},
      {"characterization.positive", 0.0},
      {"characterization.laplacian", 0.0},
      {"oracle", 0.0},
      {"oracle.robin", 1e-6},
  };
  return t;
}

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.failed(); }));
}

std::size_t VerificationReport::skipped() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::Skipped; }));
}

CheckContext make_context(const Domain& domain, Point w, const std::string& params) {
  return {format_domain(domain), format_point(w), params};
}

Check make_check(const std::string& name, double lhs, double rhs, bool equality, const CheckContext& context,
                 const ToleranceTable& tolerances) {
  Check c;
  c.name = name;
  c.lhs = lhs;
  c.rhs = rhs;
  c.context = context;
  c.margin = equality ? -std::abs(rhs - lhs) : rhs - lhs;
  double scale = 1.0;
  if (std::isfinite(lhs)) scale = std::max(scale, std::abs(lhs));
  if (std::isfinite(rhs)) scale = std::max(scale, std::abs(rhs));
  const bool ok = !std::isnan(c.margin) && c.margin >= -tolerances.lookup(name) * scale;
  c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  return c;
}

Check skipped_check(const std::string& name, const CheckContext& context) {
  Check c;
  c.name = name;
  c.lhs = c.rhs = c.margin = std::numeric_limits<double>::quiet_NaN();
  c.status = CheckStatus::Skipped;
  c.context = context;
  return c;
}

std::vector<Check> suita_check(const Domain& domain, Point w, int jMax, const ToleranceTable& tolerances) {
  if (jMax < 0 || jMax > 6) throw Error(ErrorKind::DomainError, "jMax must lie in [0, 6]");
  const double c = robin_capacity(domain, w).capacity;
  const bool equality = simply_connected_with_green(domain);
  std::vector<Check> out;
  for (int j = 0; j <= jMax; ++j) {
    const double k = kernel_j(domain, w, j).value;
    const double bound = factorial(j) * factorial(j + 1) / kPi * std::pow(c, 2 * j + 2);
    out.push_back(make_check("suita.j" + std::to_string(j), bound, k, equality,
                             make_context(domain, w, "j=" + std::to_string(j)), tolerances));
  }
  return out;
}

std::vector<Check> thm1_check(const Domain& domain, Point w, const std::vector<double>& rList,
                              const ToleranceTable& tolerances) {
  const double delta = boundary_distance(domain, w).delta;
  std::vector<double> radii = rList;
  if (radii.empty()) radii = {0.25 * delta, 0.5 * delta, 0.75 * delta, delta};
  for (double r : radii) {
    if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "radii must be positive");
    if (r > delta * (1.0 + 1e-12)) throw Error(ErrorKind::RadiusTooLarge, "radius exceeds delta");
  }
  const double k = kernel_j(domain, w, 0).value;
  auto one = [&](const std::string& name, double r) {
    const double m = disc_max_green(domain, w, r);
    const double bound = m < 0.0 ? 1.0 / (-2.0 * kPi * r * r * m) : std::numeric_limits<double>::infinity();
    return make_check(name, k, bound, false, make_context(domain, w, fmt("r", r)), tolerances);
  };
  std::vector<Check> out;
  for (double r : radii) out.push_back(one("thm1.r", r));
  out.push_back(one("thm1.optimal", (std::sqrt(5.0) - 1.0) * delta / 2.0));
  return out;
}

std::optional<double> thm2_ratio(const Domain& domain, Point w) {
  const double delta = boundary_distance(domain, w).delta;
  const double c = robin_capacity(domain, w).capacity;
  if (delta * c >= 1.0 - 1e-12) return std::nullopt;
  return kernel_j(domain, w, 0).value * delta * delta * std::log(1.0 / (delta * c));
}

Check thm2_check(const Domain& domain, Point w, const ToleranceTable& tolerances) {
  const double delta = boundary_distance(domain, w).delta;
  const double c = robin_capacity(domain, w).capacity;
  const double dc = delta * c;
  if (dc >= 1.0 - 1e-12) {
    Check s = skipped_check("thm2", make_context(domain, w, fmt("delta_c", dc) + ";SkippedDegenerate"));
    return s;
  }
  const double k = kernel_j(domain, w, 0).value;
  const double bound = kThm2Constant / (delta * delta * std::log(1.0 / dc));
  return make_check("thm2", k, bound, false, make_context(domain, w, fmt("delta_c", dc)), tolerances);
}

std::vector<Check> blb_check(const Domain& domain, Point w, const SublevelProfile& profile,
                             const ToleranceTable& tolerances) {
  const double k = kernel_j(domain, w, 0).value;
  std::vector<Check> out;
  for (std::size_t i = 0; i < profile.t.size(); ++i)
    out.push_back(make_check("blb.lower", 1.0 / profile.e2tLambda[i], k, false,
                             make_context(domain, w, fmt("t", profile.t[i])), tolerances));
  const MonotonicityResult m = monotonicity_check(profile, 0.0);
  out.push_back(make_check("blb.monotone", m.maxIncrease, 0.0, false,
                           make_context(domain, w, fmt("grid", profile.resolution)), tolerances));
  return out;
}

std::pair<ConvexityReport, Check> thm4_scan(const Domain& domain, Point w, const Thm4Options& options,
                                            const ToleranceTable& tolerances) {
  if (!domain.has_green_function()) throw Error(ErrorKind::UnsupportedDomain, "thm4_scan needs a Green function");
  if (domain.is_simply_connected()) throw Error(ErrorKind::NoCriticalPoint, "simply connected domain");
  const SublevelGrid grid(domain, w, options.grid);
  const auto& cps = grid.critical_points();
  if (cps.empty()) throw Error(ErrorKind::NoCriticalPoint, "no interior zero of the gradient");
  const CriticalPoint cp =
      *std::max_element(cps.begin(), cps.end(), [](const auto& a, const auto& b) { return a.level < b.level; });
  const double t0 = cp.level;
  const double hw = std::min(options.maxHalfWidth, 0.9 * std::abs(t0));
  const SublevelGrid half(domain, w, std::max(8, options.grid / 2));
  const SublevelProfile profile = profile_scan(grid, &half, t0 - hw, t0 + hw, options.steps);
  const ConvexityReport report = convexity_report(profile, t0, hw);

  Check c = make_check("thm4", report.minSecondDiff, -report.noiseFloor, false,
                       make_context(domain, w, fmt("t0", t0) + ";" + fmt("half_width", hw) + ";" +
                                                   fmt("argmin_t", report.argminT)),
                       tolerances);
  c.status = report.verdict == ConvexityVerdict::NonConvexDetected ? CheckStatus::Pass : CheckStatus::Fail;
  return {report, c};
}

Check poisson_step_check(const Domain& domain, Point w, double r, const ToleranceTable& tolerances) {
  const double big = boundary_distance(domain, w).delta;
  if (!(r > 0.0) || !(r < big)) throw Error(ErrorKind::DomainError, "need 0 < r < delta");
  const double c = robin_capacity(domain, w).capacity;
  const double lhs = disc_max_green(domain, w, r);
  const double rhs = (big - r) / (big + r) * std::log(big * c);
  return make_check("poisson", lhs, rhs, false, make_context(domain, w, fmt("r", r)), tolerances);
}

std::vector<Check> characterization_probe(const std::vector<ProbeSample>& samples, std::uint64_t seed,
                                          const ToleranceTable& tolerances) {
  std::vector<Check> out;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Domain& domain = samples[s].domain;
    const Point w = samples[s].pole;
    for (int j = 0; j <= kProbeMaxOrder; ++j) {
      const double k = kernel_j(domain, w, j).value;
      const auto ctx = make_context(domain, w, "j=" + std::to_string(j));
      if (domain.is<PolarComplement>())
        out.push_back(make_check("characterization.zero", k, 0.0, true, ctx, tolerances));
      else
        out.push_back(make_check("characterization.positive", std::numeric_limits<double>::min(), k, false, ctx,
                                 tolerances));
    }
    if (domain.is<PolarComplement>()) continue;

    // log K^(j) at random interior points, five-point Laplacian
    const Box box = bounding_box(domain);
    const double h = 1e-3 * std::max(box.width(), box.height());
    std::vector<Point> points;
    for (std::uint64_t i = 0; points.size() < kProbePoints && i < 100000; ++i) {
      CounterRng rng(seed, s * 1000003ULL + i);
      const Point p(box.xmin + box.width() * rng.uniform(), box.ymin + box.height() * rng.uniform());
      if (contains(domain, p) && distance_to_boundary(domain, p) > 8.0 * h) points.push_back(p);
    }
    for (const Point p : points) {
      for (int j = 0; j <= kProbeMaxOrder; ++j) {
        auto logk = [&](Point z) { return std::log(kernel_j(domain, z, j).value); };
        const double lap = (logk(p + h) + logk(p - h) + logk(p + Point(0, h)) + logk(p - Point(0, h)) - 4.0 * logk(p)) /
                           (h * h);
        out.push_back(make_check("characterization.laplacian", std::numeric_limits<double>::min(), lap, false,
                                 make_context(domain, w, "j=" + std::to_string(j) + ";z=" + format_point(p)),
                                 tolerances));
      }
    }
  }
  return out;
}

std::vector<Check> oracle_checks(const Domain& domain, Point w, std::uint64_t walks, std::uint64_t seed,
                                 const ToleranceTable& tolerances) {
  std::vector<Check> out;
  if (const auto* poly = domain.get_if<Polygon>()) {
    Point centroid = 0.0;
    for (Point v : poly->vertices) centroid += v;
    centroid /= static_cast<double>(poly->vertices.size());
    const Point z = std::abs(centroid - w) > 1e-3 ? centroid : 0.5 * (w + poly->vertices.front());
    const McEstimate a = wos_green(domain, w, z, walks, seed);
    const McEstimate b = wos_green(domain, z, w, walks, splitmix64(seed));
    out.push_back(make_check("oracle.wos_symmetry", std::abs(a.mean - b.mean),
                             3.0 * std::hypot(a.stdError, b.stdError), false,
                             make_context(domain, w, "z=" + format_point(z)), tolerances));
    return out;
  }
  if (!domain.has_green_function()) return out;

  const double delta = boundary_distance(domain, w).delta;
  const Point z = w + 0.5 * delta * std::polar(1.0, 2.0);
  const double exact = green_eval(domain, w, z).value;
  const McEstimate mc = wos_green(domain, w, z, walks, seed);
  out.push_back(make_check("oracle.wos", std::abs(exact - mc.mean), 3.0 * mc.stdError, false,
                           make_context(domain, w, "z=" + format_point(z) + ";" + fmt("walks", double(walks))),
                           tolerances));

  const double cap = robin_capacity(domain, w).capacity;
  const double extrap = robin_extrapolate(domain, w, {0.4 * delta, 0.2 * delta, 0.1 * delta, 0.05 * delta});
  out.push_back(make_check("oracle.robin", extrap, cap, true, make_context(domain, w, ""), tolerances));
  return out;
}

std::vector<SampleSpec> default_plan() {
  std::vector<SampleSpec> plan;
  plan.push_back({Domain(Disc{}), {0.0, 0.5, 0.3}});
  for (double q : {0.3, 0.5, 0.8}) {
    auto at = [q](double f, double angle) { return std::polar(q + f * (1.0 - q), angle); };
    plan.push_back({Domain(Annulus{q}), {at(0.4, 0.0), at(0.5, kPi / 4.0), at(0.7, -2.0 * kPi / 3.0)}});
  }
  const Domain discImage = make_moebius(Domain(Disc{}), 2.0, Point(0.5, 0.5), 0.0, 1.0);
  plan.push_back({discImage, {discImage.get_if<MoebiusImage>()->forward(0.3)}});
  const Domain ringImage = make_moebius(Domain(Annulus{0.5}), 1.0, -0.3, -0.3, 1.0);
  plan.push_back({ringImage, {ringImage.get_if<MoebiusImage>()->forward(0.7)}});
  plan.push_back({Domain(Polygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}), {Point(0.3, 0.4)}});
  plan.push_back({Domain(PolarComplement{}), {1.0}});
  return plan;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"all",  "suita",   "thm1", "thm2", "blb", "thm4",
                                                 "poisson", "characterization", "oracle"};
  return names;
}

VerificationReport run_suite(const Config& config) {
  const auto start = std::chrono::steady_clock::now();
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), config.suite) == names.end())
    throw Error(ErrorKind::ParseError, "unknown suite '" + config.suite + "'");
  if (config.grid < 16 || config.thm4Grid < 16) throw Error(ErrorKind::ParseError, "grid sizes must be at least 16");
  if (config.profileSteps < 8) throw Error(ErrorKind::ParseError, "profile_steps must be at least 8");
  if (!(config.profileTMin < config.profileTMax) || !(config.profileTMax < 0.0))
    throw Error(ErrorKind::ParseError, "need profile_tmin < profile_tmax < 0");
  if (config.jMax < 0 || config.jMax > 6) throw Error(ErrorKind::ParseError, "jmax must lie in [0, 6]");
  if (config.walks < 2) throw Error(ErrorKind::ParseError, "walks must be at least 2");

  ToleranceTable tol = default_tolerances();
  if (auto it = config.toleranceOverrides.find("*"); it != config.toleranceOverrides.end())
    for (auto& [k, v] : tol.values) v = it->second;
  for (const auto& [k, v] : config.toleranceOverrides)
    if (k != "*") tol.values[k] = v;
  if (!config.toleranceOverrides.empty()) tol.version += "+overrides";

  const std::uint64_t seed = config.seeds.empty() ? 1 : config.seeds.front();
  const std::vector<SampleSpec> samples = config.samples.empty() ? default_plan() : config.samples;
  auto wants = [&](const char* s) { return config.suite == "all" || config.suite == s; };

  struct Task {
    std::string suite;
    const Domain* domain;
    Point pole;
  };
  std::vector<Task> tasks;
  VerificationReport report;
  for (const auto& spec : samples) {
    const Domain& d = spec.domain;
    const bool green = d.has_green_function();
    const bool polygon = d.is<Polygon>();
    for (Point w : spec.poles) {
      if (!contains(d, w)) throw Error(ErrorKind::ParseError, "pole " + format_point(w) + " outside " + format_domain(d));
      report.metadata.domains.push_back(format_domain(d));
      report.metadata.poles.push_back(format_point(w));
      for (const char* s : {"suita", "thm1", "thm2", "poisson", "blb", "thm4", "characterization", "oracle"}) {
        if (!wants(s)) continue;
        const std::string name = s;
        const bool run = polygon                           ? name == "oracle"
                         : d.is<PolarComplement>()          ? (name == "suita" || name == "characterization")
                         : green;
        if (run) tasks.push_back({name, &d, w});
      }
    }
  }

  std::vector<std::vector<Check>> results(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    const Task& task = tasks[i];
    const Domain& d = *task.domain;
    const Point w = task.pole;
    const std::uint64_t taskSeed = splitmix64(seed ^ splitmix64(i));
    auto& out = results[i];
    try {
      if (task.suite == "suita") {
        out = suita_check(d, w, config.jMax, tol);
      } else if (task.suite == "thm1") {
        out = thm1_check(d, w, {}, tol);
      } else if (task.suite == "thm2") {
        out.push_back(thm2_check(d, w, tol));
      } else if (task.suite == "poisson") {
        out.push_back(poisson_step_check(d, w, 0.5 * boundary_distance(d, w).delta, tol));
      } else if (task.suite == "blb") {
        const SublevelProfile p =
            profile_scan(d, w, config.profileTMin, config.profileTMax, config.profileSteps, config.grid, false);
        out = blb_check(d, w, p, tol);
      } else if (task.suite == "thm4") {
        try {
          out.push_back(thm4_scan(d, w, Thm4Options{config.thm4Grid, 17, 0.2}, tol).second);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::NoCriticalPoint) throw;
          out.push_back(skipped_check("thm4", make_context(d, w, "NoCriticalPoint")));
        }
      } else if (task.suite == "characterization") {
        out = characterization_probe({ProbeSample{d, w}}, taskSeed, tol);
      } else if (task.suite == "oracle") {
        out = oracle_checks(d, w, config.walks, taskSeed, tol);
      }
    } catch (const Error& e) {
      out.push_back(error_check(task.suite, make_context(d, w, ""), e));
    }
  });
  for (auto& r : results) report.checks.insert(report.checks.end(), r.begin(), r.end());

  auto& meta = report.metadata;
  meta.seeds = {seed};
  meta.gridSizes = {config.grid, config.thm4Grid, std::max(8, config.thm4Grid / 2)};
  meta.toleranceVersion = tol.version;
  meta.tolerances = tol.values;
  for (const auto& spec : samples) {
    if (!spec.domain.has_green_function()) continue;
    for (Point w : spec.poles) {
      meta.truncationOrders.push_back(kernel_j(spec.domain, w, 0).truncationOrder);
      if (auto r = thm2_ratio(spec.domain, w)) meta.thm2EmpiricalMax = std::max(meta.thm2EmpiricalMax, *r);
    }
  }
  meta.wallTimeSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace suita
