#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "suita/geometry.hpp"
#include "suita/sublevel.hpp"

namespace suita {

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckContext {
  std::string domain;
  std::string pole;
  std::string params;
};

/// One inequality instance. margin = rhs - lhs for "lhs <= rhs" checks and
/// -|rhs - lhs| for equalities, so positive always means pass.
struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  CheckStatus status = CheckStatus::Pass;
  CheckContext context;

  bool failed() const { return status == CheckStatus::Fail; }
};

/// Tolerances keyed by check name; lookup falls back through dotted prefixes
/// ("blb.monotone" -> "blb"). A check passes when
/// margin >= -tolerance * max(1, |lhs|, |rhs|).
struct ToleranceTable {
  std::string version = "1";
  std::map<std::string, double> values;

  double lookup(const std::string& name) const;
};

ToleranceTable default_tolerances();

struct ReportMetadata {
  std::vector<std::string> domains;
  std::vector<std::string> poles;
  std::vector<std::uint64_t> seeds;
  std::vector<int> gridSizes;
  std::vector<int> truncationOrders;
  std::string toleranceVersion;
  std::map<std::string, double> tolerances;
  /// Largest K * delta^2 * log(1/(delta c)) over the non-degenerate samples.
  double thm2EmpiricalMax = 0.0;
  /// Not written to CSV or JSON so that repeated runs stay byte-identical.
  double wallTimeSeconds = 0.0;
};

struct VerificationReport {
  std::vector<Check> checks;
  ReportMetadata metadata;

  std::size_t failures() const;
  std::size_t skipped() const;
  bool all_passed() const { return failures() == 0; }
};

struct SampleSpec {
  Domain domain;
  std::vector<Point> poles;
};

struct Config {
  std::vector<SampleSpec> samples;  // empty: default plan
  std::map<std::string, double> toleranceOverrides;
  std::vector<std::uint64_t> seeds;
  std::string suite = "all";
  int grid = 512;
  int thm4Grid = 256;
  int profileSteps = 12;
  double profileTMin = -3.0;
  double profileTMax = -0.1;
  int jMax = 6;
  std::uint64_t walks = 100000;
  std::string outCsv;
  std::string outJson;
};

std::vector<SampleSpec> default_plan();
const std::vector<std::string>& suite_names();

Check make_check(const std::string& name, double lhs, double rhs, bool equality, const CheckContext& context,
                 const ToleranceTable& tolerances);
Check skipped_check(const std::string& name, const CheckContext& context);
CheckContext make_context(const Domain& domain, Point w, const std::string& params);

std::vector<Check> suita_check(const Domain& domain, Point w, int jMax,
                               const ToleranceTable& tolerances = default_tolerances());

/// rList empty: quarter steps of delta. The optimal radius (sqrt5 - 1) delta / 2 is always appended.
std::vector<Check> thm1_check(const Domain& domain, Point w, const std::vector<double>& rList,
                              const ToleranceTable& tolerances = default_tolerances());

/// (11 + 5 sqrt5) / (4 pi)
extern const double kThm2Constant;

Check thm2_check(const Domain& domain, Point w, const ToleranceTable& tolerances = default_tolerances());
/// K * delta^2 * log(1/(delta c)); nullopt when delta c >= 1 - 1e-12.
std::optional<double> thm2_ratio(const Domain& domain, Point w);

std::vector<Check> blb_check(const Domain& domain, Point w, const SublevelProfile& profile,
                             const ToleranceTable& tolerances = default_tolerances());

struct Thm4Options {
  int grid = 256;
  int steps = 17;
  double maxHalfWidth = 0.2;
};

std::pair<ConvexityReport, Check> thm4_scan(const Domain& domain, Point w, const Thm4Options& options = {},
                                            const ToleranceTable& tolerances = default_tolerances());

Check poisson_step_check(const Domain& domain, Point w, double r,
                         const ToleranceTable& tolerances = default_tolerances());

struct ProbeSample {
  Domain domain;
  Point pole;
};

std::vector<Check> characterization_probe(const std::vector<ProbeSample>& samples, std::uint64_t seed = 1,
                                          const ToleranceTable& tolerances = default_tolerances());

/// Walk-on-spheres and Robin cross-checks; polygons get a symmetry test G(z,w) = G(w,z).
std::vector<Check> oracle_checks(const Domain& domain, Point w, std::uint64_t walks, std::uint64_t seed,
                                 const ToleranceTable& tolerances = default_tolerances());

VerificationReport run_suite(const Config& config);

}  // namespace suita
