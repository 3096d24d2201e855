#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "suita/bergman.hpp"
#include "suita/cli.hpp"
#include "suita/error.hpp"
#include "suita/green.hpp"
#include "suita/oracles.hpp"
#include "suita/sublevel.hpp"
#include "suita/weights.hpp"

namespace suita {

namespace {

using json = nlohmann::ordered_json;

CLI::Validator domain_validator() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          parse_domain(s);
        } catch (const Error& e) {
          return e.what();
        }
        return {};
      },
      "DOMAIN", "domain literal");
}

CLI::Validator point_validator() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          parse_point(s);
        } catch (const Error& e) {
          return e.what();
        }
        return {};
      },
      "X,Y", "point");
}

std::string row(std::initializer_list<std::string> fields) {
  std::string line;
  for (const auto& f : fields) line += (line.empty() ? "" : ",") + f;
  return line + "\n";
}

std::string n(double v) { return format_number(v); }
std::string n(std::uint64_t v) { return std::to_string(v); }
std::string n(int v) { return std::to_string(v); }

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::DomainError:
    case ErrorKind::InvalidDomain:
    case ErrorKind::PointOutsideDomain:
    case ErrorKind::UnsupportedDomain:
    case ErrorKind::MapSingular:
    case ErrorKind::CoincidentPoints:
    case ErrorKind::RadiusTooLarge:
    case ErrorKind::StencilOutsideDomain:
    case ErrorKind::LevelAbovePeak:
    case ErrorKind::ParseError:
    case ErrorKind::IoError: return true;
    default: return false;
  }
}

struct Runner {
  std::ostream& out;
  std::ostream& err;

  int operator()(const GreenCommand& c) const {
    const GreenValue g = green_eval(parse_domain(c.domain), parse_point(c.pole), parse_point(c.at));
    out << row({n(g.value), n(g.gradX), n(g.gradY), n(g.truncationBound)});
    return 0;
  }

  int operator()(const CapacityCommand& c) const {
    const CapacityResult r = robin_capacity(parse_domain(c.domain), parse_point(c.pole));
    out << row({n(r.capacity), n(r.robinConstant), n(r.truncationBound)});
    return 0;
  }

  int operator()(const CriticalCommand& c) const {
    out << row({"x", "y", "level", "gradient_residual", "order"});
    for (const auto& cp : critical_points(parse_domain(c.domain), parse_point(c.pole)))
      out << row({n(cp.location.real()), n(cp.location.imag()), n(cp.level), n(cp.gradientResidual), n(cp.order)});
    return 0;
  }

  int operator()(const KernelCommand& c) const {
    const Domain d = parse_domain(c.domain);
    const Point w = parse_point(c.pole);
    const KernelResult k = c.at.empty() ? kernel_j(d, w, c.order) : kernel_j_constrained(d, w, parse_point(c.at), c.order);
    out << row({n(k.j), n(k.value), n(k.truncationOrder), n(k.tailBound)});
    return 0;
  }

  int operator()(const SublevelCommand& c) const {
    const Domain d = parse_domain(c.domain);
    const Point w = parse_point(c.pole);
    std::vector<double> svgLevels = c.levels;
    if (c.tmin) {
      const SublevelProfile p = profile_scan(d, w, *c.tmin, *c.tmax, c.steps, c.grid, false);
      out << row({"t", "lambda", "log_lambda", "gamma_prime", "second_diff", "e2t_lambda", "err_est"});
      for (std::size_t i = 0; i < p.t.size(); ++i)
        out << row({n(p.t[i]), n(p.lambda[i]), n(p.logLambda[i]), n(p.gammaPrime[i]), n(p.secondDiff[i]),
                    n(p.e2tLambda[i]), n(p.errEst[i])});
      if (svgLevels.empty()) svgLevels = p.t;
    } else {
      const SublevelGrid grid(d, w, c.grid);
      out << row({"t", "lambda", "gamma_prime", "err_est"});
      for (double t : c.levels) {
        if (!(t < 0.0)) throw Error(ErrorKind::LevelAbovePeak, "levels need t < 0");
        const SublevelArea a = grid.area(t);
        double gp = std::numeric_limits<double>::quiet_NaN();
        try {
          gp = grid.coarea(t);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::CriticalLevel) throw;
        }
        out << row({n(t), n(a.area), n(gp), n(a.errorEstimate)});
      }
    }
    if (!c.svg.empty()) emit_contours(d, w, svgLevels, c.svg, c.grid);
    return 0;
  }

  int operator()(const WeightsCommand& c) const {
    if (c.probeRequested) {
      const std::vector<double> s = c.probe.empty() ? std::vector<double>{-1, -5, -10, -20, -40} : c.probe;
      const auto war = war_probe(s);
      out << row({"s", "war"});
      for (std::size_t i = 0; i < s.size(); ++i) out << row({n(s[i]), n(war[i])});
    }
    if (!c.s.empty()) {
      out << row({"s", "eta0", "eta0p", "eta0pp", "gamma0", "gamma0p", "identity_residual"});
      for (double s : c.s) {
        const WeightValues v = eval_weights(s);
        out << row({n(s), n(v.eta0), n(v.eta0p), n(v.eta0pp), n(v.gamma0), n(v.gamma0p), n(identity_residual(s))});
      }
    }
    return 0;
  }

  int operator()(const OracleCommand& c) const {
    const Domain d = parse_domain(c.domain);
    const Point w = parse_point(c.pole);
    if (c.method == "wos" || c.method == "area") {
      const McEstimate e = c.method == "wos" ? wos_green(d, w, parse_point(c.at), c.samples, c.seed)
                                             : mc_area(d, w, c.t, c.samples, c.seed);
      out << row({"mean", "std_error", "samples", "seed"});
      out << row({n(e.mean), n(e.stdError), n(e.samples), n(e.seed)});
    } else if (c.method == "robin") {
      const double delta = boundary_distance(d, w).delta;
      out << row({"capacity"});
      out << row({n(robin_extrapolate(d, w, {0.4 * delta, 0.2 * delta, 0.1 * delta, 0.05 * delta}))});
    } else {
      out << row({"x", "y"});
      for (Point p : grid_min_gradient(d, w, c.gridSize)) out << row({n(p.real()), n(p.imag())});
    }
    return 0;
  }

  int operator()(const VerifyCommand& c) const {
    Config cfg = c.config.empty() ? Config{} : load_config(c.config);
    if (!c.suite.empty()) cfg.suite = c.suite;
    if (!c.out.empty()) cfg.outCsv = c.out;
    if (!c.json.empty()) cfg.outJson = c.json;
    if (cfg.seeds.empty()) cfg.seeds.push_back(default_seed());
    const VerificationReport report = run_suite(cfg);
    if (!cfg.outCsv.empty()) emit_report(report, cfg.outCsv, ReportFormat::Csv);
    if (!cfg.outJson.empty()) emit_report(report, cfg.outJson, ReportFormat::Json);
    if (cfg.outCsv.empty() && cfg.outJson.empty()) write_report_csv(report, out);
    err << "checks " << report.checks.size() << ", failures " << report.failures() << ", skipped "
        << report.skipped() << ", wall time " << format_number(report.metadata.wallTimeSeconds) << " s\n";
    return report.all_passed() ? 0 : 1;
  }
};

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SUITA_LAB_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*env != '\0' && *end == '\0') return v;
  }
  return 1;
}

ParseOutcome parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Potential-theory and Bergman-kernel verification lab", "suita-lab"};
  app.require_subcommand(1);
  ParseOutcome outcome;

  GreenCommand green;
  auto* g = app.add_subcommand("green", "Green function value and gradient");
  g->add_option("--domain", green.domain, "domain literal")->required()->check(domain_validator());
  g->add_option("--pole", green.pole, "pole w as x,y")->required()->check(point_validator());
  g->add_option("--at", green.at, "evaluation point z as x,y")->required()->check(point_validator());

  CapacityCommand cap;
  auto* c = app.add_subcommand("capacity", "logarithmic capacity at the pole");
  c->add_option("--domain", cap.domain)->required()->check(domain_validator());
  c->add_option("--pole", cap.pole)->required()->check(point_validator());

  CriticalCommand crit;
  auto* cr = app.add_subcommand("critical", "interior critical points of G(., w)");
  cr->add_option("--domain", crit.domain)->required()->check(domain_validator());
  cr->add_option("--pole", crit.pole)->required()->check(point_validator());

  KernelCommand kern;
  auto* k = app.add_subcommand("kernel", "higher-order Bergman kernel K^(j)");
  k->add_option("--domain", kern.domain)->required()->check(domain_validator());
  k->add_option("--pole", kern.pole)->required()->check(point_validator());
  k->add_option("--order", kern.order, "derivative order j")->check(CLI::Range(0, kMaxDerivativeOrder));
  k->add_option("--at", kern.at, "evaluate the constrained kernel at this point")->check(point_validator());

  SublevelCommand sub;
  auto* s = app.add_subcommand("sublevel", "sublevel areas, co-area derivative, profiles and contours");
  s->add_option("--domain", sub.domain)->required()->check(domain_validator());
  s->add_option("--pole", sub.pole)->required()->check(point_validator());
  s->add_option("--tmin", sub.tmin, "lower end of the profile scan");
  s->add_option("--tmax", sub.tmax, "upper end of the profile scan");
  s->add_option("--steps", sub.steps, "profile samples")->check(CLI::Range(8, 100000));
  s->add_option("--levels", sub.levels, "explicit levels t < 0, comma separated")->delimiter(',');
  s->add_option("--grid", sub.grid, "grid resolution")->check(CLI::Range(8, 8192));
  s->add_option("--svg", sub.svg, "write the level curves as SVG");

  WeightsCommand wts;
  auto* wc = app.add_subcommand("weights", "one-variable weights and identity residuals");
  wc->add_option("--s", wts.s, "sample points s < 0, comma separated")->delimiter(',');
  std::string probeText;
  auto* probe = wc->add_option("--probe", probeText, "war probe at s1,s2,... (default -1,-5,-10,-20,-40)")
                    ->expected(0, 1);

  OracleCommand orc;
  orc.seed = default_seed();
  auto* o = app.add_subcommand("oracle", "independent Monte Carlo and extrapolation oracles");
  o->add_option("method", orc.method, "wos | area | robin | gridscan")
      ->required()
      ->check(CLI::IsMember({"wos", "area", "robin", "gridscan"}));
  o->add_option("--domain", orc.domain)->required()->check(domain_validator());
  o->add_option("--pole", orc.pole)->required()->check(point_validator());
  o->add_option("--at", orc.at, "evaluation point for wos")->check(point_validator());
  o->add_option("--t", orc.t, "level for area");
  o->add_option("--samples", orc.samples, "walks or samples")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  o->add_option("--seed", orc.seed, "seed (default SUITA_LAB_SEED or 1)");
  o->add_option("--grid", orc.gridSize, "gridscan resolution")->check(CLI::Range(16, 8192));

  VerifyCommand ver;
  ver.suite.clear();
  auto* v = app.add_subcommand("verify", "run the verification checks and write a report");
  v->add_option("--suite", ver.suite)->check(CLI::IsMember(suite_names()));
  v->add_option("--config", ver.config, "key=value configuration file");
  v->add_option("--out", ver.out, "CSV report path");
  v->add_option("--json", ver.json, "JSON report path");

  std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rev.begin(), rev.end());  // CLI11 consumes from the back
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    outcome.message = parsed.empty() ? app.help() : parsed.back()->help();
    return outcome;
  } catch (const CLI::CallForAllHelp&) {
    outcome.message = app.help("", CLI::AppFormatMode::All);
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exitCode = 2;
    outcome.message = std::string(e.what()) + "\nRun with --help for usage.";
    return outcome;
  }

  if (g->parsed()) outcome.command = green;
  else if (c->parsed()) outcome.command = cap;
  else if (cr->parsed()) outcome.command = crit;
  else if (k->parsed()) outcome.command = kern;
  else if (s->parsed()) {
    const bool scan = sub.tmin || sub.tmax || sub.steps;
    if (scan && !(sub.tmin && sub.tmax && sub.steps)) {
      outcome.exitCode = 2;
      outcome.message = "a profile scan needs --tmin, --tmax and --steps";
      return outcome;
    }
    if (!scan && sub.levels.empty()) {
      outcome.exitCode = 2;
      outcome.message = "sublevel needs --tmin/--tmax/--steps or --levels";
      return outcome;
    }
    outcome.command = sub;
  } else if (wc->parsed()) {
    wts.probeRequested = probe->count() > 0;
    try {
      for (const auto& part : CLI::detail::split(probeText, ','))
        if (!part.empty()) wts.probe.push_back(std::stod(part));
    } catch (const std::exception&) {
      outcome.exitCode = 2;
      outcome.message = "--probe expects comma separated numbers";
      return outcome;
    }
    if (!wts.probeRequested && wts.s.empty()) {
      outcome.exitCode = 2;
      outcome.message = "weights needs --s or --probe";
      return outcome;
    }
    outcome.command = wts;
  } else if (o->parsed()) {
    if (orc.method == "wos" && orc.at.empty()) {
      outcome.exitCode = 2;
      outcome.message = "oracle wos needs --at";
      return outcome;
    }
    outcome.command = orc;
  } else if (v->parsed()) {
    outcome.command = ver;
  }
  return outcome;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const ParseOutcome parsed = parse_args(args);
  if (!parsed.command) {
    (parsed.exitCode == 0 ? out : err) << parsed.message << (parsed.message.empty() || parsed.message.back() == '\n' ? "" : "\n");
    return parsed.exitCode;
  }
  try {
    return std::visit(Runner{out, err}, *parsed.command);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace suita
