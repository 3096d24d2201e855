#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "suita/cli.hpp"
#include "suita/error.hpp"
#include "support.hpp"

using namespace suita;
using namespace testing_support;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "suita-lab");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("suita_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("parse_args builds commands") {
  ParseOutcome p = parse_args({"suita-lab", "green", "--domain", "disc:0,0,1", "--pole", "0.1,0", "--at", "0.5,0"});
  REQUIRE(p.command);
  const auto* g = std::get_if<GreenCommand>(&*p.command);
  REQUIRE(g);
  CHECK(g->at == "0.5,0");

  p = parse_args({"suita-lab", "kernel", "--domain", "annulus:0.5", "--pole", "0.7,0", "--order", "3"});
  REQUIRE(p.command);
  CHECK(std::get<KernelCommand>(*p.command).order == 3);

  p = parse_args({"suita-lab", "weights", "--s", "-1,-2", "--probe"});
  REQUIRE(p.command);
  const auto& w = std::get<WeightsCommand>(*p.command);
  CHECK(w.s.size() == 2);
  CHECK(w.probeRequested);

  p = parse_args({"suita-lab", "oracle", "wos", "--domain", "disc:0,0,1", "--pole", "0,0", "--at", "0.5,0", "--samples",
                  "500"});
  REQUIRE(p.command);
  CHECK(std::get<OracleCommand>(*p.command).samples == 500);

  p = parse_args({"suita-lab", "--help"});
  CHECK_FALSE(p.command);
  CHECK(p.exitCode == 0);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"kernel", "--domain", "disc:0,0,1", "--pole", "0,0", "--order", "-1"}).code == 2);
  CHECK(run({"green", "--domain", "disc:0,0,1", "--pole", "2,0", "--at", "0.5,0"}).code == 2);
  CHECK(run({"green", "--domain", "disc:0,0,-1", "--pole", "0,0", "--at", "0.5,0"}).code == 2);
  CHECK(run({"sublevel", "--domain", "disc:0,0,1", "--pole", "0,0", "--levels", "0.5"}).code == 2);
  CHECK(run({"weights", "--s", "0.5"}).code == 2);
  CHECK(run({"verify", "--suite", "thm1", "--out", "/nonexistent_dir/x.csv"}).code == 2);
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
}

TEST_CASE("command outputs") {
  Run r = run({"green", "--domain", "disc:0,0,1", "--pole", "0,0", "--at", "0.5,0"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out.substr(0, r.out.find(','))) == doctest::Approx(std::log(0.5)).epsilon(1e-11));

  r = run({"capacity", "--domain", "disc:0,0,2", "--pole", "0,0"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("0.5,", 0) == 0);

  r = run({"kernel", "--domain", "disc:0,0,1", "--pole", "0,0", "--order", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("2,3.81971863421,", 0) == 0);

  r = run({"critical", "--domain", "annulus:0.5", "--pole", "0.7,0"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("x,y,level,gradient_residual,order\n", 0) == 0);

  r = run({"sublevel", "--domain", "disc:0,0,1", "--pole", "0,0", "--tmin", "-2", "--tmax", "-0.5", "--steps", "8",
           "--grid", "64"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("t,lambda,log_lambda,gamma_prime,second_diff,e2t_lambda,err_est\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 9);

  r = run({"oracle", "area", "--domain", "disc:0,0,1", "--pole", "0,0", "--t", "-1", "--samples", "1000", "--seed",
           "4"});
  CHECK(r.code == 0);
  CHECK(r.out == run({"oracle", "area", "--domain", "disc:0,0,1", "--pole", "0,0", "--t", "-1", "--samples", "1000",
                      "--seed", "4"})
                     .out);
}

TEST_CASE("verify writes CSV and JSON that round-trip") {
  const std::string csv = temp_path("report.csv"), js = temp_path("report.json"), cfg = temp_path("cfg.txt");
  {
    std::ofstream c(cfg);
    c << "# small plan\nsuite=thm1\ndomain=annulus:0.5\npole=0.7,0\ndomain=disc:0,0,1\npole=0.3,0\nseed=5\n";
  }
  Run r = run({"verify", "--config", cfg, "--out", csv, "--json", js});
  CHECK(r.code == 0);
  std::ifstream in(csv);
  const auto checks = parse_report_csv(in);
  CHECK(checks.size() == 10);
  for (const auto& c : checks) CHECK(c.status == CheckStatus::Pass);

  const auto doc = nlohmann::json::parse(slurp(js));
  CHECK(doc["summary"]["checks"] == 10);
  CHECK(doc["summary"]["failures"] == 0);
  CHECK(doc["metadata"]["seeds"][0] == 5);
  CHECK(doc["checks"].size() == 10);

  const std::string first = slurp(csv), firstJson = slurp(js);
  CHECK(run({"verify", "--config", cfg, "--out", csv, "--json", js}).code == 0);
  CHECK(slurp(csv) == first);
  CHECK(slurp(js) == firstJson);

  {
    std::ofstream c(cfg);
    c << "suite=thm1\nfrobnicate=3\n";
  }
  r = run({"verify", "--config", cfg});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  std::remove(csv.c_str());
  std::remove(js.c_str());
  std::remove(cfg.c_str());
}

TEST_CASE("config parsing") {
  std::istringstream in("tolerance=1e-3\ntolerance.blb=0.5\ngrid=64\ndomain=disc:0,0,1\npole=0,0\npole=0.2,0\n");
  const Config c = parse_config(in);
  CHECK(c.grid == 64);
  REQUIRE(c.samples.size() == 1);
  CHECK(c.samples[0].poles.size() == 2);
  CHECK(c.toleranceOverrides.at("*") == 1e-3);
  CHECK(c.toleranceOverrides.at("blb") == 0.5);
  std::istringstream orphan("domain=disc:0,0,1\n");
  CHECK_THROWS_AS(parse_config(orphan), Error);
  std::istringstream early("pole=0,0\n");
  CHECK_THROWS_AS(parse_config(early), Error);
}

TEST_CASE("report CSV quoting") {
  VerificationReport rep;
  Check c;
  c.name = "x";
  c.context = {"polygon:0,0;1,0;1,1", "0.5,0.2", "a=\"q\""};
  c.lhs = 1.0 / 3.0;
  c.rhs = -0.0;
  c.status = CheckStatus::Skipped;
  rep.checks.push_back(c);
  std::stringstream s;
  write_report_csv(rep, s);
  const auto back = parse_report_csv(s);
  REQUIRE(back.size() == 1);
  CHECK(back[0].context.domain == c.context.domain);
  CHECK(back[0].context.params == c.context.params);
  CHECK(back[0].lhs == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(back[0].status == CheckStatus::Skipped);
  CHECK(format_number(-0.0) == "0");
}

TEST_CASE("contour SVG") {
  std::ostringstream s;
  write_contours_svg(Domain(Disc{}), 0.0, {-1.0, -0.5}, s, 128);
  const std::string svg = s.str();
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(std::count(svg.begin(), svg.end(), '\n') > 2);
  // every level group holds points on the circle of radius e^t
  const std::regex group("data-t=\"([-0-9.e]+)\"[^>]*>([^]*?)</g>");
  const std::regex pair("(-?[0-9.e+-]+),(-?[0-9.e+-]+)");
  int groups = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), group); it != std::sregex_iterator(); ++it) {
    ++groups;
    const double t = std::stod((*it)[1]);
    const std::string body = (*it)[2];
    int pts = 0;
    for (auto p = std::sregex_iterator(body.begin(), body.end(), pair); p != std::sregex_iterator(); ++p, ++pts)
      CHECK(std::abs(std::hypot(std::stod((*p)[1]), std::stod((*p)[2])) - std::exp(t)) <= 1e-5);
    CHECK(pts > 10);
  }
  CHECK(groups == 2);

  std::ostringstream empty;
  write_contours_svg(Domain(Disc{}), 0.0, {}, empty, 64);
  CHECK(empty.str().find("class=\"level\"") == std::string::npos);
  CHECK(empty.str().find("<circle") != std::string::npos);
  CHECK_THROWS_AS(emit_contours(Domain(Disc{}), 0.0, {-1.0}, "/nonexistent_dir/c.svg", 64), Error);
  CHECK_THROWS_AS(write_contours_svg(Domain(Disc{}), 0.0, {0.2}, empty, 64), Error);
}
