#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "suita/geometry.hpp"
#include "suita/verify.hpp"

namespace suita {

// ---- configuration and report persistence ----

/// key=value lines, '#' starts a comment. A domain= line opens a sample and
/// the pole= lines after it attach to that sample.
Config parse_config(std::istream& in);
Config load_config(const std::string& path);

enum class ReportFormat { Csv, Json };

void write_report_csv(const VerificationReport& report, std::ostream& out);
void write_report_json(const VerificationReport& report, std::ostream& out);
void emit_report(const VerificationReport& report, const std::string& path, ReportFormat format);

/// Inverse of write_report_csv; values carry the 12 printed digits.
std::vector<Check> parse_report_csv(std::istream& in);

std::string status_label(CheckStatus status);
/// %.12g, the precision used in every persisted number.
std::string format_number(double v);

void write_contours_svg(const Domain& domain, Point w, const std::vector<double>& tList, std::ostream& out,
                        int resolution = 512);
void emit_contours(const Domain& domain, Point w, const std::vector<double>& tList, const std::string& path,
                   int resolution = 512);

// ---- command line ----

struct GreenCommand {
  std::string domain, pole, at;
};
struct CapacityCommand {
  std::string domain, pole;
};
struct CriticalCommand {
  std::string domain, pole;
};
struct KernelCommand {
  std::string domain, pole;
  int order = 0;
  std::string at;  // empty: diagonal value at the pole
};
struct SublevelCommand {
  std::string domain, pole;
  std::optional<double> tmin, tmax;
  int steps = 0;
  std::vector<double> levels;  // explicit levels instead of a scan
  int grid = kDefaultGrid;
  std::string svg;
};
struct WeightsCommand {
  std::vector<double> s;
  std::vector<double> probe;
  bool probeRequested = false;
};
struct OracleCommand {
  std::string method;  // wos | area | robin | gridscan
  std::string domain, pole, at;
  double t = -0.5;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int gridSize = 512;
};
struct VerifyCommand {
  std::string suite = "all";
  std::string config;
  std::string out;
  std::string json;
};

using Command = std::variant<GreenCommand, CapacityCommand, CriticalCommand, KernelCommand, SublevelCommand,
                             WeightsCommand, OracleCommand, VerifyCommand>;

struct ParseOutcome {
  std::optional<Command> command;  // empty when help was printed or parsing failed
  int exitCode = 0;
  std::string message;  // help text or error
};

/// args[0] is the program name.
ParseOutcome parse_args(const std::vector<std::string>& args);

/// Full front end: parse, run, print. Returns 0 = success or all checks
/// passed, 1 = at least one failed check or numerical failure, 2 = usage,
/// configuration or IO error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// SUITA_LAB_SEED if set and valid, else 1.
std::uint64_t default_seed();

}  // namespace suita
