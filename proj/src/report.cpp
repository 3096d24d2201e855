#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "suita/cli.hpp"
#include "suita/error.hpp"
#include "suita/sublevel.hpp"

namespace suita {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& v, int line) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0') throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad number '" + v + "'");
  return d;
}

std::uint64_t to_u64(const std::string& v, int line) {
  char* end = nullptr;
  const unsigned long long u = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || v.front() == '-')
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad integer '" + v + "'");
  return u;
}

int to_int(const std::string& v, int line) {
  const std::uint64_t u = to_u64(v, line);
  if (u > 1000000) throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": integer out of range");
  return static_cast<int>(u);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw Error(ErrorKind::ParseError, "unterminated quote in report line");
  return fields;
}

constexpr const char* kCsvHeader = "check_name,domain,pole,params,lhs,rhs,margin,pass";

// JSON cannot hold NaN or infinities; they become null or strings.
nlohmann::ordered_json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return std::strtod(format_number(v).c_str(), nullptr);
}

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string status_label(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "true";
    case CheckStatus::Fail: return "false";
    case CheckStatus::Skipped: return "skipped";
  }
  return "false";
}

Config parse_config(std::istream& in) {
  Config cfg;
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "line " + std::to_string(lineNo) + ": expected key=value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto where = "line " + std::to_string(lineNo) + ": ";

    if (key == "domain") {
      try {
        cfg.samples.push_back({parse_domain(value), {}});
      } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, where + e.what());
      }
    } else if (key == "pole") {
      if (cfg.samples.empty()) throw Error(ErrorKind::ParseError, where + "pole before any domain");
      try {
        cfg.samples.back().poles.push_back(parse_point(value));
      } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, where + e.what());
      }
    } else if (key == "tolerance") {
      cfg.toleranceOverrides["*"] = to_double(value, lineNo);
    } else if (key.rfind("tolerance.", 0) == 0 && key.size() > 10) {
      cfg.toleranceOverrides[key.substr(10)] = to_double(value, lineNo);
    } else if (key == "seed") {
      cfg.seeds.push_back(to_u64(value, lineNo));
    } else if (key == "grid") {
      cfg.grid = to_int(value, lineNo);
    } else if (key == "thm4_grid") {
      cfg.thm4Grid = to_int(value, lineNo);
    } else if (key == "profile_steps") {
      cfg.profileSteps = to_int(value, lineNo);
    } else if (key == "profile_tmin") {
      cfg.profileTMin = to_double(value, lineNo);
    } else if (key == "profile_tmax") {
      cfg.profileTMax = to_double(value, lineNo);
    } else if (key == "jmax") {
      cfg.jMax = to_int(value, lineNo);
    } else if (key == "walks") {
      cfg.walks = to_u64(value, lineNo);
    } else if (key == "suite") {
      cfg.suite = value;
    } else if (key == "out") {
      cfg.outCsv = value;
    } else if (key == "json") {
      cfg.outJson = value;
    } else {
      throw Error(ErrorKind::ParseError, where + "unknown key '" + key + "'");
    }
  }
  for (const auto& s : cfg.samples)
    if (s.poles.empty()) throw Error(ErrorKind::ParseError, "domain " + format_domain(s.domain) + " has no pole");
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read config " + path);
  return parse_config(in);
}

void write_report_csv(const VerificationReport& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& c : report.checks) {
    out << csv_field(c.name) << ',' << csv_field(c.context.domain) << ',' << csv_field(c.context.pole) << ','
        << csv_field(c.context.params) << ',' << format_number(c.lhs) << ',' << format_number(c.rhs) << ','
        << format_number(c.margin) << ',' << status_label(c.status) << '\n';
  }
}

void write_report_json(const VerificationReport& report, std::ostream& out) {
  using json = nlohmann::ordered_json;
  const auto& m = report.metadata;
  json meta;
  meta["domains"] = m.domains;
  meta["poles"] = m.poles;
  meta["seeds"] = m.seeds;
  meta["grid_sizes"] = m.gridSizes;
  meta["truncation_orders"] = m.truncationOrders;
  meta["tolerance_version"] = m.toleranceVersion;
  json tol = json::object();
  for (const auto& [k, v] : m.tolerances) tol[k.empty() ? "default" : k] = json_number(v);
  meta["tolerances"] = tol;
  meta["thm2_empirical_max"] = json_number(m.thm2EmpiricalMax);

  json checks = json::array();
  for (const auto& c : report.checks) {
    json j;
    j["check_name"] = c.name;
    j["domain"] = c.context.domain;
    j["pole"] = c.context.pole;
    j["params"] = c.context.params;
    j["lhs"] = json_number(c.lhs);
    j["rhs"] = json_number(c.rhs);
    j["margin"] = json_number(c.margin);
    j["pass"] = status_label(c.status);
    checks.push_back(std::move(j));
  }
  json doc;
  doc["metadata"] = std::move(meta);
  doc["summary"] = {{"checks", report.checks.size()}, {"failures", report.failures()}, {"skipped", report.skipped()}};
  doc["checks"] = std::move(checks);
  out << doc.dump(2) << '\n';
}

void emit_report(const VerificationReport& report, const std::string& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  if (format == ReportFormat::Csv)
    write_report_csv(report, out);
  else
    write_report_json(report, out);
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

std::vector<Check> parse_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error(ErrorKind::ParseError, "missing report header");
  std::vector<Check> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv_split(line);
    if (f.size() != 8) throw Error(ErrorKind::ParseError, "report row needs 8 fields");
    Check c;
    c.name = f[0];
    c.context = {f[1], f[2], f[3]};
    c.lhs = std::strtod(f[4].c_str(), nullptr);
    c.rhs = std::strtod(f[5].c_str(), nullptr);
    c.margin = std::strtod(f[6].c_str(), nullptr);
    if (f[7] == "true")
      c.status = CheckStatus::Pass;
    else if (f[7] == "false")
      c.status = CheckStatus::Fail;
    else if (f[7] == "skipped")
      c.status = CheckStatus::Skipped;
    else
      throw Error(ErrorKind::ParseError, "bad pass value '" + f[7] + "'");
    out.push_back(std::move(c));
  }
  return out;
}

void write_contours_svg(const Domain& domain, Point w, const std::vector<double>& tList, std::ostream& out,
                        int resolution) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  const Box box = bounding_box(domain);
  const double pad = 0.05 * std::max(box.width(), box.height());
  const double x0 = box.xmin - pad, y0 = box.ymin - pad;
  const double vw = box.width() + 2 * pad, vh = box.height() + 2 * pad;
  const double stroke = 0.003 * std::max(vw, vh);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"" << svg_num(600.0 * vh / vw)
      << "\" viewBox=\"" << svg_num(x0) << ' ' << svg_num(-(y0 + vh)) << ' ' << svg_num(vw) << ' ' << svg_num(vh)
      << "\">\n";
  // flip y so the picture has the usual orientation
  out << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" << svg_num(stroke) << "\">\n";
  out << "<g stroke=\"black\" class=\"outline\">\n";
  if (const auto* poly = domain.get_if<Polygon>()) {
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < poly->vertices.size(); ++i)
      out << (i ? " " : "") << svg_num(poly->vertices[i].real()) << ',' << svg_num(poly->vertices[i].imag());
    out << "\"/>\n";
  } else {
    for (const auto& c : boundary_circles(domain))
      out << "<circle cx=\"" << svg_num(c.center.real()) << "\" cy=\"" << svg_num(c.center.imag()) << "\" r=\""
          << svg_num(c.radius) << "\"/>\n";
  }
  out << "</g>\n";
  if (!tList.empty()) {
    const SublevelGrid grid(domain, w, resolution);
    for (std::size_t k = 0; k < tList.size(); ++k) {
      if (!(tList[k] < 0.0)) throw Error(ErrorKind::LevelAbovePeak, "contour levels need t < 0");
      out << "<g stroke=\"" << kColors[k % 6] << "\" class=\"level\" data-t=\"" << format_number(tList[k]) << "\">\n";
      for (const auto& line : grid.level_curves(tList[k])) {
        out << "<polyline points=\"";
        for (std::size_t i = 0; i < line.size(); ++i)
          out << (i ? " " : "") << svg_num(line[i].real()) << ',' << svg_num(line[i].imag());
        out << "\"/>\n";
      }
      out << "</g>\n";
    }
  }
  out << "<circle cx=\"" << svg_num(w.real()) << "\" cy=\"" << svg_num(w.imag()) << "\" r=\"" << svg_num(2 * stroke)
      << "\" fill=\"black\" class=\"pole\"/>\n";
  out << "</g>\n</svg>\n";
}

void emit_contours(const Domain& domain, Point w, const std::vector<double>& tList, const std::string& path,
                   int resolution) {
  std::ostringstream buf;
  write_contours_svg(domain, w, tList, buf, resolution);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << buf.str();
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

}  // namespace suita
