#include "suita/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "suita/error.hpp"

namespace suita {

namespace {

constexpr double kPi = std::numbers::pi;

bool finite(Point p) { return std::isfinite(p.real()) && std::isfinite(p.imag()); }

double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

double segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = std::norm(ab);
  double s = len2 > 0.0 ? std::real((p - a) * std::conj(ab)) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

Point segment_nearest(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = std::norm(ab);
  double s = len2 > 0.0 ? std::real((p - a) * std::conj(ab)) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return a + s * ab;
}

bool segments_intersect(Point p1, Point p2, Point p3, Point p4) {
  const double d1 = cross(p4 - p3, p1 - p3);
  const double d2 = cross(p4 - p3, p2 - p3);
  const double d3 = cross(p2 - p1, p3 - p1);
  const double d4 = cross(p2 - p1, p4 - p1);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double signed_area(const std::vector<Point>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * s;
}

void validate(const Polygon& poly) {
  const auto& v = poly.vertices;
  if (v.size() < 3) throw Error(ErrorKind::InvalidDomain, "polygon needs at least 3 vertices");
  for (Point p : v)
    if (!finite(p)) throw Error(ErrorKind::InvalidDomain, "polygon vertex is not finite");
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == v[(i + 1) % n]) throw Error(ErrorKind::InvalidDomain, "repeated polygon vertex");
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        throw Error(ErrorKind::InvalidDomain, "polygon is self-intersecting");
    }
  }
  if (signed_area(v) <= 0.0) throw Error(ErrorKind::InvalidDomain, "polygon must be positively oriented");
}

bool polygon_contains(const Polygon& poly, Point z) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i)
    if (segment_distance(z, v[i], v[(i + 1) % n]) == 0.0) return false;
  int winding = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[i], b = v[(i + 1) % n];
    if (a.imag() <= z.imag()) {
      if (b.imag() > z.imag() && cross(b - a, z - a) > 0) ++winding;
    } else if (b.imag() <= z.imag() && cross(b - a, z - a) < 0) {
      --winding;
    }
  }
  return winding != 0;
}

// Base boundary circles together with whether the domain lies inside each.
struct BaseCircle {
  Circle circle;
  bool domainInside;
};

std::vector<BaseCircle> base_circles(const Domain& base) {
  if (const auto* d = base.get_if<Disc>()) return {{{d->center, d->radius}, true}};
  if (const auto* a = base.get_if<Annulus>()) return {{{0.0, 1.0}, true}, {{0.0, a->q}, false}};
  throw Error(ErrorKind::UnsupportedDomain, "no circular boundary");
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_complex(Point p) {
  if (p.imag() == 0.0) return fmt(p.real());
  std::string im = fmt(p.imag());
  if (im[0] != '-') im = "+" + im;
  return fmt(p.real()) + im + "i";
}

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::ParseError, "not a number: '" + std::string(s) + "'");
  return x;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InvalidDomain: return "InvalidDomain";
    case ErrorKind::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorKind::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorKind::MapSingular: return "MapSingular";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::TruncationFailure: return "TruncationFailure";
    case ErrorKind::StencilOutsideDomain: return "StencilOutsideDomain";
    case ErrorKind::LevelAbovePeak: return "LevelAbovePeak";
    case ErrorKind::CriticalLevel: return "CriticalLevel";
    case ErrorKind::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ExtrapolationUnstable: return "ExtrapolationUnstable";
    case ErrorKind::NoCriticalPoint: return "NoCriticalPoint";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

// ---------------------------------------------------------------------------
// Domain construction

Domain::Domain(Disc disc) : v_(disc) {
  if (!finite(disc.center) || !(disc.radius > 0.0) || !std::isfinite(disc.radius))
    throw Error(ErrorKind::InvalidDomain, "disc radius must be positive and finite");
}

Domain::Domain(Annulus annulus) : v_(annulus) {
  if (!(annulus.q > 0.0 && annulus.q < 1.0))
    throw Error(ErrorKind::InvalidDomain, "annulus inner radius must lie in (0,1)");
}

Domain::Domain(Polygon polygon) : v_(std::move(polygon)) { validate(std::get<Polygon>(v_)); }

Domain::Domain(PolarComplement p) : v_(p) {}

Domain::Domain(MoebiusImage image) {
  if (!image.base) throw Error(ErrorKind::InvalidDomain, "moebius image without base");
  if (const auto* inner = image.base->get_if<MoebiusImage>()) {
    // (outer o inner) as a 2x2 coefficient product
    MoebiusImage composed;
    composed.base = inner->base;
    composed.a = image.a * inner->a + image.b * inner->c;
    composed.b = image.a * inner->b + image.b * inner->d;
    composed.c = image.c * inner->a + image.d * inner->c;
    composed.d = image.c * inner->b + image.d * inner->d;
    image = composed;
  }
  const Domain& base = *image.base;
  if (base.is<Polygon>() || base.is<PolarComplement>())
    throw Error(ErrorKind::InvalidDomain, "moebius base must be a disc or an annulus");
  for (Point p : {image.a, image.b, image.c, image.d})
    if (!finite(p)) throw Error(ErrorKind::InvalidDomain, "moebius coefficient is not finite");
  const Point det = image.a * image.d - image.b * image.c;
  const double scale = std::max({std::abs(image.a), std::abs(image.b), std::abs(image.c), std::abs(image.d)});
  if (std::abs(det) <= 1e-14 * scale * scale)
    throw Error(ErrorKind::InvalidDomain, "moebius determinant vanishes");
  if (image.c != 0.0) {
    const Point pole = -image.d / image.c;
    const double tol = 1e-12 * (1.0 + std::abs(pole));
    if (contains(base, pole) || distance_to_boundary(base, pole) <= tol)
      throw Error(ErrorKind::InvalidDomain, "moebius pole lies in the closure of the base domain");
  }
  v_ = std::move(image);
}

const Domain& Domain::base() const {
  if (const auto* m = get_if<MoebiusImage>()) return *m->base;
  return *this;
}

bool Domain::is_simply_connected() const {
  const Domain& b = base();
  return b.is<Disc>() || b.is<Polygon>();
}

bool Domain::has_green_function() const {
  const Domain& b = base();
  return b.is<Disc>() || b.is<Annulus>();
}

Domain make_moebius(const Domain& base, Point a, Point b, Point c, Point d) {
  return Domain(MoebiusImage{std::make_shared<const Domain>(base), a, b, c, d});
}

// ---------------------------------------------------------------------------
// Literals

Point parse_complex(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty complex literal");
  if (text.back() != 'i') return {parse_double(text), 0.0};
  text.remove_suffix(1);
  std::size_t split_at = std::string_view::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  auto imag_of = [](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (split_at == std::string_view::npos) return {0.0, imag_of(text)};
  return {parse_double(text.substr(0, split_at)), imag_of(text.substr(split_at))};
}

Point parse_point(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw Error(ErrorKind::ParseError, "point must be 'x,y': " + std::string(text));
  return {parse_double(parts[0]), parse_double(parts[1])};
}

std::string format_point(Point p) { return fmt(p.real()) + "," + fmt(p.imag()); }

Domain parse_domain(std::string_view literal) {
  const auto colon = literal.find(':');
  const std::string_view kind = literal.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : literal.substr(colon + 1);
  try {
    if (kind == "polar-complement" && colon == std::string_view::npos) return Domain(PolarComplement{});
    if (kind == "disc") {
      const auto p = split(body, ',');
      if (p.size() != 3) throw Error(ErrorKind::ParseError, "disc literal is disc:cx,cy,r");
      return Domain(Disc{{parse_double(p[0]), parse_double(p[1])}, parse_double(p[2])});
    }
    if (kind == "annulus") return Domain(Annulus{parse_double(body)});
    if (kind == "polygon") {
      Polygon poly;
      for (auto v : split(body, ';')) poly.vertices.push_back(parse_point(v));
      return Domain(std::move(poly));
    }
    if (kind == "moebius") {
      const auto semi = body.find(';');
      if (semi == std::string_view::npos || body.substr(semi + 1, 5) != "base=")
        throw Error(ErrorKind::ParseError, "moebius literal is moebius:a,b,c,d;base=<literal>");
      const auto coef = split(body.substr(0, semi), ',');
      if (coef.size() != 4) throw Error(ErrorKind::ParseError, "moebius needs four coefficients");
      const Domain base = parse_domain(body.substr(semi + 6));
      return make_moebius(base, parse_complex(coef[0]), parse_complex(coef[1]), parse_complex(coef[2]),
                          parse_complex(coef[3]));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidDomain) throw;
    throw Error(ErrorKind::ParseError, std::string(e.what()) + " in '" + std::string(literal) + "'");
  }
  throw Error(ErrorKind::ParseError, "unknown domain literal '" + std::string(literal) + "'");
}

std::string format_domain(const Domain& domain) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Disc>) {
          return "disc:" + fmt(d.center.real()) + "," + fmt(d.center.imag()) + "," + fmt(d.radius);
        } else if constexpr (std::is_same_v<T, Annulus>) {
          return "annulus:" + fmt(d.q);
        } else if constexpr (std::is_same_v<T, Polygon>) {
          std::string s = "polygon:";
          for (std::size_t i = 0; i < d.vertices.size(); ++i) s += (i ? ";" : "") + format_point(d.vertices[i]);
          return s;
        } else if constexpr (std::is_same_v<T, PolarComplement>) {
          return "polar-complement";
        } else {
          return "moebius:" + format_complex(d.a) + "," + format_complex(d.b) + "," + format_complex(d.c) + "," +
                 format_complex(d.d) + ";base=" + format_domain(*d.base);
        }
      },
      domain.variant());
}

// ---------------------------------------------------------------------------
// Queries

bool contains(const Domain& domain, Point z) {
  if (!finite(z)) return false;
  return std::visit(
      [z](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Disc>) {
          return std::abs(z - d.center) < d.radius;
        } else if constexpr (std::is_same_v<T, Annulus>) {
          const double r = std::abs(z);
          return r > d.q && r < 1.0;
        } else if constexpr (std::is_same_v<T, Polygon>) {
          return polygon_contains(d, z);
        } else if constexpr (std::is_same_v<T, PolarComplement>) {
          return z != 0.0;
        } else {
          if (d.a - d.c * z == 0.0) return false;
          return contains(*d.base, d.inverse(z));
        }
      },
      domain.variant());
}

Circle circumcircle(Point p1, Point p2, Point p3) {
  const Point b = p2 - p1, c = p3 - p1;
  const double den = 2.0 * cross(b, c);
  if (den == 0.0) throw Error(ErrorKind::DomainError, "collinear points have no circumcircle");
  const Point u = Point(c.imag() * std::norm(b) - b.imag() * std::norm(c),
                        b.real() * std::norm(c) - c.real() * std::norm(b)) /
                  den;
  return {p1 + u, std::abs(u)};
}

std::vector<Circle> boundary_circles(const Domain& domain) {
  if (const auto* m = domain.get_if<MoebiusImage>()) {
    std::vector<Circle> out;
    for (const auto& bc : base_circles(*m->base)) {
      const Point c0 = bc.circle.center;
      const double r0 = bc.circle.radius;
      const Point p1 = m->forward(c0 + r0 * std::polar(1.0, 0.1));
      const Point p2 = m->forward(c0 + r0 * std::polar(1.0, 0.1 + 2.0 * kPi / 3.0));
      const Point p3 = m->forward(c0 + r0 * std::polar(1.0, 0.1 + 4.0 * kPi / 3.0));
      out.push_back(circumcircle(p1, p2, p3));
    }
    return out;
  }
  std::vector<Circle> out;
  for (const auto& bc : base_circles(domain)) out.push_back(bc.circle);
  return out;
}

double distance_to_boundary(const Domain& domain, Point z) {
  if (const auto* p = domain.get_if<Polygon>()) {
    double best = std::numeric_limits<double>::infinity();
    const auto& v = p->vertices;
    for (std::size_t i = 0; i < v.size(); ++i) best = std::min(best, segment_distance(z, v[i], v[(i + 1) % v.size()]));
    return best;
  }
  if (domain.is<PolarComplement>()) return std::abs(z);
  double best = std::numeric_limits<double>::infinity();
  for (const Circle& c : boundary_circles(domain)) best = std::min(best, std::abs(std::abs(z - c.center) - c.radius));
  return best;
}

Point nearest_boundary_point(const Domain& domain, Point z) {
  if (const auto* p = domain.get_if<Polygon>()) {
    double best = std::numeric_limits<double>::infinity();
    Point out = z;
    const auto& v = p->vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point q = segment_nearest(z, v[i], v[(i + 1) % v.size()]);
      if (std::abs(q - z) < best) {
        best = std::abs(q - z);
        out = q;
      }
    }
    return out;
  }
  if (domain.is<PolarComplement>()) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  Point out = z;
  for (const Circle& c : boundary_circles(domain)) {
    const Point rel = z - c.center;
    const double r = std::abs(rel);
    const Point dir = r > 0.0 ? rel / r : Point(1.0, 0.0);
    const Point q = c.center + c.radius * dir;
    if (std::abs(q - z) < best) {
      best = std::abs(q - z);
      out = q;
    }
  }
  return out;
}

namespace {

// Distance from w to the image of one base circle: dense sampling followed by
// golden-section refinement of every sampled local minimum, repeated with
// doubled sampling density until two passes agree.
double image_circle_distance(const MoebiusImage& m, Circle base, Point w) {
  auto f = [&](double theta) { return std::abs(m.forward(base.center + base.radius * std::polar(1.0, theta)) - w); };
  auto refine = [&](double lo, double hi) {
    constexpr double g = 0.6180339887498949;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      if (f1 < f2) {
        hi = x2; x2 = x1; f2 = f1; x1 = hi - g * (hi - lo); f1 = f(x1);
      } else {
        lo = x1; x1 = x2; f1 = f2; x2 = lo + g * (hi - lo); f2 = f(x2);
      }
    }
    return std::min(f1, f2);
  };
  double previous = std::numeric_limits<double>::infinity();
  for (int n = 64; n <= (1 << 16); n *= 2) {
    std::vector<double> vals(n);
    const double step = 2.0 * kPi / n;
    for (int k = 0; k < n; ++k) vals[k] = f(k * step);
    double best = *std::min_element(vals.begin(), vals.end());
    for (int k = 0; k < n; ++k) {
      const double l = vals[(k + n - 1) % n], r = vals[(k + 1) % n];
      if (vals[k] <= l && vals[k] <= r) best = std::min(best, refine((k - 1) * step, (k + 1) * step));
    }
    if (std::abs(best - previous) <= 1e-12 * std::max(best, 1e-300)) return best;
    previous = best;
  }
  return previous;
}

}  // namespace

DistanceResult boundary_distance(const Domain& domain, Point w) {
  if (!contains(domain, w)) throw Error(ErrorKind::PointOutsideDomain, "boundary_distance at " + format_point(w));
  if (domain.is<PolarComplement>()) return {std::numeric_limits<double>::infinity(), true};
  if (const auto* m = domain.get_if<MoebiusImage>()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& bc : base_circles(*m->base)) best = std::min(best, image_circle_distance(*m, bc.circle, w));
    return {best, false};
  }
  return {distance_to_boundary(domain, w), false};
}

std::vector<BoundaryNode> boundary_sample(const Domain& domain, int n) {
  if (n < 8 && !domain.is<Disc>()) throw Error(ErrorKind::DomainError, "boundary_sample needs n >= 8");
  if (n < 1) throw Error(ErrorKind::DomainError, "boundary_sample needs n >= 1");
  if (domain.is<PolarComplement>()) throw Error(ErrorKind::UnsupportedDomain, "polar complement has no boundary curve");

  std::vector<BoundaryNode> out;
  out.reserve(n);
  auto sample_circle = [&](Circle c, int count, bool domainInside, int component) {
    for (int k = 0; k < count; ++k) {
      const Point dir = std::polar(1.0, 2.0 * kPi * k / count);
      out.push_back({c.center + c.radius * dir, domainInside ? dir : -dir, component});
    }
  };

  if (const auto* poly = domain.get_if<Polygon>()) {
    const auto& v = poly->vertices;
    const std::size_t m = v.size();
    double perimeter = 0.0;
    for (std::size_t i = 0; i < m; ++i) perimeter += std::abs(v[(i + 1) % m] - v[i]);
    // largest-remainder allocation of n nodes proportional to side length
    std::vector<int> counts(m);
    std::vector<std::pair<double, std::size_t>> rem(m);
    int used = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double share = n * std::abs(v[(i + 1) % m] - v[i]) / perimeter;
      counts[i] = static_cast<int>(std::floor(share));
      rem[i] = {share - counts[i], i};
      used += counts[i];
    }
    std::stable_sort(rem.begin(), rem.end(), [](auto& x, auto& y) { return x.first > y.first; });
    for (int k = 0; used < n; ++k, ++used) ++counts[rem[k % m].second];
    for (std::size_t i = 0; i < m; ++i) {
      const Point a = v[i], b = v[(i + 1) % m];
      const Point t = (b - a) / std::abs(b - a);
      const Point normal(t.imag(), -t.real());
      for (int k = 0; k < counts[i]; ++k) out.push_back({a + (k + 0.5) / counts[i] * (b - a), normal, 0});
    }
    return out;
  }

  if (const auto* disc = domain.get_if<Disc>()) {
    sample_circle({disc->center, disc->radius}, n, true, 0);
    return out;
  }
  if (const auto* ann = domain.get_if<Annulus>()) {
    const int outer = static_cast<int>(std::lround(n / (1.0 + ann->q)));
    sample_circle({0.0, 1.0}, outer, true, 0);
    sample_circle({0.0, ann->q}, n - outer, false, 1);
    return out;
  }

  const auto circles = boundary_circles(domain);
  double total = 0.0;
  for (const auto& c : circles) total += c.radius;
  int assigned = 0;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    const int count = i + 1 == circles.size() ? n - assigned
                                              : static_cast<int>(std::lround(n * circles[i].radius / total));
    const Circle c = circles[i];
    const Point probe = c.center + c.radius * (1.0 - 1e-6);
    sample_circle(c, count, contains(domain, probe), static_cast<int>(i));
    assigned += count;
  }
  return out;
}

Transport moebius_transport(const MoebiusImage& image, Point w) {
  if (image.a - image.c * w == 0.0) throw Error(ErrorKind::MapSingular, "point is the image of the map's pole");
  const Domain tmp(image);
  if (!contains(tmp, w)) throw Error(ErrorKind::PointOutsideDomain, "moebius_transport at " + format_point(w));
  const Point s = image.inverse(w);
  return {s, std::abs(image.forward_derivative(s))};
}

Box bounding_box(const Domain& domain) {
  if (const auto* p = domain.get_if<Polygon>()) {
    Box b{p->vertices[0].real(), p->vertices[0].real(), p->vertices[0].imag(), p->vertices[0].imag()};
    for (Point v : p->vertices) {
      b.xmin = std::min(b.xmin, v.real());
      b.xmax = std::max(b.xmax, v.real());
      b.ymin = std::min(b.ymin, v.imag());
      b.ymax = std::max(b.ymax, v.imag());
    }
    return b;
  }
  if (domain.is<PolarComplement>()) throw Error(ErrorKind::UnsupportedDomain, "polar complement is unbounded");
  // the outer boundary circle encloses every other component
  Circle outer{0.0, 0.0};
  for (const Circle& c : boundary_circles(domain))
    if (c.radius > outer.radius) outer = c;
  return {outer.center.real() - outer.radius, outer.center.real() + outer.radius, outer.center.imag() - outer.radius,
          outer.center.imag() + outer.radius};
}

double domain_area(const Domain& domain) {
  if (const auto* p = domain.get_if<Polygon>()) return signed_area(p->vertices);
  if (domain.is<PolarComplement>()) return std::numeric_limits<double>::infinity();
  const auto circles = boundary_circles(domain);
  if (circles.size() == 1) return kPi * circles[0].radius * circles[0].radius;
  const double r1 = std::max(circles[0].radius, circles[1].radius);
  const double r2 = std::min(circles[0].radius, circles[1].radius);
  return kPi * (r1 * r1 - r2 * r2);
}

}  // namespace suita
