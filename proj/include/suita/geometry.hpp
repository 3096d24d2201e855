#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace suita {

using Point = std::complex<double>;

class Domain;

/// Open disc |z - center| < radius.
struct Disc {
  Point center{0.0, 0.0};
  double radius = 1.0;
};

/// Canonical annulus q < |z| < 1.
struct Annulus {
  double q = 0.5;
};

/// Simple, positively oriented polygon. Only the Monte Carlo oracle paths accept it.
struct Polygon {
  std::vector<Point> vertices;
};

/// The punctured plane C \ {0}; its complement is polar.
struct PolarComplement {};

/// Image of a base domain under F(s) = (a s + b) / (c s + d).
struct MoebiusImage {
  std::shared_ptr<const Domain> base;
  Point a{1.0, 0.0};
  Point b{0.0, 0.0};
  Point c{0.0, 0.0};
  Point d{1.0, 0.0};

  Point forward(Point s) const { return (a * s + b) / (c * s + d); }
  Point inverse(Point z) const { return (d * z - b) / (a - c * z); }
  Point forward_derivative(Point s) const {
    const Point den = c * s + d;
    return (a * d - b * c) / (den * den);
  }
  Point inverse_derivative(Point z) const {
    const Point den = a - c * z;
    return (a * d - b * c) / (den * den);
  }
};

/// Validated, immutable planar domain descriptor. Construction checks every
/// invariant of the underlying variant; nested Moebius images are composed.
class Domain {
 public:
  using Variant = std::variant<Disc, Annulus, MoebiusImage, Polygon, PolarComplement>;

  Domain(Disc disc);
  Domain(Annulus annulus);
  Domain(MoebiusImage image);
  Domain(Polygon polygon);
  Domain(PolarComplement);

  const Variant& variant() const noexcept { return v_; }

  template <class T>
  const T* get_if() const noexcept { return std::get_if<T>(&v_); }
  template <class T>
  bool is() const noexcept { return std::holds_alternative<T>(v_); }

  /// Base domain of a Moebius image, or the domain itself.
  const Domain& base() const;

  bool is_simply_connected() const;
  bool has_green_function() const;

 private:
  Variant v_;
};

struct DistanceResult {
  double delta = 0.0;
  bool infinite = false;
};

struct BoundaryNode {
  Point point;
  Point normal;  // outward unit normal
  int component = 0;
};

struct Transport {
  Point basePoint;
  double derivativeModulus = 1.0;  // |F'(basePoint)|
};

struct Circle {
  Point center;
  double radius = 0.0;
};

struct Box {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
};

// Literal syntax: disc:cx,cy,r | annulus:q | moebius:a,b,c,d;base=<literal>
//                 | polygon:x1,y1;x2,y2;... | polar-complement
Domain parse_domain(std::string_view literal);
std::string format_domain(const Domain& domain);
Point parse_point(std::string_view text);
Point parse_complex(std::string_view text);
std::string format_point(Point p);

Domain make_moebius(const Domain& base, Point a, Point b, Point c, Point d);

bool contains(const Domain& domain, Point z);
DistanceResult boundary_distance(const Domain& domain, Point w);
std::vector<BoundaryNode> boundary_sample(const Domain& domain, int n);
Transport moebius_transport(const MoebiusImage& image, Point w);

/// Boundary components of a disc, annulus or Moebius image as circles.
std::vector<Circle> boundary_circles(const Domain& domain);

/// Unsigned Euclidean distance from an arbitrary point to the boundary set.
double distance_to_boundary(const Domain& domain, Point z);
Point nearest_boundary_point(const Domain& domain, Point z);

Box bounding_box(const Domain& domain);
double domain_area(const Domain& domain);

/// Circle through three distinct non-collinear points.
Circle circumcircle(Point p1, Point p2, Point p3);

}  // namespace suita
