#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "suita/geometry.hpp"

namespace testing_support {

using suita::Point;
constexpr double kPi = std::numbers::pi;

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Uniform interior points at least `margin` away from the boundary.
inline std::vector<Point> interior_points(const suita::Domain& d, int count, double margin, std::uint32_t seed) {
  std::mt19937 gen(seed);
  const suita::Box box = suita::bounding_box(d);
  std::uniform_real_distribution<double> ux(box.xmin, box.xmax), uy(box.ymin, box.ymax);
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < count) {
    const Point p(ux(gen), uy(gen));
    if (suita::contains(d, p) && suita::distance_to_boundary(d, p) > margin) out.push_back(p);
  }
  return out;
}

/// Laurent-series kernel of the annulus q < |z| < 1 summed directly.
inline double annulus_kernel_direct(double q, Point z) {
  const double r2 = std::norm(z);
  double sum = 1.0 / (2.0 * kPi * std::log(1.0 / q)) / r2;
  for (int n = 0; n < 4000; ++n) {
    const double t = (n + 1) * std::pow(r2, n) / (kPi * (1.0 - std::pow(q, 2 * n + 2)));
    sum += t;
    if (t < 1e-20 * sum && n > 20) break;
  }
  for (int m = -2; m > -4000; --m) {
    const int k = m + 1;
    const double t = k * std::pow(r2, m) / (kPi * (1.0 - std::pow(q, 2 * k)));
    sum += t;
    if (std::abs(t) < 1e-20 * sum && m < -20) break;
  }
  return sum;
}

}  // namespace testing_support
