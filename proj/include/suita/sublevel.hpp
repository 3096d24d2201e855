#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "suita/geometry.hpp"
#include "suita/green.hpp"

namespace suita {

constexpr int kDefaultGrid = 1024;

struct SublevelArea {
  double area = 0.0;
  double errorEstimate = 0.0;
};

/// Per-(domain, pole) cache of G and its derivatives on a tensor grid over the
/// bounding box. Every query is const and may run concurrently.
class SublevelGrid {
 public:
  SublevelGrid(const Domain& domain, Point w, int resolution = kDefaultGrid);

  /// lambda({G < t}).
  SublevelArea area(double t) const;
  /// Integral of 1/|grad G| over {G = t}.
  double coarea(double t) const;
  /// Level set {G = t} as polylines from marching squares.
  std::vector<std::vector<Point>> level_curves(double t) const;

  const std::vector<CriticalPoint>& critical_points() const { return critical_; }
  /// Half-width of the band around a critical level where the co-area integral is refused.
  double critical_band(const CriticalPoint& cp) const;
  int resolution() const { return n_; }
  const GreenFunction& green() const { return g_; }

 private:
  enum class CellKind : std::uint8_t { Interior, Boundary, Exterior, PoleNear };
  struct Segment {
    Point a, b;
    std::int64_t edgeA = 0, edgeB = 0;
  };

  double ghat(Point z) const;
  double level_fn(Point z, double t) const;
  void circle_cuts(bool vertical, double fixed, double lo, double hi, std::vector<double>& out) const;
  double line_measure(bool vertical, double fixed, double lo, double hi, double t, bool level) const;
  void line_splits(bool vertical, double fixed, double lo, double hi, double t, bool level,
                   std::vector<double>& out) const;
  double cell_area(double x0, double x1, double y0, double y1, double t, bool level, int depth, double& err) const;
  std::vector<Segment> march(double t) const;
  Point project(Point p, double t) const;

  GreenFunction g_;
  Box box_;
  int n_ = 0;
  double hx_ = 0.0, hy_ = 0.0, rho_ = 0.0;
  std::vector<CellKind> kind_;
  std::vector<double> centerValue_;
  std::vector<double> slope_;      // |g'| at centers, or at the nearest boundary point for boundary cells
  std::vector<double> curvature_;  // |g''| at centers
  std::vector<double> nodeValue_;  // (n+1)^2 extended values
  std::vector<double> insideArea_;      // area of cell and domain, boundary cells only
  std::vector<double> boundaryCurve_;   // |g''| at the nearest boundary point, boundary cells only
  std::vector<Circle> circles_;
  std::vector<CriticalPoint> critical_;
};

struct SublevelProfile {
  std::vector<double> t;
  std::vector<double> lambda;
  std::vector<double> gammaPrime;  // NaN at critical levels
  std::vector<double> logLambda;
  std::vector<double> secondDiff;  // second derivative estimate; NaN at the ends
  std::vector<double> e2tLambda;
  std::vector<double> errEst;
  std::vector<double> lambdaHalf;      // areas on a half-resolution grid; empty if not computed
  std::vector<double> secondDiffHalf;
  std::vector<bool> criticalLevel;
  int resolution = 0;
};

enum class ConvexityVerdict { ConvexWithinTolerance, NonConvexDetected };

struct ConvexityReport {
  double minSecondDiff = 0.0;
  double argminT = 0.0;
  double criticalLevel = 0.0;
  double windowLo = 0.0;
  double windowHi = 0.0;
  double noiseFloor = 0.0;
  ConvexityVerdict verdict = ConvexityVerdict::ConvexWithinTolerance;
};

/// Monotonicity of the lower bound 1/(e^{-2t} lambda) in t.
struct MonotonicityResult {
  double maxIncrease = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

SublevelArea sublevel_area(const Domain& domain, Point w, double t, int resolution = kDefaultGrid);
double coarea_derivative(const Domain& domain, Point w, double t, int resolution = kDefaultGrid);

/// steps samples on a uniform grid including both ends.
SublevelProfile profile_scan(const Domain& domain, Point w, double tMin, double tMax, int steps,
                             int resolution = kDefaultGrid, bool withHalfResolution = true);
SublevelProfile profile_scan(const SublevelGrid& grid, const SublevelGrid* half, double tMin, double tMax, int steps);

/// Recomputes the derived columns after lambda has been edited.
void refresh_profile(SublevelProfile& profile);

ConvexityReport convexity_report(const SublevelProfile& profile, double t0,
                                 double halfWidth = std::numeric_limits<double>::infinity());
MonotonicityResult monotonicity_check(const SublevelProfile& profile, std::optional<double> tolerance = std::nullopt);

}  // namespace suita
