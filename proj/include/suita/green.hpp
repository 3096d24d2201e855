#pragma once

#include <optional>
#include <vector>

#include "suita/geometry.hpp"

namespace suita {

/// Value and gradient of G(., w) at a point.
struct GreenValue {
  double value = 0.0;
  double gradX = 0.0;
  double gradY = 0.0;
  double truncationBound = 0.0;
};

struct CapacityResult {
  double capacity = 0.0;
  double robinConstant = 0.0;  // log capacity; -inf for a polar complement
  double truncationBound = 0.0;
};

struct CriticalPoint {
  Point location;
  double level = 0.0;
  double gradientResidual = 0.0;
  int order = 2;
};

/// Locally G(., w) = Re g for a holomorphic g; these are g' and g''.
/// The gradient of G is conj(g').
struct HolomorphicDerivatives {
  Point first;
  Point second;
};

/// Precomputed evaluator for G(., w) on a fixed (domain, pole) pair.
/// Evaluation is unchecked: callers guarantee z is in the closure of the domain.
class GreenFunction {
 public:
  GreenFunction(const Domain& domain, Point w);

  const Domain& domain() const { return domain_; }
  Point pole() const { return w_; }

  double value(Point z) const;
  HolomorphicDerivatives derivatives(Point z) const;
  Point gradient(Point z) const { return std::conj(derivatives(z).first); }
  double truncation_bound(Point z) const;

  /// G extended by 0 outside the domain and by -inf at the pole.
  double extended_value(Point z) const;

  /// Number of prime-function factors kept (annulus bases only).
  int truncation_order() const { return order_; }

  /// Annulus bases only, in base coordinates: the prime-function product and
  /// the strip image sum. Evaluation switches to the image sum where |G| or
  /// |g'| is small, since there the product has only absolute precision.
  double product_value(Point s) const;
  HolomorphicDerivatives product_derivatives(Point s) const;
  double image_value(Point s) const;
  HolomorphicDerivatives image_derivatives(Point s) const;

 private:
  double base_value(Point s) const;
  HolomorphicDerivatives base_derivatives(Point s) const;

  Domain domain_;
  Point w_;
  Point baseW_;
  std::optional<MoebiusImage> map_;
  double q_ = 0.0;
  double beta_ = 0.0;
  int order_ = 0;
  std::vector<double> powers_;  // q^{2k}, k = 1..order
  double stripWidth_ = 0.0;
  Point rotation_{1.0, 0.0};
  Point phiW_;
  std::vector<double> imageScales_;
};

/// Number of factors K with q^{2K} < 1e-14.
int annulus_truncation_order(double q);

GreenValue green_eval(const Domain& domain, Point w, Point z);
CapacityResult robin_capacity(const Domain& domain, Point w);
double disc_max_green(const Domain& domain, Point w, double r, int nodes = 4096);
std::vector<CriticalPoint> critical_points(const Domain& domain, Point w);
double boundary_flux(const Domain& domain, Point w, int n);

}  // namespace suita
