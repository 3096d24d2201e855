#include "suita/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "suita/error.hpp"
#include "suita/oracles.hpp"

namespace suita {

namespace {

constexpr double kPi = std::numbers::pi;
// below this magnitude the image sum replaces the product
constexpr double kImageSwitch = 1e-3;

void require_green_support(const Domain& domain) {
  if (!domain.has_green_function())
    throw Error(ErrorKind::UnsupportedDomain, "no series Green function for " + format_domain(domain));
}

// log P(x) for real 0 < x < 1 where P is the annulus prime-function product.
double log_prime_real(double x, const std::vector<double>& powers) {
  double s = std::log1p(-x);
  for (double a : powers) s += std::log1p(-a * x) + std::log1p(-a / x);
  return s;
}

}  // namespace

int annulus_truncation_order(double q) {
  int k = 1;
  while (std::pow(q, 2.0 * k) >= 1e-14) ++k;
  return k;
}

GreenFunction::GreenFunction(const Domain& domain, Point w) : domain_(domain), w_(w) {
  require_green_support(domain_);
  if (!contains(domain_, w)) throw Error(ErrorKind::PointOutsideDomain, "pole " + format_point(w));
  baseW_ = w;
  if (const auto* m = domain_.get_if<MoebiusImage>()) {
    map_ = *m;
    baseW_ = m->inverse(w);
  }
  if (const auto* a = domain_.base().get_if<Annulus>()) {
    q_ = a->q;
    order_ = annulus_truncation_order(q_);
    powers_.resize(order_);
    for (int k = 1; k <= order_; ++k) powers_[k - 1] = std::pow(q_, 2.0 * k);
    beta_ = std::log(std::abs(baseW_)) / std::log(q_);
    stripWidth_ = -std::log(q_);
    rotation_ = std::conj(baseW_) / std::abs(baseW_);
    phiW_ = std::exp(Point(0.0, -kPi / stripWidth_) * std::log(std::abs(baseW_)));
    // images decay like exp(-2 pi^2 |k| / L); keep them down to 1e-18 relative
    const int images = static_cast<int>(std::ceil(41.5 * stripWidth_ / (2.0 * kPi * kPi))) + 1;
    for (int k = -images; k <= images; ++k) imageScales_.push_back(std::exp(2.0 * kPi * kPi * k / stripWidth_));
  }
}

double GreenFunction::base_value(Point s) const {
  if (const auto* d = domain_.base().get_if<Disc>()) {
    const Point u = baseW_ - d->center;
    const double num = d->radius * std::abs(s - baseW_);
    const double den = std::abs(d->radius * d->radius - std::conj(u) * (s - d->center));
    return std::log(num / den);
  }
  const double v = product_value(s);
  return std::abs(v) < kImageSwitch ? image_value(s) : v;
}

double GreenFunction::product_value(Point s) const {
  const Point z1 = s / baseW_;
  const Point z2 = s * std::conj(baseW_);
  double ratio = std::norm(1.0 - z1) / std::norm(1.0 - z2);
  for (double a : powers_) {
    ratio *= (std::norm(1.0 - a * z1) * std::norm(1.0 - a / z1)) / (std::norm(1.0 - a * z2) * std::norm(1.0 - a / z2));
  }
  const double logw = std::log(std::abs(baseW_));
  return 0.5 * std::log(ratio) + logw - beta_ * std::log(std::abs(s));
}

HolomorphicDerivatives GreenFunction::base_derivatives(Point s) const {
  if (const auto* d = domain_.base().get_if<Disc>()) {
    const Point ub = std::conj(baseW_ - d->center);
    const Point den = d->radius * d->radius - ub * (s - d->center);
    const Point e = 1.0 / (s - baseW_);
    const Point f = ub / den;
    return {e + f, -e * e + f * f};
  }
  const HolomorphicDerivatives p = product_derivatives(s);
  return std::abs(p.first) < kImageSwitch ? image_derivatives(s) : p;
}

HolomorphicDerivatives GreenFunction::product_derivatives(Point s) const {
  // L = log P: L' and L'' at zeta
  auto dlog = [this](Point zeta, Point& l1, Point& l2) {
    const Point e = 1.0 / (1.0 - zeta);
    l1 = -e;
    l2 = -e * e;
    const Point iz = 1.0 / zeta;
    for (double a : powers_) {
      const Point f = a / (1.0 - a * zeta);
      const Point g = 1.0 / (zeta - a);
      l1 += -f + g - iz;
      l2 += -f * f - g * g + iz * iz;
    }
  };
  Point a1, a2, b1, b2;
  const Point wb = std::conj(baseW_);
  dlog(s / baseW_, a1, a2);
  dlog(s * wb, b1, b2);
  const Point is = 1.0 / s;
  return {a1 / baseW_ - wb * b1 - beta_ * is, a2 / (baseW_ * baseW_) - wb * wb * b2 + beta_ * is * is};
}

// Periodic images of the strip Green function. With u = s rotated so the pole
// is positive and Phi(u) = exp(-i pi log u / L), L = log(1/q), every term is
// log|(Phi_k - a)/(Phi_k - conj a)| with Phi_k = Phi(u) e^{2 pi^2 k / L} and
// a = Phi(|w|). Each term vanishes on both circles, so small values of G keep
// their relative precision.
double GreenFunction::image_value(Point s) const {
  const Point u = s * rotation_;
  const Point phi = std::exp(Point(0.0, -kPi / stripWidth_) * std::log(u));
  double sum = 0.0;
  for (double scale : imageScales_) {
    const Point p = phi * scale;
    const double num = std::norm(p - phiW_), den = std::norm(p - std::conj(phiW_));
    const double x = -4.0 * p.imag() * phiW_.imag() / den;
    sum += x > -0.5 ? 0.5 * std::log1p(x) : 0.5 * std::log(num / den);
  }
  return sum;
}

HolomorphicDerivatives GreenFunction::image_derivatives(Point s) const {
  const Point u = s * rotation_;
  const Point c(0.0, -kPi / stripWidth_);
  const Point phi = std::exp(c * std::log(u));
  const Point diff = phiW_ - std::conj(phiW_);
  Point first = 0.0, second = 0.0;
  for (double scale : imageScales_) {
    const Point p = phi * scale;
    const Point ea = 1.0 / (p - phiW_), eb = 1.0 / (p - std::conj(phiW_));
    const Point pt = p * diff * ea * eb;
    first += pt;
    second += pt * (-1.0 + c * (1.0 - p * (ea + eb)));
  }
  const Point iu = 1.0 / u;
  // chain rule through u = rotation * s
  return {c * iu * first * rotation_, c * iu * iu * second * rotation_ * rotation_};
}

double GreenFunction::value(Point z) const { return base_value(map_ ? map_->inverse(z) : z); }

HolomorphicDerivatives GreenFunction::derivatives(Point z) const {
  if (!map_) return base_derivatives(z);
  const Point s = map_->inverse(z);
  const Point den = map_->a - map_->c * z;
  const Point det = map_->a * map_->d - map_->b * map_->c;
  const Point ds = det / (den * den);
  const Point d2s = 2.0 * map_->c * det / (den * den * den);
  const HolomorphicDerivatives b = base_derivatives(s);
  return {b.first * ds, b.second * ds * ds + b.first * d2s};
}

double GreenFunction::truncation_bound(Point z) const {
  if (order_ == 0) return 0.0;
  const Point s = map_ ? map_->inverse(z) : z;
  const double tail = std::pow(q_, 2.0 * order_ + 2.0) / (1.0 - q_ * q_);
  double bound = 0.0;
  for (double r : {std::abs(s / baseW_), std::abs(s * std::conj(baseW_))}) bound += 2.0 * (r + 1.0 / r) * tail;
  return bound;
}

double GreenFunction::extended_value(Point z) const {
  if (z == w_) return -std::numeric_limits<double>::infinity();
  if (!contains(domain_, z)) return 0.0;
  return value(z);
}

GreenValue green_eval(const Domain& domain, Point w, Point z) {
  require_green_support(domain);
  if (!contains(domain, z)) throw Error(ErrorKind::PointOutsideDomain, "evaluation point " + format_point(z));
  if (z == w) throw Error(ErrorKind::CoincidentPoints, "z equals the pole");
  const GreenFunction g(domain, w);
  const Point grad = g.gradient(z);
  return {g.value(z), grad.real(), grad.imag(), g.truncation_bound(z)};
}

CapacityResult robin_capacity(const Domain& domain, Point w) {
  if (domain.is<PolarComplement>()) {
    if (!contains(domain, w)) throw Error(ErrorKind::PointOutsideDomain, "pole " + format_point(w));
    return {0.0, -std::numeric_limits<double>::infinity(), 0.0};
  }
  require_green_support(domain);
  if (!contains(domain, w)) throw Error(ErrorKind::PointOutsideDomain, "pole " + format_point(w));

  Point s = w;
  double logScale = 0.0;
  if (const auto* m = domain.get_if<MoebiusImage>()) {
    const Transport t = moebius_transport(*m, w);
    s = t.basePoint;
    logScale = -std::log(t.derivativeModulus);
  }
  const Domain& base = domain.base();
  if (const auto* d = base.get_if<Disc>()) {
    const double logc = std::log(d->radius) - std::log(d->radius * d->radius - std::norm(s - d->center));
    return {std::exp(logc + logScale), logc + logScale, 0.0};
  }
  const double q = base.get_if<Annulus>()->q;
  const int order = annulus_truncation_order(q);
  std::vector<double> powers(order);
  double logc = 0.0;
  for (int k = 1; k <= order; ++k) {
    powers[k - 1] = std::pow(q, 2.0 * k);
    logc += 2.0 * std::log1p(-powers[k - 1]);
  }
  const double r = std::abs(s);
  const double logr = std::log(r);
  logc += -log_prime_real(r * r, powers) - logr * logr / std::log(q);
  const double tail = std::pow(q, 2.0 * order + 2.0) / (1.0 - q * q);
  const double bound = 4.0 * tail + 2.0 * (r * r + 1.0 / (r * r)) * tail;
  return {std::exp(logc + logScale), logc + logScale, bound};
}

double disc_max_green(const Domain& domain, Point w, double r, int nodes) {
  const GreenFunction g(domain, w);
  const double delta = boundary_distance(domain, w).delta;
  if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "radius must be positive");
  if (r > delta * (1.0 + 1e-12)) throw Error(ErrorKind::RadiusTooLarge, "r exceeds the boundary distance");
  r = std::min(r, delta);

  auto f = [&](double theta) { return g.value(w + r * std::polar(1.0, theta)); };
  const double step = 2.0 * kPi / nodes;
  std::vector<double> vals(nodes);
  for (int k = 0; k < nodes; ++k) vals[k] = f(k * step);

  // golden-section refinement around every sampled local maximum
  double best = *std::max_element(vals.begin(), vals.end());
  for (int k = 0; k < nodes; ++k) {
    if (vals[k] < vals[(k + nodes - 1) % nodes] || vals[k] < vals[(k + 1) % nodes]) continue;
    constexpr double gr = 0.6180339887498949;
    double lo = (k - 1) * step, hi = (k + 1) * step;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
      if (f1 > f2) {
        hi = x2; x2 = x1; f2 = f1; x1 = hi - gr * (hi - lo); f1 = f(x1);
      } else {
        lo = x1; x1 = x2; f1 = f2; x2 = lo + gr * (hi - lo); f2 = f(x2);
      }
    }
    best = std::max({best, f1, f2});
  }
  // G vanishes on the boundary and is negative inside
  return std::min(best + 1e-12, 0.0);
}

std::vector<CriticalPoint> critical_points(const Domain& domain, Point w) {
  const GreenFunction g(domain, w);
  if (domain.is_simply_connected()) return {};

  std::vector<CriticalPoint> out;
  for (Point seed : grid_min_gradient(domain, w, 512)) {
    Point z = seed;
    bool escaped = false, settled = false;
    for (int it = 0; it < 80 && !settled; ++it) {
      const HolomorphicDerivatives d = g.derivatives(z);
      const Point step = d.first / d.second;
      const Point next = z - step;
      if (!contains(domain, next) || next == w) {
        escaped = true;
        break;
      }
      z = next;
      settled = std::abs(step) <= 4e-16 * std::max(1.0, std::abs(z));
    }
    if (escaped) continue;
    const double residual = std::abs(g.derivatives(z).first);
    if (!settled || residual > 1e-9) throw Error(ErrorKind::ConvergenceFailure, "Newton stalled at " + format_point(z));
    bool duplicate = false;
    for (const auto& cp : out) duplicate |= std::abs(cp.location - z) < 1e-7;
    if (duplicate) continue;

    // |grad G| ~ rho^{n-1} on small circles around z0
    constexpr int kRadii = 8;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < kRadii; ++i) {
      const double rho = std::pow(10.0, -4.0 + 2.0 * i / (kRadii - 1));
      double mean = 0.0;
      for (int k = 0; k < 16; ++k) mean += std::abs(g.derivatives(z + rho * std::polar(1.0, 2.0 * kPi * (k + 0.5) / 16)).first);
      const double x = std::log(rho), y = std::log(mean / 16);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double slope = (kRadii * sxy - sx * sy) / (kRadii * sxx - sx * sx);
    const int order = std::max(2, static_cast<int>(std::lround(slope)) + 1);
    out.push_back({z, g.value(z), residual, order});
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return a.location.real() != b.location.real() ? a.location.real() < b.location.real()
                                                  : a.location.imag() < b.location.imag();
  });
  return out;
}

double boundary_flux(const Domain& domain, Point w, int n) {
  if (!domain.is<Disc>() && !domain.is<Annulus>())
    throw Error(ErrorKind::UnsupportedDomain, "boundary_flux supports discs and annuli");
  if (n < 64) throw Error(ErrorKind::DomainError, "boundary_flux needs at least 64 nodes");
  const GreenFunction g(domain, w);
  const auto nodes = boundary_sample(domain, n);
  const double poleGap = distance_to_boundary(domain, w);

  std::vector<int> counts(2, 0);
  for (const auto& b : nodes) ++counts[b.component];
  const auto circles = boundary_circles(domain);

  double flux = 0.0;
  for (const auto& b : nodes) {
    const double circumference = 2.0 * kPi * circles[b.component].radius;
    const double spacing = circumference / counts[b.component];
    const double h = std::min(spacing / 8.0, poleGap / 20.0);
    double f[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (int k = 1; k <= 4; ++k) f[k] = g.value(b.point - (k * h) * b.normal);
    // fourth-order one-sided difference along the inward normal
    const double dn = (25.0 * f[0] - 48.0 * f[1] + 36.0 * f[2] - 16.0 * f[3] + 3.0 * f[4]) / (12.0 * h);
    flux += dn * spacing;
  }
  return flux;
}

}  // namespace suita
