#include "suita/bergman.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "suita/error.hpp"

namespace suita {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

using Series = std::vector<Point>;

// Base-domain data for the monomial family u^n, u = s - center.
struct BaseFamily {
  bool annulus = false;
  Point center{0.0, 0.0};
  double radius = 1.0;  // disc radius, or 1 for the annulus
  double q = 0.0;

  double log_norm2(int n) const {
    if (!annulus) return std::log(kPi) + (2.0 * n + 2.0) * std::log(radius) - std::log(n + 1.0);
    if (n == -1) return std::log(2.0 * kPi * -std::log(q));
    const double m = 2.0 * n + 2.0;
    if (n >= 0) return std::log(2.0 * kPi) + std::log1p(-std::pow(q, m)) - std::log(m);
    // negative powers: (q^m - 1) / m with m < 0
    return std::log(2.0 * kPi) + m * std::log(q) + std::log1p(-std::pow(q, -m)) - std::log(-m);
  }
  int first_index(int order) const { return annulus ? -order : 0; }
};

BaseFamily base_family(const Domain& base) {
  BaseFamily f;
  if (const auto* d = base.get_if<Disc>()) {
    f.center = d->center;
    f.radius = d->radius;
  } else if (const auto* a = base.get_if<Annulus>()) {
    f.annulus = true;
    f.q = a->q;
  } else {
    throw Error(ErrorKind::UnsupportedDomain, "no closed-form orthonormal basis for this domain");
  }
  return f;
}

double falling(int n, int i) {
  double r = 1.0;
  for (int k = 0; k < i; ++k) r *= static_cast<double>(n - k);
  return r;
}

// i-th derivative of u^n / ||u^n|| at u.
Point direct_entry(const BaseFamily& f, Point u, int n, int i) {
  const double fall = falling(n, i);
  if (fall == 0.0) return 0.0;
  const double halfLog = 0.5 * f.log_norm2(n);
  if (u == Point(0.0, 0.0)) return n == i ? Point(fall * std::exp(-halfLog), 0.0) : Point(0.0, 0.0);
  return fall * std::exp(static_cast<double>(n - i) * std::log(u) - halfLog);
}

// Upper bound on sum_{|n| > order} |v_i(n)|^2 for one point, via a ratio bound
// that is monotone in n.
double tail_bound(const BaseFamily& f, Point u, int order, int i) {
  const double inf = std::numeric_limits<double>::infinity();
  double tail = 0.0;
  {
    const int n = order + 1;
    const double rho = std::abs(u) / f.radius;
    const double k = n + 1.0;
    const double ratio = std::pow(k / (k - i), 2) * rho * rho * (k + 1.0) / k;
    if (ratio >= 1.0) return inf;
    tail += std::norm(direct_entry(f, u, n, i)) / (1.0 - ratio);
  }
  if (f.annulus) {
    const int m = order + 1;
    const double ratio = std::pow((m + 1.0 + i) / (m + 1.0), 2) * ((m + 1.0) / m) * f.q * f.q / std::norm(u);
    if (ratio >= 1.0) return inf;
    tail += std::norm(direct_entry(f, u, -m, i)) / (1.0 - ratio);
  }
  return tail;
}

Eigen::MatrixXcd direct_matrix(const BaseFamily& f, Point u, int maxOrder, int order) {
  const int first = f.first_index(order);
  const int count = order - first + 1;
  Eigen::MatrixXcd m(maxOrder + 1, count);
  for (int k = 0; k < count; ++k)
    for (int i = 0; i <= maxOrder; ++i) m(i, k) = direct_entry(f, u, first + k, i);
  return m;
}

// Smallest doubling order whose relative tail is below target at every point.
int choose_order(const BaseFamily& f, const std::vector<Point>& us, int maxOrder, const KernelOptions& options,
                 double& relTail) {
  int order = std::max(16, options.minOrder);
  for (;;) {
    double worst = 0.0;
    for (Point u : us) {
      const Eigen::MatrixXcd m = direct_matrix(f, u, maxOrder, order);
      for (int i = 0; i <= maxOrder; ++i) {
        const double head = m.row(i).squaredNorm();
        const double tail = tail_bound(f, u, order, i);
        worst = std::max(worst, head > 0.0 ? tail / head : 0.0);
      }
    }
    if (worst <= options.relativeTail) {
      relTail = worst;
      return order;
    }
    if (order >= kMaxTruncationOrder)
      throw Error(ErrorKind::TruncationFailure, "series tail above target at the maximal truncation order");
    order = std::min(2 * order, kMaxTruncationOrder);
  }
}

Series multiply(const Series& a, const Series& b) {
  Series r(a.size(), 0.0);
  for (std::size_t k = 0; k < r.size(); ++k)
    for (std::size_t l = 0; l <= k; ++l) r[k] += a[l] * b[k - l];
  return r;
}

Series reciprocal(const Series& a) {
  Series r(a.size(), 0.0);
  r[0] = 1.0 / a[0];
  for (std::size_t k = 1; k < r.size(); ++k) {
    Point s = 0.0;
    for (std::size_t l = 1; l <= k; ++l) s += a[l] * r[k - l];
    r[k] = -s * r[0];
  }
  return r;
}

// Derivatives at z of e_n(zeta(z)) * zeta'(z), where zeta is the inverse map
// and e_n the orthonormal base monomials.
Eigen::MatrixXcd pullback_matrix(const BaseFamily& f, const MoebiusImage& map, Point z, int maxOrder, int order) {
  const int terms = maxOrder + 1;
  const Point A = map.d * z - map.b, B = map.a - map.c * z;
  const Point r = map.c / B;
  // Taylor coefficients of zeta around z, one beyond what zeta' needs
  Series zeta(terms + 1);
  zeta[0] = A / B;
  Point rk = 1.0;
  for (int k = 1; k <= terms; ++k) {
    zeta[k] = (A / B) * rk * r + (map.d / B) * rk;
    rk *= r;
  }
  Series dzeta(terms);
  for (int k = 0; k < terms; ++k) dzeta[k] = static_cast<double>(k + 1) * zeta[k + 1];
  Series u(zeta.begin(), zeta.begin() + terms);
  u[0] -= f.center;

  double fact = 1.0;
  std::vector<double> factorial(terms);
  for (int i = 0; i < terms; ++i) {
    factorial[i] = fact;
    fact *= i + 1.0;
  }

  const int first = f.first_index(order);
  Eigen::MatrixXcd m(terms, order - first + 1);
  auto store = [&](int n, const Series& e) {
    const Series g = multiply(e, dzeta);
    for (int i = 0; i < terms; ++i) m(i, n - first) = factorial[i] * g[i];
  };

  Series e(terms, 0.0);
  e[0] = std::exp(-0.5 * f.log_norm2(0));
  store(0, e);
  for (int n = 0; n < order; ++n) {
    e = multiply(e, u);
    const double scale = std::exp(0.5 * (f.log_norm2(n) - f.log_norm2(n + 1)));
    for (auto& x : e) x *= scale;
    store(n + 1, e);
  }
  if (f.annulus) {
    const Series v = reciprocal(u);
    e = v;
    const double s0 = std::exp(-0.5 * f.log_norm2(-1));
    for (auto& x : e) x *= s0;
    store(-1, e);
    for (int n = -1; n > -order; --n) {
      e = multiply(e, v);
      const double scale = std::exp(0.5 * (f.log_norm2(n) - f.log_norm2(n - 1)));
      for (auto& x : e) x *= scale;
      store(n - 1, e);
    }
  }
  return m;
}

struct FramePair {
  Eigen::MatrixXcd at;     // rows 0..maxOrder at the first point
  Eigen::MatrixXcd other;  // rows 0..maxOrder at the second point
  int order = 0;
  double relTail = 0.0;
};

void check_order(int j) {
  if (j < 0) throw Error(ErrorKind::DomainError, "derivative order must be non-negative");
  if (j > kMaxDerivativeOrder)
    throw Error(ErrorKind::DomainError, "derivative order above 12 loses all precision in double arithmetic");
}

void check_point(const Domain& domain, Point p) {
  if (!contains(domain, p)) throw Error(ErrorKind::PointOutsideDomain, "point not inside the domain");
}

// Frames at two points sharing one index set.
FramePair frames(const Domain& domain, Point p1, Point p2, int maxOrder, const KernelOptions& options) {
  FramePair out;
  if (const auto* map = domain.get_if<MoebiusImage>()) {
    const BaseFamily f = base_family(*map->base);
    const Point s1 = map->inverse(p1), s2 = map->inverse(p2);
    double relTail = 0.0;
    int order = choose_order(f, {s1 - f.center, s2 - f.center}, maxOrder, options, relTail);
    // the pulled-back family mixes derivative orders; confirm by doubling
    for (;;) {
      const int next = std::min(2 * order, kMaxTruncationOrder);
      const Eigen::MatrixXcd a1 = pullback_matrix(f, *map, p1, maxOrder, order);
      const Eigen::MatrixXcd b1 = pullback_matrix(f, *map, p1, maxOrder, next);
      double diff = 0.0;
      for (int i = 0; i <= maxOrder; ++i) {
        const double full = b1.row(i).squaredNorm();
        if (full > 0.0) diff = std::max(diff, std::abs(full - a1.row(i).squaredNorm()) / full);
      }
      if (diff <= std::max(options.relativeTail, 16.0 * kEps) || next == order) {
        out.at = std::move(a1);
        out.other = pullback_matrix(f, *map, p2, maxOrder, order);
        out.order = order;
        out.relTail = std::max(relTail, diff);
        return out;
      }
      if (next >= kMaxTruncationOrder && diff > options.relativeTail)
        throw Error(ErrorKind::TruncationFailure, "pulled-back series did not settle");
      order = next;
    }
  }
  if (domain.is<Disc>() || domain.is<Annulus>()) {
    const BaseFamily f = base_family(domain);
    out.order = choose_order(f, {p1 - f.center, p2 - f.center}, maxOrder, options, out.relTail);
    out.at = direct_matrix(f, p1 - f.center, maxOrder, out.order);
    out.other = direct_matrix(f, p2 - f.center, maxOrder, out.order);
    return out;
  }
  throw Error(ErrorKind::UnsupportedDomain, "Bergman kernels need a disc, annulus or Moebius image");
}

// |R_jj|^2 from the QR factorisation of the column stack.
double last_pivot(const Eigen::MatrixXcd& columns) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(columns);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  const Eigen::Index j = columns.cols() - 1;
  return std::norm(r(j, j));
}

KernelResult kernel_from(const FramePair& fp, const Eigen::MatrixXcd& constraints, const Eigen::VectorXcd& target,
                         int j) {
  const Eigen::Index n = target.size();
  Eigen::MatrixXcd cols(n, j + 1);
  for (int i = 0; i < j; ++i) cols.col(i) = constraints.row(i).transpose().conjugate();
  cols.col(j) = target.conjugate();
  KernelResult res;
  res.j = j;
  res.value = last_pivot(cols);
  res.truncationOrder = fp.order;
  const double head = target.squaredNorm();
  // relative tail of the target column plus rounding in the orthogonalisation
  res.tailBound = 4.0 * fp.relTail * head + 64.0 * kEps * head;
  return res;
}

}  // namespace

std::vector<double> basis_norms(const Domain& domain, int first, int last) {
  const BaseFamily f = base_family(domain);
  if (!f.annulus && first < 0) throw Error(ErrorKind::DomainError, "negative powers are not in A^2 of a disc");
  std::vector<double> out;
  for (int n = first; n <= last; ++n) out.push_back(std::exp(f.log_norm2(n)));
  return out;
}

OrthonormalFrame orthonormal_frame(const Domain& domain, Point at, int maxOrder, const KernelOptions& options) {
  check_order(maxOrder);
  check_point(domain, at);
  const FramePair fp = frames(domain, at, at, maxOrder, options);
  OrthonormalFrame frame;
  frame.derivativeMatrix = fp.at;
  frame.truncationOrder = fp.order;
  frame.relativeTail = fp.relTail;
  const BaseFamily f = base_family(domain.base());
  for (int n = f.first_index(fp.order); n <= fp.order; ++n) {
    frame.indices.push_back(n);
    frame.basisNorms.push_back(std::exp(f.log_norm2(n)));
  }
  return frame;
}

Eigen::MatrixXcd constraint_orthonormalization(const OrthonormalFrame& frame, int j) {
  if (j < 0 || j >= frame.derivativeMatrix.rows()) throw Error(ErrorKind::DomainError, "order outside the frame");
  const Eigen::MatrixXcd cols = frame.derivativeMatrix.topRows(j + 1).transpose().conjugate();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(cols);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(cols.rows(), cols.cols());
}

KernelResult kernel_j(const Domain& domain, Point w, int j, const KernelOptions& options) {
  check_order(j);
  if (domain.is<PolarComplement>()) {
    check_point(domain, w);
    return {j, 0.0, 0, 0.0};
  }
  check_point(domain, w);
  if (j == 0) {
    if (const auto* map = domain.get_if<MoebiusImage>()) {
      // transport rule K_D(w) = K_base(s) |s'(w)|^2
      const Point s = map->inverse(w);
      KernelResult base = kernel_j(*map->base, s, 0, options);
      const double scale = std::norm(map->inverse_derivative(w));
      base.value *= scale;
      base.tailBound *= scale;
      return base;
    }
  }
  const FramePair fp = frames(domain, w, w, j, options);
  return kernel_from(fp, fp.at, fp.at.row(j).transpose(), j);
}

KernelResult kernel_j_constrained(const Domain& domain, Point w, Point z, int j, const KernelOptions& options) {
  check_order(j);
  check_point(domain, w);
  check_point(domain, z);
  if (domain.is<PolarComplement>()) return {j, 0.0, 0, 0.0};
  const FramePair fp = frames(domain, w, z, j, options);
  return kernel_from(fp, fp.at, fp.other.row(j).transpose(), j);
}

LaplacianIdentity laplacian_identity_check(const Domain& domain, Point w, int j, double h) {
  check_order(j + 1);
  if (!(h > 0.0)) throw Error(ErrorKind::DomainError, "step must be positive");
  check_point(domain, w);
  const Point steps[4] = {{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}};
  for (Point s : steps)
    if (!contains(domain, w + s)) throw Error(ErrorKind::StencilOutsideDomain, "stencil leaves the domain");

  const double kj = kernel_j(domain, w, j).value;
  if (!(kj > 0.0)) throw Error(ErrorKind::DomainError, "kernel vanishes at the point");
  const double kNext = kernel_j(domain, w, j + 1).value;
  double sum = 0.0;
  for (Point s : steps) sum += std::log(kernel_j_constrained(domain, w, w + s, j).value);
  // (1/4) of the five-point Laplacian approximates d dbar
  LaplacianIdentity out;
  out.fdLaplacian = 0.25 * (sum - 4.0 * std::log(kj)) / (h * h);
  out.ratio = kNext / kj;
  out.relError = std::abs(out.fdLaplacian - out.ratio) / std::abs(out.ratio);
  return out;
}

}  // namespace suita
