#include "suita/sublevel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "suita/error.hpp"
#include "suita/parallel.hpp"
#include "suita/quadrature.hpp"

namespace suita {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kValueFloor = -700.0;  // stands in for -inf at the pole
constexpr double kNodeFloor = -50.0;
constexpr int kLineSamples = 3;
constexpr int kMaxDepth = 5;

const GaussRule& rule_high() {
  static const GaussRule r = gauss_legendre(4);
  return r;
}
const GaussRule& rule_low() {
  static const GaussRule r = gauss_legendre(3);
  return r;
}

// Illinois iteration on a sign-changing bracket of a smooth f. A secant point
// that collapses onto an end means the root sits within rounding of that end.
template <class F>
double refine_root(F&& f, double a, double b, double fa, double fb) {
  int side = 0;
  for (int it = 0; it < 100; ++it) {
    if (std::abs(b - a) <= 4.0 * kEps * std::max(1.0, std::abs(a))) break;
    const double c = (fa * b - fb * a) / (fa - fb);
    if (!(c > std::min(a, b) && c < std::max(a, b))) return std::abs(fa) < std::abs(fb) ? a : b;
    const double fc = f(c);
    if (fc == 0.0) return c;
    if ((fc < 0.0) == (fb < 0.0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
  }
  const double c = (fa * b - fb * a) / (fa - fb);
  return c > std::min(a, b) && c < std::max(a, b) ? c : 0.5 * (a + b);
}

// Sign changes of f on [lo, hi] located from equispaced samples.
template <class F>
void sampled_roots(F&& f, double lo, double hi, std::vector<double>& out) {
  double prevX = lo, prevF = f(lo);
  for (int k = 1; k < kLineSamples; ++k) {
    const double x = lo + (hi - lo) * k / (kLineSamples - 1);
    const double fx = f(x);
    if ((prevF < 0.0) != (fx < 0.0)) out.push_back(refine_root(f, prevX, x, prevF, fx));
    prevX = x;
    prevF = fx;
  }
}

// Length of {v in [lo, hi] : f(v) < 0}.
template <class F>
double measure_below(F&& f, double lo, double hi) {
  double total = 0.0;
  double prevX = lo, prevF = f(lo);
  for (int k = 1; k < kLineSamples; ++k) {
    const double x = lo + (hi - lo) * k / (kLineSamples - 1);
    const double fx = f(x);
    const bool a = prevF < 0.0, b = fx < 0.0;
    if (a && b) {
      total += x - prevX;
    } else if (a != b) {
      const double r = refine_root(f, prevX, x, prevF, fx);
      total += a ? r - prevX : x - r;
    }
    prevX = x;
    prevF = fx;
  }
  return total;
}

}  // namespace

SublevelGrid::SublevelGrid(const Domain& domain, Point w, int resolution) : g_(domain, w), n_(resolution) {
  if (resolution < 8) throw Error(ErrorKind::DomainError, "grid resolution must be at least 8");
  box_ = bounding_box(domain);
  hx_ = box_.width() / n_;
  hy_ = box_.height() / n_;
  rho_ = 0.5 * std::hypot(hx_, hy_);
  const std::size_t cells = static_cast<std::size_t>(n_) * n_;
  kind_.assign(cells, CellKind::Exterior);
  centerValue_.assign(cells, 0.0);
  slope_.assign(cells, 0.0);
  curvature_.assign(cells, 0.0);
  nodeValue_.assign(static_cast<std::size_t>(n_ + 1) * (n_ + 1), 0.0);
  insideArea_.assign(cells, 0.0);
  boundaryCurve_.assign(cells, 0.0);
  circles_ = boundary_circles(domain);

  parallel_for(static_cast<std::size_t>(n_), [&](std::size_t j) {
    for (int i = 0; i < n_; ++i) {
      const std::size_t idx = j * n_ + i;
      const Point c(box_.xmin + (i + 0.5) * hx_, box_.ymin + (j + 0.5) * hy_);
      const bool inside = contains(domain, c);
      if (std::abs(c - w) < 3.0 * rho_) {
        kind_[idx] = CellKind::PoleNear;
        centerValue_[idx] = std::max(ghat(c), kNodeFloor);
        continue;
      }
      if (distance_to_boundary(domain, c) < rho_) {
        kind_[idx] = CellKind::Boundary;
        centerValue_[idx] = inside ? g_.value(c) : 0.0;
        const HolomorphicDerivatives d = g_.derivatives(nearest_boundary_point(domain, c));
        slope_[idx] = std::abs(d.first);
        boundaryCurve_[idx] = std::abs(d.second);
        const double x0 = box_.xmin + i * hx_, y0 = box_.ymin + static_cast<double>(j) * hy_;
        double unused = 0.0;
        insideArea_[idx] = cell_area(x0, x0 + hx_, y0, y0 + hy_, 0.0, false, 0, unused);
        continue;
      }
      if (!inside) continue;
      kind_[idx] = CellKind::Interior;
      const HolomorphicDerivatives d = g_.derivatives(c);
      centerValue_[idx] = g_.value(c);
      slope_[idx] = std::abs(d.first);
      curvature_[idx] = std::abs(d.second);
    }
    for (int i = 0; i <= n_; ++i) {
      const Point p(box_.xmin + i * hx_, box_.ymin + static_cast<double>(j) * hy_);
      nodeValue_[j * (n_ + 1) + i] = std::max(ghat(p), kNodeFloor);
    }
  });
  for (int i = 0; i <= n_; ++i) {
    const Point p(box_.xmin + i * hx_, box_.ymax);
    nodeValue_[static_cast<std::size_t>(n_) * (n_ + 1) + i] = std::max(ghat(p), kNodeFloor);
  }
  if (!domain.is_simply_connected()) critical_ = suita::critical_points(domain, w);
}

double SublevelGrid::ghat(Point z) const {
  if (z == g_.pole()) return kValueFloor;
  if (!contains(g_.domain(), z)) return 0.0;
  return std::max(g_.value(z), kValueFloor);
}

double SublevelGrid::level_fn(Point z, double t) const {
  if (z == g_.pole()) return kValueFloor - t;
  return std::max(g_.value(z), kValueFloor) - t;
}

void SublevelGrid::circle_cuts(bool vertical, double fixed, double lo, double hi, std::vector<double>& out) const {
  for (const Circle& c : circles_) {
    const double across = fixed - (vertical ? c.center.real() : c.center.imag());
    const double disc = c.radius * c.radius - across * across;
    if (!(disc > 0.0)) continue;
    const double mid = vertical ? c.center.imag() : c.center.real();
    const double s = std::sqrt(disc);
    for (double v : {mid - s, mid + s})
      if (v > lo && v < hi) out.push_back(v);
  }
}

// Measure of {v in [lo, hi] : point inside the domain and G < t} on an axis
// parallel line; with level == false only the domain is measured.
double SublevelGrid::line_measure(bool vertical, double fixed, double lo, double hi, double t, bool level) const {
  auto at = [&](double v) { return vertical ? Point(fixed, v) : Point(v, fixed); };
  std::vector<double> cuts{lo};
  circle_cuts(vertical, fixed, lo, hi, cuts);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    if (!(b > a) || !contains(g_.domain(), at(0.5 * (a + b)))) continue;
    total += level ? measure_below([&](double v) { return level_fn(at(v), t); }, a, b) : b - a;
  }
  return total;
}

// Points where the region boundary crosses the line: circle crossings and level crossings.
void SublevelGrid::line_splits(bool vertical, double fixed, double lo, double hi, double t, bool level,
                               std::vector<double>& out) const {
  auto at = [&](double v) { return vertical ? Point(fixed, v) : Point(v, fixed); };
  std::vector<double> cuts{lo};
  circle_cuts(vertical, fixed, lo, hi, cuts);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  out.insert(out.end(), cuts.begin() + 1, cuts.end() - 1);
  if (!level) return;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    if (!(b > a) || !contains(g_.domain(), at(0.5 * (a + b)))) continue;
    sampled_roots([&](double v) { return level_fn(at(v), t); }, a, b, out);
  }
}

double SublevelGrid::cell_area(double x0, double x1, double y0, double y1, double t, bool level, int depth,
                               double& err) const {
  const Point c(0.5 * (x0 + x1), 0.5 * (y0 + y1));
  bool vertical = true;
  if (c != g_.pole()) {
    const Point probe = contains(g_.domain(), c) ? c : nearest_boundary_point(g_.domain(), c);
    const Point grad = std::conj(g_.derivatives(probe).first);
    vertical = std::abs(grad.imag()) >= std::abs(grad.real());
  }
  // u runs across the lines, v along them; lines follow the gradient
  const double u0 = vertical ? x0 : y0, u1 = vertical ? x1 : y1;
  const double v0 = vertical ? y0 : x0, v1 = vertical ? y1 : x1;

  // the line measure has kinks where the region boundary meets the cell edges
  std::vector<double> splits{u0};
  line_splits(!vertical, v0, u0, u1, t, level, splits);
  line_splits(!vertical, v1, u0, u1, t, level, splits);
  splits.push_back(u1);
  std::sort(splits.begin(), splits.end());

  auto line = [&](double u) { return line_measure(vertical, u, v0, v1, t, level); };
  double high = 0.0, low = 0.0;
  const GaussRule& hi = rule_high();
  const GaussRule& lo = rule_low();
  for (std::size_t k = 0; k + 1 < splits.size(); ++k) {
    const double a = splits[k], b = splits[k + 1];
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t q = 0; q < hi.nodes.size(); ++q) high += hi.weights[q] * half * line(mid + half * hi.nodes[q]);
    for (std::size_t q = 0; q < lo.nodes.size(); ++q) low += lo.weights[q] * half * line(mid + half * lo.nodes[q]);
  }
  const double cellArea = (x1 - x0) * (y1 - y0);
  const double e = std::abs(high - low);
  if (e > 1e-9 * cellArea && depth < kMaxDepth) {
    const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
    return cell_area(x0, xm, y0, ym, t, level, depth + 1, err) + cell_area(xm, x1, y0, ym, t, level, depth + 1, err) +
           cell_area(x0, xm, ym, y1, t, level, depth + 1, err) + cell_area(xm, x1, ym, y1, t, level, depth + 1, err);
  }
  err += e;
  return high;
}

SublevelArea SublevelGrid::area(double t) const {
  if (!(t < 0.0)) throw Error(ErrorKind::LevelAbovePeak, "sublevel sets need t < 0");
  std::int64_t full = 0;
  double partial = 0.0, err = 0.0;
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      const std::size_t idx = static_cast<std::size_t>(j) * n_ + i;
      switch (kind_[idx]) {
        case CellKind::Exterior:
          continue;
        case CellKind::Boundary:
          // G > -2 rho |grad G| on cells touching the boundary
          if (t < -8.0 * rho_ * slope_[idx]) continue;
          // collar {G >= t} far thinner than the cell while G stays monotone across it
          if (-t < 1e-12 * rho_ * slope_[idx] && 4.0 * rho_ * boundaryCurve_[idx] < slope_[idx]) {
            partial += insideArea_[idx];
            continue;
          }
          break;
        case CellKind::PoleNear:
          break;
        case CellKind::Interior: {
          const double diff = centerValue_[idx] - t;
          const double bound = 2.0 * (slope_[idx] * rho_ + 0.5 * curvature_[idx] * rho_ * rho_);
          if (diff > bound) continue;
          if (-diff > bound) {
            ++full;
            continue;
          }
          break;
        }
      }
      const double x0 = box_.xmin + i * hx_, y0 = box_.ymin + j * hy_;
      partial += cell_area(x0, x0 + hx_, y0, y0 + hy_, t, true, 0, err);
    }
  }
  const double area = static_cast<double>(full) * hx_ * hy_ + partial;
  return {area, err + 64.0 * kEps * area};
}

Point SublevelGrid::project(Point p, double t) const {
  for (int it = 0; it < 4; ++it) {
    if (p == g_.pole() || !contains(g_.domain(), p)) return p;
    const Point grad = std::conj(g_.derivatives(p).first);
    const double n2 = std::norm(grad);
    if (!(n2 > 0.0)) return p;
    const Point next = p - (g_.value(p) - t) * grad / n2;
    if (std::abs(next - p) > rho_ || !contains(g_.domain(), next)) return p;
    p = next;
  }
  return p;
}

std::vector<SublevelGrid::Segment> SublevelGrid::march(double t) const {
  std::vector<Segment> out;
  const std::int64_t stride = n_ + 1;
  auto node = [&](int i, int j) { return nodeValue_[static_cast<std::size_t>(j) * stride + i]; };
  auto pos = [&](int i, int j) { return Point(box_.xmin + i * hx_, box_.ymin + j * hy_); };
  auto hEdge = [&](int i, int j) { return 2 * (static_cast<std::int64_t>(j) * stride + i); };
  auto vEdge = [&](int i, int j) { return 2 * (static_cast<std::int64_t>(j) * stride + i) + 1; };
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      const double v[4] = {node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)};
      const Point p[4] = {pos(i, j), pos(i + 1, j), pos(i + 1, j + 1), pos(i, j + 1)};
      const bool in[4] = {v[0] < t, v[1] < t, v[2] < t, v[3] < t};
      if (in[0] == in[1] && in[1] == in[2] && in[2] == in[3]) continue;
      // edges: 0 bottom (0-1), 1 right (1-2), 2 top (2-3), 3 left (3-0)
      const std::int64_t ids[4] = {hEdge(i, j), vEdge(i + 1, j), hEdge(i, j + 1), vEdge(i, j)};
      auto cross = [&](int e) {
        const int a = e, b = (e + 1) % 4;
        const bool inA = contains(g_.domain(), p[a]), inB = contains(g_.domain(), p[b]);
        if (inA && inB) {
          const double frac = (t - v[a]) / (v[b] - v[a]);
          return p[a] + frac * (p[b] - p[a]);
        }
        // the edge leaves the domain: clip it and solve G = t on the inside part
        const bool horizontal = e % 2 == 0;
        const Point from = inA ? p[a] : p[b], to = inA ? p[b] : p[a];
        const double s0 = horizontal ? from.real() : from.imag(), s1 = horizontal ? to.real() : to.imag();
        std::vector<double> cuts;
        circle_cuts(!horizontal, horizontal ? from.imag() : from.real(), std::min(s0, s1), std::max(s0, s1), cuts);
        double end = s1;
        for (double c : cuts)
          if (std::abs(c - s0) < std::abs(end - s0)) end = c;
        auto at = [&](double s) { return horizontal ? Point(s, from.imag()) : Point(from.real(), s); };
        auto fn = [&](double s) { return level_fn(at(s), t); };
        const double f0 = fn(s0), f1 = fn(end);
        if ((f0 < 0.0) == (f1 < 0.0)) return at(end);
        return at(refine_root(fn, s0, end, f0, f1));
      };
      std::vector<int> crossed;
      for (int e = 0; e < 4; ++e)
        if (in[e] != in[(e + 1) % 4]) crossed.push_back(e);
      auto emit = [&](int e1, int e2) { out.push_back({cross(e1), cross(e2), ids[e1], ids[e2]}); };
      if (crossed.size() == 2) {
        emit(crossed[0], crossed[1]);
      } else {
        // saddle cell: the center value decides which corners connect
        const bool centerIn = centerValue_[static_cast<std::size_t>(j) * n_ + i] < t;
        if (centerIn == in[0]) {
          emit(0, 1);
          emit(2, 3);
        } else {
          emit(3, 0);
          emit(1, 2);
        }
      }
    }
  }
  return out;
}

double SublevelGrid::critical_band(const CriticalPoint& cp) const {
  const int i = std::clamp(static_cast<int>(std::floor((cp.location.real() - box_.xmin) / hx_)), 0, n_ - 1);
  const int j = std::clamp(static_cast<int>(std::floor((cp.location.imag() - box_.ymin) / hy_)), 0, n_ - 1);
  double maxGrad = 0.0;
  for (int dj = 0; dj <= 1; ++dj)
    for (int di = 0; di <= 1; ++di) {
      const Point corner(box_.xmin + (i + di) * hx_, box_.ymin + (j + dj) * hy_);
      if (contains(g_.domain(), corner) && corner != g_.pole())
        maxGrad = std::max(maxGrad, std::abs(g_.derivatives(corner).first));
    }
  return 10.0 * (2.0 * rho_) * maxGrad;
}

double SublevelGrid::coarea(double t) const {
  if (!(t < 0.0)) throw Error(ErrorKind::LevelAbovePeak, "level sets need t < 0");
  for (const auto& cp : critical_)
    if (std::abs(t - cp.level) < critical_band(cp))
      throw Error(ErrorKind::CriticalLevel, "level within the critical band of " + format_point(cp.location));
  auto weight = [&](Point z) { return 1.0 / std::abs(g_.derivatives(z).first); };
  double total = 0.0;
  for (const Segment& s : march(t)) {
    const Point a = project(s.a, t), b = project(s.b, t);
    const Point m = project(0.5 * (a + b), t);
    // arc of the circle through a, m, b
    const double c1 = std::abs(a - m), c2 = std::abs(m - b), c3 = std::abs(a - b);
    const double twiceArea = std::abs(std::imag(std::conj(m - a) * (b - a)));
    double len = c1 + c2;
    if (twiceArea > 0.0) {
      const double r = c1 * c2 * c3 / (2.0 * twiceArea);
      if (r > 0.5 * c1 && r > 0.5 * c2) len = 2.0 * r * (std::asin(c1 / (2.0 * r)) + std::asin(c2 / (2.0 * r)));
    }
    total += len * (weight(a) + 4.0 * weight(m) + weight(b)) / 6.0;
  }
  return total;
}

std::vector<std::vector<Point>> SublevelGrid::level_curves(double t) const {
  const std::vector<Segment> segs = march(t);
  std::unordered_map<std::int64_t, std::vector<std::size_t>> byEdge;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    byEdge[segs[k].edgeA].push_back(k);
    byEdge[segs[k].edgeB].push_back(k);
  }
  std::vector<bool> used(segs.size(), false);
  std::vector<std::vector<Point>> curves;
  auto next = [&](std::int64_t edge) -> std::ptrdiff_t {
    for (std::size_t k : byEdge[edge])
      if (!used[k]) return static_cast<std::ptrdiff_t>(k);
    return -1;
  };
  for (std::size_t start = 0; start < segs.size(); ++start) {
    if (used[start]) continue;
    used[start] = true;
    std::deque<Point> chain{segs[start].a, segs[start].b};
    for (int dir = 0; dir < 2; ++dir) {
      std::int64_t edge = dir == 0 ? segs[start].edgeB : segs[start].edgeA;
      for (std::ptrdiff_t k; (k = next(edge)) >= 0;) {
        used[k] = true;
        const Segment& s = segs[k];
        const bool forward = s.edgeA == edge;
        const Point p = forward ? s.b : s.a;
        edge = forward ? s.edgeB : s.edgeA;
        if (dir == 0)
          chain.push_back(p);
        else
          chain.push_front(p);
      }
    }
    std::vector<Point> curve;
    for (Point p : chain) curve.push_back(project(p, t));
    curves.push_back(std::move(curve));
  }
  return curves;
}

SublevelArea sublevel_area(const Domain& domain, Point w, double t, int resolution) {
  if (!(t < 0.0)) throw Error(ErrorKind::LevelAbovePeak, "sublevel sets need t < 0");
  return SublevelGrid(domain, w, resolution).area(t);
}

double coarea_derivative(const Domain& domain, Point w, double t, int resolution) {
  if (!(t < 0.0)) throw Error(ErrorKind::LevelAbovePeak, "level sets need t < 0");
  return SublevelGrid(domain, w, resolution).coarea(t);
}

void refresh_profile(SublevelProfile& p) {
  const std::size_t n = p.t.size();
  const double dt = n > 1 ? p.t[1] - p.t[0] : 1.0;
  auto second = [&](const std::vector<double>& logs) {
    std::vector<double> sd(n, kNaN);
    for (std::size_t i = 1; i + 1 < n; ++i) sd[i] = (logs[i + 1] - 2.0 * logs[i] + logs[i - 1]) / (dt * dt);
    return sd;
  };
  p.logLambda.resize(n);
  p.e2tLambda.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.logLambda[i] = std::log(p.lambda[i]);
    p.e2tLambda[i] = std::exp(-2.0 * p.t[i]) * p.lambda[i];
  }
  p.secondDiff = second(p.logLambda);
  p.secondDiffHalf.clear();
  if (p.lambdaHalf.size() == n) {
    std::vector<double> logs(n);
    for (std::size_t i = 0; i < n; ++i) logs[i] = std::log(p.lambdaHalf[i]);
    p.secondDiffHalf = second(logs);
  }
}

SublevelProfile profile_scan(const SublevelGrid& grid, const SublevelGrid* half, double tMin, double tMax, int steps) {
  if (!(tMin < tMax) || !(tMax < 0.0)) throw Error(ErrorKind::DomainError, "need tMin < tMax < 0");
  if (steps < 8) throw Error(ErrorKind::DomainError, "need at least 8 samples");
  SublevelProfile p;
  p.resolution = grid.resolution();
  const std::size_t n = static_cast<std::size_t>(steps);
  p.t.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.t[i] = tMin + (tMax - tMin) * static_cast<double>(i) / (steps - 1);
  p.t.back() = tMax;
  p.lambda.assign(n, 0.0);
  p.errEst.assign(n, 0.0);
  p.gammaPrime.assign(n, kNaN);
  std::vector<char> critical(n, 0);
  if (half) p.lambdaHalf.assign(n, 0.0);

  parallel_for(n, [&](std::size_t i) {
    const SublevelArea a = grid.area(p.t[i]);
    p.lambda[i] = a.area;
    p.errEst[i] = a.errorEstimate;
    try {
      p.gammaPrime[i] = grid.coarea(p.t[i]);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CriticalLevel) throw;
      critical[i] = 1;
    }
    if (half) p.lambdaHalf[i] = half->area(p.t[i]).area;
  });
  p.criticalLevel.assign(critical.begin(), critical.end());
  refresh_profile(p);
  return p;
}

SublevelProfile profile_scan(const Domain& domain, Point w, double tMin, double tMax, int steps, int resolution,
                             bool withHalfResolution) {
  if (!(tMin < tMax) || !(tMax < 0.0)) throw Error(ErrorKind::DomainError, "need tMin < tMax < 0");
  if (steps < 8) throw Error(ErrorKind::DomainError, "need at least 8 samples");
  const SublevelGrid grid(domain, w, resolution);
  if (!withHalfResolution) return profile_scan(grid, nullptr, tMin, tMax, steps);
  const SublevelGrid half(domain, w, std::max(8, resolution / 2));
  return profile_scan(grid, &half, tMin, tMax, steps);
}

ConvexityReport convexity_report(const SublevelProfile& profile, double t0, double halfWidth) {
  ConvexityReport r;
  r.criticalLevel = t0;
  const std::size_t n = profile.t.size();
  if (n < 3) throw Error(ErrorKind::WindowTooNarrow, "profile too short");
  r.windowLo = std::max(profile.t.front(), t0 - halfWidth);
  r.windowHi = std::min(profile.t.back(), t0 + halfWidth);
  const double dt = profile.t[1] - profile.t[0];
  const bool haveHalf = profile.secondDiffHalf.size() == n;

  double rounding = 0.0, refinement = 0.0;
  int count = 0;
  r.minSecondDiff = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (profile.t[i] < r.windowLo || profile.t[i] > r.windowHi) continue;
    const double sd = profile.secondDiff[i];
    if (!std::isfinite(sd)) continue;
    ++count;
    if (sd < r.minSecondDiff) {
      r.minSecondDiff = sd;
      r.argminT = profile.t[i];
    }
    if (haveHalf) refinement = std::max(refinement, std::abs(sd - profile.secondDiffHalf[i]));
    for (std::size_t k = i - 1; k <= i + 1; ++k)
      rounding = std::max(rounding, profile.errEst[k] / profile.lambda[k] + 64.0 * kEps);
  }
  if (count < 8) throw Error(ErrorKind::WindowTooNarrow, "fewer than 8 samples inside the window");
  // each log lambda is uncertain by about err/lambda; the stencil sums four of them
  r.noiseFloor = refinement + 4.0 * rounding / (dt * dt);
  r.verdict = r.minSecondDiff < -r.noiseFloor ? ConvexityVerdict::NonConvexDetected
                                              : ConvexityVerdict::ConvexWithinTolerance;
  return r;
}

MonotonicityResult monotonicity_check(const SublevelProfile& profile, std::optional<double> tolerance) {
  // the lower bound 1/(e^{-2t} lambda) must not increase with t
  MonotonicityResult r;
  const std::size_t n = profile.t.size();
  r.maxIncrease = n < 2 ? 0.0 : -std::numeric_limits<double>::infinity();
  double derived = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double b0 = 1.0 / profile.e2tLambda[i], b1 = 1.0 / profile.e2tLambda[i + 1];
    r.maxIncrease = std::max(r.maxIncrease, b1 - b0);
    const double e = b0 * profile.errEst[i] / profile.lambda[i] + b1 * profile.errEst[i + 1] / profile.lambda[i + 1];
    derived = std::max(derived, e + 64.0 * kEps * b0);
  }
  r.tolerance = tolerance.value_or(derived);
  r.pass = r.maxIncrease <= r.tolerance;
  return r;
}

}  // namespace suita
