#include "suita/oracles.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "suita/error.hpp"
#include "suita/green.hpp"
#include "suita/parallel.hpp"

namespace suita {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunks = 64;

struct Moments {
  double sum = 0.0;
  double sumSq = 0.0;
  std::uint64_t count = 0;
  std::uint64_t lost = 0;
};

// Distance and projection specialised per domain so the walk loop stays cheap.
struct BoundaryOps {
  std::function<double(Point)> distance;
  std::function<Point(Point)> project;
};

BoundaryOps make_boundary_ops(const Domain& domain) {
  if (const auto* d = domain.get_if<Disc>()) {
    const Point c = d->center;
    const double r = d->radius;
    return {[c, r](Point x) { return r - std::abs(x - c); },
            [c, r](Point x) { return c + r * (x - c) / std::abs(x - c); }};
  }
  if (const auto* a = domain.get_if<Annulus>()) {
    const double q = a->q;
    return {[q](Point x) {
              const double m = std::abs(x);
              return std::min(1.0 - m, m - q);
            },
            [q](Point x) {
              const double m = std::abs(x);
              return (1.0 - m < m - q ? 1.0 : q) * x / m;
            }};
  }
  if (domain.is<MoebiusImage>()) {
    const auto circles = boundary_circles(domain);
    return {[circles](Point x) {
              double best = std::numeric_limits<double>::infinity();
              for (const auto& c : circles) best = std::min(best, std::abs(std::abs(x - c.center) - c.radius));
              return best;
            },
            [circles](Point x) {
              Point out = x;
              double best = std::numeric_limits<double>::infinity();
              for (const auto& c : circles) {
                const Point q = c.center + c.radius * (x - c.center) / std::abs(x - c.center);
                if (std::abs(q - x) < best) {
                  best = std::abs(q - x);
                  out = q;
                }
              }
              return out;
            }};
  }
  if (domain.is<Polygon>()) {
    return {[domain](Point x) { return distance_to_boundary(domain, x); },
            [domain](Point x) { return nearest_boundary_point(domain, x); }};
  }
  throw Error(ErrorKind::UnsupportedDomain, "walk-on-spheres needs a bounded domain");
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t index)
    : key_(splitmix64(seed ^ splitmix64(index ^ 0xd1b54a32d192ed03ULL))) {}

std::uint64_t CounterRng::next_u64() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

McEstimate wos_green(const Domain& domain, Point w, Point z, std::uint64_t walks, std::uint64_t seed) {
  if (!contains(domain, w) || !contains(domain, z))
    throw Error(ErrorKind::PointOutsideDomain, "wos_green needs interior points");
  if (z == w) throw Error(ErrorKind::CoincidentPoints, "z equals the pole");
  if (walks < 2) throw Error(ErrorKind::DomainError, "need at least two walks");
  const BoundaryOps ops = make_boundary_ops(domain);

  std::vector<Moments> chunks(kChunks);
  parallel_for(kChunks, [&](std::size_t c) {
    Moments m;
    const std::uint64_t begin = walks * c / kChunks, end = walks * (c + 1) / kChunks;
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, i);
      Point x = z;
      bool captured = false;
      for (int step = 0; step < kWosMaxSteps; ++step) {
        const double d = ops.distance(x);
        if (d < kWosCaptureTolerance) {
          captured = true;
          break;
        }
        x += d * std::polar(1.0, 2.0 * kPi * rng.uniform());
      }
      if (!captured) {
        ++m.lost;
        continue;
      }
      const double score = std::log(std::abs(ops.project(x) - w));
      m.sum += score;
      m.sumSq += score * score;
      ++m.count;
    }
    chunks[c] = m;
  });

  Moments total;
  for (const auto& m : chunks) {
    total.sum += m.sum;
    total.sumSq += m.sumSq;
    total.count += m.count;
    total.lost += m.lost;
  }
  if (total.lost > walks / 1000) throw Error(ErrorKind::NonConvergence, "capture rate below 99.9%");
  const double n = static_cast<double>(total.count);
  const double mean = total.sum / n;
  const double var = std::max(0.0, (total.sumSq - n * mean * mean) / (n - 1.0));
  // G(z,w) = log|z-w| - E[log|X_exit - w|]
  return {std::log(std::abs(z - w)) - mean, std::sqrt(var / n), total.count, seed};
}

McEstimate mc_area(const Domain& domain, Point w, double t, std::uint64_t samples, std::uint64_t seed) {
  if (!(t < 0.0)) throw Error(ErrorKind::LevelAbovePeak, "sublevel requires t < 0");
  if (samples < 1) throw Error(ErrorKind::DomainError, "need at least one sample");
  const GreenFunction g(domain, w);
  const Box box = bounding_box(domain);

  std::vector<std::uint64_t> hits(kChunks, 0);
  parallel_for(kChunks, [&](std::size_t c) {
    std::uint64_t h = 0;
    const std::uint64_t begin = samples * c / kChunks, end = samples * (c + 1) / kChunks;
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, i);
      const Point p(box.xmin + box.width() * rng.uniform(), box.ymin + box.height() * rng.uniform());
      if (p != w && contains(domain, p) && g.value(p) < t) ++h;
    }
    hits[c] = h;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  const double area = box.area();
  return {area * p, area * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples, seed};
}

double robin_extrapolate(const Domain& domain, Point w, const std::vector<double>& radii) {
  const GreenFunction g(domain, w);
  if (radii.size() < 4) throw Error(ErrorKind::DomainError, "robin_extrapolate needs at least 4 radii");
  const double delta = boundary_distance(domain, w).delta;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || radii[i] > 0.5 * delta * (1.0 + 1e-12))
      throw Error(ErrorKind::DomainError, "radii must lie in (0, delta/2]");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw Error(ErrorKind::DomainError, "radii must be decreasing");
  }

  constexpr int kAngles = 64;
  const std::size_t n = radii.size();
  std::vector<double> x(n);
  std::vector<std::vector<double>> table(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double mean = 0.0;
    for (int k = 0; k < kAngles; ++k) mean += g.value(w + radii[i] * std::polar(1.0, 2.0 * kPi * k / kAngles));
    table[i][0] = mean / kAngles - std::log(radii[i]);
    x[i] = radii[i] * radii[i];
  }
  // Richardson (Neville) extrapolation in r^2 to r = 0
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 1; k <= i; ++k)
      table[i][k] = (x[i - k] * table[i][k - 1] - x[i] * table[i - 1][k - 1]) / (x[i - k] - x[i]);
  if (std::abs(table[n - 1][n - 1] - table[n - 2][n - 2]) > 1e-4)
    throw Error(ErrorKind::ExtrapolationUnstable, "successive extrapolants disagree");
  return std::exp(table[n - 1][n - 1]);
}

std::vector<Point> grid_min_gradient(const Domain& domain, Point w, int gridSize) {
  const GreenFunction g(domain, w);
  const Box box = bounding_box(domain);
  const int n = gridSize;
  const double hx = box.width() / n, hy = box.height() / n;
  const double h = std::max(hx, hy);
  auto node = [&](int i, int j) { return Point(box.xmin + (i + 0.5) * hx, box.ymin + (j + 0.5) * hy); };

  std::vector<double> mag(static_cast<std::size_t>(n) * n, -1.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
    for (int i = 0; i < n; ++i) {
      const Point p = node(i, static_cast<int>(j));
      if (contains(domain, p) && p != w) mag[j * n + i] = std::abs(g.derivatives(p).first);
    }
  });

  std::vector<Point> seeds;
  for (int j = 1; j + 1 < n; ++j) {
    for (int i = 1; i + 1 < n; ++i) {
      const double m = mag[static_cast<std::size_t>(j) * n + i];
      if (m < 0.0) continue;
      const Point p = node(i, j);
      if (std::abs(p - w) < 10.0 * h) continue;
      bool isMin = true;
      for (int dj = -1; dj <= 1 && isMin; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (!di && !dj) continue;
          const double nb = mag[static_cast<std::size_t>(j + dj) * n + (i + di)];
          if (nb < 0.0 || nb < m) {
            isMin = false;
            break;
          }
        }
      if (!isMin) continue;
      // keep only minima whose linearised zero lies within reach of the cell
      const Point g1 = g.derivatives(p).first;
      const Point g2 = (g.derivatives(p + hx).first - g.derivatives(p - hx).first) / (2.0 * hx);
      if (std::abs(g2) > 0.0 && std::abs(g1 / g2) <= 1.5 * h) seeds.push_back(p);
    }
  }
  return seeds;
}

}  // namespace suita
