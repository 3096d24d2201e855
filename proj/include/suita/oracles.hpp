#pragma once

#include <cstdint>
#include <vector>

#include "suita/geometry.hpp"

namespace suita {

struct McEstimate {
  double mean = 0.0;
  double stdError = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Counter-based generator: the stream for (seed, index) is fixed regardless
/// of which thread consumes it or in what order streams are visited.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

constexpr double kWosCaptureTolerance = 1e-6;
constexpr int kWosMaxSteps = 10000;

McEstimate wos_green(const Domain& domain, Point w, Point z, std::uint64_t walks, std::uint64_t seed);
McEstimate mc_area(const Domain& domain, Point w, double t, std::uint64_t samples, std::uint64_t seed);
double robin_extrapolate(const Domain& domain, Point w, const std::vector<double>& radii);
std::vector<Point> grid_min_gradient(const Domain& domain, Point w, int gridSize);

}  // namespace suita
