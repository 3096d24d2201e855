#pragma once

#include <vector>

namespace suita {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre rule with n nodes (Golub-Welsch).
GaussRule gauss_legendre(int n);

}  // namespace suita
