#include "suita/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "suita/error.hpp"

namespace suita {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "Gauss rule needs at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  GaussRule rule;
  for (int k = 0; k < n; ++k) {
    rule.nodes.push_back(eig.eigenvalues()(k));
    const double v = eig.eigenvectors()(0, k);
    rule.weights.push_back(2.0 * v * v);
  }
  return rule;
}

}  // namespace suita
