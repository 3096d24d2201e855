#pragma once

#include <vector>

#include <Eigen/Dense>

#include "suita/geometry.hpp"

namespace suita {

struct KernelResult {
  int j = 0;
  double value = 0.0;
  int truncationOrder = 0;
  double tailBound = 0.0;
};

/// Derivatives at one point of an orthonormal basis of A^2.
/// Row i holds the i-th derivatives, column k the basis element with
/// monomial exponent indices[k].
struct OrthonormalFrame {
  Eigen::MatrixXcd derivativeMatrix;
  std::vector<int> indices;
  std::vector<double> basisNorms;  // squared L^2 norms of the raw monomials
  int truncationOrder = 0;
  double relativeTail = 0.0;
};

struct KernelOptions {
  /// Lower bound on the truncation order; the adaptive choice may exceed it.
  int minOrder = 0;
  double relativeTail = 1e-14;
};

struct LaplacianIdentity {
  double fdLaplacian = 0.0;
  double ratio = 0.0;
  double relError = 0.0;
};

constexpr int kMaxDerivativeOrder = 12;
constexpr int kMaxTruncationOrder = 10000;

/// Squared norms ||u^n||^2 for n in [first, last]; u = z - center on a disc.
std::vector<double> basis_norms(const Domain& domain, int first, int last);

OrthonormalFrame orthonormal_frame(const Domain& domain, Point at, int maxOrder, const KernelOptions& options = {});

/// Columns v_0..v_j orthonormalised in order (thin Q of the QR factorisation).
Eigen::MatrixXcd constraint_orthonormalization(const OrthonormalFrame& frame, int j);

KernelResult kernel_j(const Domain& domain, Point w, int j, const KernelOptions& options = {});

/// sup |f^{(j)}(z)|^2 over the unit ball of A^2 with f^{(i)}(w) = 0 for i < j.
/// Coincides with kernel_j when z == w.
KernelResult kernel_j_constrained(const Domain& domain, Point w, Point z, int j, const KernelOptions& options = {});

LaplacianIdentity laplacian_identity_check(const Domain& domain, Point w, int j, double h);

}  // namespace suita
