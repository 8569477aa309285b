#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>

namespace orbitkit::detail {

/// n-point Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = b;
    jac(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  return {es.eigenvalues(), w};
}

}  // namespace orbitkit::detail
