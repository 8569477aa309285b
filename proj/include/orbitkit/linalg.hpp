#pragma once

// Small dense helpers shared by every module. All of them take Eigen
// expressions and work for real and complex scalars alike.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

namespace orbitkit {

/// Relative singular-value cutoff used for every rank decision.
inline constexpr double kRankCutoff = 1e-9;
/// Singular values below this are zero even when the matrix itself is tiny.
inline constexpr double kAbsoluteFloor = 1e-14;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

template <typename Derived>
double rank_threshold(const Eigen::MatrixBase<Derived>& singular_values, double rel) {
  const double top = singular_values.size() > 0 ? double(singular_values(0)) : 0.0;
  return std::max(rel * top, kAbsoluteFloor);
}

}  // namespace detail

template <typename Derived>
Eigen::Index numerical_rank(const Eigen::MatrixBase<Derived>& m, double rel = kRankCutoff) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat<typename Derived::Scalar>> svd(m.eval());
  const auto& s = svd.singularValues();
  const double cut = detail::rank_threshold(s, rel);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

/// Orthonormal basis (columns) of the kernel of m.
template <typename Derived>
Mat<typename Derived::Scalar> null_space(const Eigen::MatrixBase<Derived>& m,
                                         double rel = kRankCutoff) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Mat<Scalar>::Identity(n, n);
  if (n == 0) return Mat<Scalar>(0, 0);
  Eigen::JacobiSVD<Mat<Scalar>> svd(m.eval(), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = detail::rank_threshold(s, rel);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return svd.matrixV().rightCols(n - r);
}

/// Orthonormal basis (columns) of the range of m.
template <typename Derived>
Mat<typename Derived::Scalar> column_space(const Eigen::MatrixBase<Derived>& m,
                                           double rel = kRankCutoff) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() == 0 || m.cols() == 0) return Mat<Scalar>(m.rows(), 0);
  Eigen::JacobiSVD<Mat<Scalar>> svd(m.eval(), Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double cut = detail::rank_threshold(s, rel);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of span(a) ∩ span(b); a and b need orthonormal columns.
template <typename DA, typename DB>
Mat<typename DA::Scalar> intersect_spans(const Eigen::MatrixBase<DA>& a,
                                         const Eigen::MatrixBase<DB>& b,
                                         double rel = kRankCutoff) {
  using Scalar = typename DA::Scalar;
  if (a.cols() == 0 || b.cols() == 0) return Mat<Scalar>(a.rows(), 0);
  Mat<Scalar> stacked(a.rows(), a.cols() + b.cols());
  stacked << a, -b;
  Mat<Scalar> ker = null_space(stacked, rel);
  if (ker.cols() == 0) return Mat<Scalar>(a.rows(), 0);
  Mat<Scalar> vecs = a * ker.topRows(a.cols());
  return column_space(vecs, rel);
}

/// Coefficients c_1..c_n of det(zI - m) = z^n + c_1 z^{n-1} + ... + c_n
/// (Faddeev-LeVerrier; fine for the small matrices used here).
template <typename Derived>
Vec<typename Derived::Scalar> characteristic_coefficients(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  Vec<Scalar> c(n);
  const Mat<Scalar> a = m;
  Mat<Scalar> mk = Mat<Scalar>::Zero(n, n);
  Scalar prev(1.0);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = a * mk;
    mk.diagonal().array() += prev;
    c(k - 1) = -(a * mk).trace() / Scalar(double(k));
    prev = c(k - 1);
  }
  return c;
}

/// Power of a square matrix by repeated multiplication.
template <typename Derived>
Mat<typename Derived::Scalar> matrix_power(const Eigen::MatrixBase<Derived>& m, int k) {
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> out = Mat<Scalar>::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

/// (positive, negative) inertia of a Hermitian/symmetric matrix.
template <typename Derived>
std::pair<int, int> inertia(const Eigen::MatrixBase<Derived>& h, double rel = 1e-8) {
  using Scalar = typename Derived::Scalar;
  if (h.rows() == 0) return {0, 0};
  Mat<Scalar> sym = (h + h.adjoint()) / Scalar(2.0);
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  const double cut = std::max(rel * top, 1e-12);
  int pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cut) ++pos;
    else if (ev(i) < -cut) ++neg;
  }
  return {pos, neg};
}

}  // namespace orbitkit
