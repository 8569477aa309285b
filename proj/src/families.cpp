// Fixed bases for each supported family. Coordinates in tests and output
// files refer to these orderings, so changing one is a format change.

#include "families.hpp"

#include <complex>

namespace orbitkit::detail {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

MatrixXcd unit(int n, int i, int j) {
  MatrixXcd m = MatrixXcd::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

// gl(n): E_ij row-major.
std::vector<MatrixXcd> gl_basis(int n) {
  std::vector<MatrixXcd> b;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b.push_back(unit(n, i, j));
  return b;
}

// sl(n): upper E_ij, then E_ii - E_{i+1,i+1}, then lower E_ji mirroring the
// upper order. For n = 2 this is (e, h, f).
std::vector<MatrixXcd> sl_basis(int n) {
  std::vector<MatrixXcd> b;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.push_back(unit(n, i, j));
  for (int i = 0; i + 1 < n; ++i) b.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.push_back(unit(n, j, i));
  return b;
}

// u(p,q) / su(p,q) for J = diag(I_p, -I_q): diagonal part first, then each
// pair j < k contributes two matrices.
std::vector<MatrixXcd> u_basis(int p, int q, bool traceless) {
  const int n = p + q;
  std::vector<MatrixXcd> b;
  if (traceless) {
    for (int j = 0; j + 1 < n; ++j) b.push_back(I * (unit(n, j, j) - unit(n, j + 1, j + 1)));
  } else {
    for (int j = 0; j < n; ++j) b.push_back(I * unit(n, j, j));
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const bool same_block = (j < p) == (k < p);
      if (same_block) {
        b.push_back(unit(n, j, k) - unit(n, k, j));
        b.push_back(I * (unit(n, j, k) + unit(n, k, j)));
      } else {
        b.push_back(unit(n, j, k) + unit(n, k, j));
        b.push_back(I * (unit(n, j, k) - unit(n, k, j)));
      }
    }
  }
  return b;
}

// sp(2n) for W = [[0, I], [-I, 0]]: X = [[A, B], [C, -A^T]], B and C
// symmetric. Order: A entries row-major, then B (i <= j), then C (i <= j).
std::vector<MatrixXcd> sp_basis(int n) {
  const int m = 2 * n;
  std::vector<MatrixXcd> b;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b.push_back(unit(m, i, j) - unit(m, n + j, n + i));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      b.push_back(i == j ? unit(m, i, n + i) : MatrixXcd(unit(m, i, n + j) + unit(m, j, n + i)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      b.push_back(i == j ? unit(m, n + i, i) : MatrixXcd(unit(m, n + i, j) + unit(m, n + j, i)));
  return b;
}

}  // namespace

MatrixXcd symplectic_form(int n) {
  MatrixXcd w = MatrixXcd::Zero(2 * n, 2 * n);
  w.topRightCorner(n, n).setIdentity();
  w.bottomLeftCorner(n, n) = -MatrixXcd::Identity(n, n);
  return w;
}

MatrixXcd hermitian_signature_form(int p, int q) {
  MatrixXcd j = MatrixXcd::Zero(p + q, p + q);
  for (int i = 0; i < p; ++i) j(i, i) = 1.0;
  for (int i = p; i < p + q; ++i) j(i, i) = -1.0;
  return j;
}

FamilyData build_family(const AlgebraSpec& spec) {
  FamilyData d;
  switch (spec.family) {
    case Family::GlR:
      d.size = spec.n;
      d.basis = gl_basis(spec.n);
      break;
    case Family::SlR:
      d.size = spec.n;
      d.basis = sl_basis(spec.n);
      if (spec.n == 2) {
        d.form_kind = FormKind::Symplectic;
        d.form = symplectic_form(1);
      }
      break;
    case Family::UPQ:
    case Family::SuPQ:
      d.size = spec.p + spec.q;
      d.complex = true;
      d.basis = u_basis(spec.p, spec.q, spec.family == Family::SuPQ);
      d.form_kind = FormKind::Hermitian;
      d.form = hermitian_signature_form(spec.p, spec.q);
      break;
    case Family::SpR:
      d.size = 2 * spec.n;
      d.basis = sp_basis(spec.n);
      d.form_kind = FormKind::Symplectic;
      d.form = symplectic_form(spec.n);
      break;
    case Family::SpC: {
      d.size = 2 * spec.n;
      d.complex = true;
      auto real = sp_basis(spec.n);
      d.basis = real;
      for (const auto& m : real) d.basis.push_back(I * m);
      break;
    }
  }
  return d;
}

}  // namespace orbitkit::detail
