#include "orbit_sweep.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <numbers>

namespace orbitkit::detail {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

MatrixXcd m2(cd a, cd b, cd c, cd d) {
  MatrixXcd m(2, 2);
  m << a, b, c, d;
  return m;
}

double pair(const MatrixXcd& a, const MatrixXcd& b) { return (a * b).trace().real(); }

}  // namespace

MatrixXcd OrbitSweep::point(double s, double theta) const {
  if (kind == Kind::Point) return nu0;
  const MatrixXcd gs = (s * B).exp();
  const MatrixXcd gt = (theta * K).exp();
  const MatrixXcd inner = gs * nu0 * gs.inverse();
  return gt * inner * gt.inverse();
}

double OrbitSweep::density(double s) const {
  if (kind == Kind::Point) return 0.0;
  const MatrixXcd gs = (s * B).exp();
  const MatrixXcd xi = gs * nu0 * gs.inverse();
  return std::abs(pair(xi, K * B - B * K)) / (2.0 * std::numbers::pi);
}

OrbitSweep orbit_sweep(const Element& nu) {
  const MatrixLieAlgebra& g = *nu.algebra();
  OrbitSweep w;
  w.algebra = nu.algebra();
  const MatrixXcd& m = nu.matrix();
  const double scale = std::max(1.0, m.norm());
  const double inf = std::numeric_limits<double>::infinity();

  const bool compact2 = g.matrix_size() == 2 && g.form_kind() == FormKind::Hermitian &&
                        (g.spec().p == 0 || g.spec().q == 0);
  if (compact2) {
    // Anti-Hermitian: eigenvalues i l1, i l2 with l1 >= l2.
    Eigen::ComplexEigenSolver<MatrixXcd> es(m);
    double l1 = es.eigenvalues()(0).imag(), l2 = es.eigenvalues()(1).imag();
    if (l1 < l2) std::swap(l1, l2);
    w.nu0 = m2(I * l1, 0.0, 0.0, I * l2);
    w.K = m2(I * 0.5, 0.0, 0.0, -I * 0.5);
    w.B = m2(0.0, 0.5, -0.5, 0.0);
    w.kind = (l1 - l2) <= 1e-14 * scale ? OrbitSweep::Kind::Point : OrbitSweep::Kind::Sphere;
    if (w.kind == OrbitSweep::Kind::Point) w.nu0 = m;
    w.s_lo = 0.0;
    w.s_hi = std::numbers::pi;
    return w;
  }

  if (g.family() == Family::SlR && g.matrix_size() == 2 && !g.complex_entries()) {
    // x h + y (e + f) + z (e - f); det = z^2 - x^2 - y^2.
    const double z = 0.5 * (m(0, 1) - m(1, 0)).real();
    const double det = m.determinant().real();
    const MatrixXcd e = m2(0.0, 1.0, 0.0, 0.0), f = m2(0.0, 0.0, 1.0, 0.0), h = m2(1.0, 0.0, 0.0, -1.0);
    w.K = 0.5 * (e - f);
    const double tol = 1e-12 * scale * scale;
    if (m.norm() == 0.0) {
      w.kind = OrbitSweep::Kind::Point;
      w.nu0 = m;
    } else if (det > tol) {
      w.kind = OrbitSweep::Kind::EllipticSheet;
      w.nu0 = (z > 0 ? 1.0 : -1.0) * std::sqrt(det) * (e - f);
      w.B = 0.5 * h;
      w.s_lo = 0.0;
      w.s_hi = inf;
    } else if (det < -tol) {
      w.kind = OrbitSweep::Kind::Hyperboloid;
      w.nu0 = std::sqrt(-det) * h;
      w.B = 0.5 * (e + f);
      w.s_lo = -inf;
      w.s_hi = inf;
    } else {
      w.kind = OrbitSweep::Kind::NilpotentCone;
      w.nu0 = (z > 0 ? 1.0 : -1.0) * e;
      w.B = 0.5 * h;
      w.s_lo = -inf;
      w.s_hi = inf;
    }
    return w;
  }
  throw Error(ErrorCode::UnsupportedOrbit, "no global orbit coordinates for " + g.name());
}

}  // namespace orbitkit::detail
