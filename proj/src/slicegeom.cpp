#include "orbitkit/slicegeom.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "orbit_sweep.hpp"
#include "quadrature.hpp"

namespace orbitkit {

namespace {

using cd = std::complex<double>;

double infinity() { return std::numeric_limits<double>::infinity(); }

}  // namespace

// ------------------------------------------------------------------- slices

Element SlodowySlice::point(const VectorXd& s) const {
  return Element(algebra(), triple.X.coords() + base.basis() * s);
}

VectorXd SlodowySlice::coordinates(const Element& x, double tol) const {
  if (x.algebra() != algebra()) throw Error(ErrorCode::MixedAlgebras, "point and slice live in different algebras");
  const VectorXd diff = x.coords() - triple.X.coords();
  const VectorXd s = base.basis().transpose() * diff;
  if ((base.basis() * s - diff).norm() > tol * std::max(1.0, diff.norm()))
    throw Error(ErrorCode::NotOnIntersection, "point is off the slice");
  return s;
}

namespace {

std::vector<double> base_spectrum(const MatrixXd& basis, const MatrixXd& ad_h) {
  if (basis.cols() == 0) return {};
  const MatrixXd restricted = basis.transpose() * ad_h * basis;
  Eigen::EigenSolver<MatrixXd> es(restricted);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SlodowySlice build_slice(const Sl2Triple& triple) {
  if (triple.X.norm() == 0.0) throw Error(ErrorCode::ZeroNilpositive, "use zero_slice for X = 0");
  const AlgebraPtr& g = triple.X.algebra();
  Subspace base = centralizer(std::vector<Element>{triple.Y});
  const MatrixXd ad_h = g->ad(triple.H.coords());
  const MatrixXd& b = base.basis();
  const double leak = (ad_h * b - b * (b.transpose() * ad_h * b)).norm();
  if (leak > 1e-8 * std::max(1.0, ad_h.norm()))
    throw Error(ErrorCode::SpectrumViolation, "Z_g(Y) is not ad H invariant");
  std::vector<double> spectrum = base_spectrum(b, ad_h);
  if (!spectrum.empty() && spectrum.back() > 1e-8)
    throw Error(ErrorCode::SpectrumViolation, "ad H has eigenvalue " + std::to_string(spectrum.back()) + " on Z_g(Y)");
  triple.check(1e-8);
  return SlodowySlice{triple, std::move(base), std::move(spectrum)};
}

SlodowySlice zero_slice(const AlgebraPtr& g) {
  const Element z = Element::zero(g);
  return SlodowySlice{Sl2Triple{z, z, z}, Subspace::whole(g), std::vector<double>(size_t(g->dim()), 0.0)};
}

SlodowySlice slice_at(const Element& x) {
  if (x.norm() == 0.0) return zero_slice(x.algebra());
  return build_slice(jacobson_morozov(x));
}

MatrixXcd gamma_scaling(double t, const Sl2Triple& triple) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonpositiveT, "scaling parameter must be positive");
  return MatrixXcd(-0.5 * std::log(t) * triple.H.matrix()).exp();
}

Element scale_slice_point(const SlodowySlice& slice, const Element& xi, double t) {
  const MatrixXcd gam = gamma_scaling(t, slice.triple);
  const Element& x = slice.offset();
  const MatrixXcd moved = gam * (xi - x).matrix() * gam.inverse();
  return x + t * Element::from_matrix(slice.algebra(), moved);
}

// --------------------------------------------------------- orbit membership

namespace {

struct SheetEntry {
  double imag;
  int pos;
  int neg;
};

// Signature of the invariant Hermitian form on each purely imaginary
// eigenspace; tells apart orbits that share a characteristic polynomial.
std::vector<SheetEntry> sheet_signature(const Element& x) {
  const MatrixLieAlgebra& g = *x.algebra();
  const MatrixXcd& m = x.matrix();
  const double scale = std::max(1e-300, m.norm());
  const double tol = 1e-6 * scale;
  Eigen::ComplexEigenSolver<MatrixXcd> es(m, false);
  std::vector<cd> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::vector<cd> clusters;
  for (const cd& v : ev) {
    if (std::abs(v.real()) > tol) continue;
    if (std::none_of(clusters.begin(), clusters.end(), [&](const cd& c) { return std::abs(c - v) < tol; }))
      clusters.push_back(v);
  }
  std::vector<SheetEntry> out;
  const Eigen::Index n = m.rows();
  for (const cd& c : clusters) {
    const MatrixXcd shifted = m - cd(0.0, c.imag()) * MatrixXcd::Identity(n, n);
    Eigen::JacobiSVD<MatrixXcd> svd(shifted, Eigen::ComputeFullV);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > tol) ++r;
    const MatrixXcd v = svd.matrixV().rightCols(n - r);
    const auto [pos, neg] = inertia(MatrixXcd(v.adjoint() * g.hermitian_form() * v));
    out.push_back({c.imag(), pos, neg});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.imag < b.imag; });
  return out;
}

bool invariants_match(const Element& a, const Element& b, double tol) {
  const VectorXd ia = orbit_invariants(a), ib = orbit_invariants(b);
  const double sigma = std::max(a.matrix().norm(), b.matrix().norm());
  const bool paired = a.algebra()->complex_entries();
  for (Eigen::Index i = 0; i < ia.size(); ++i) {
    const int degree = int(paired ? i / 2 : i) + 1;
    if (std::abs(ia(i) - ib(i)) > tol * (1.0 + std::pow(sigma, degree))) return false;
  }
  return true;
}

}  // namespace

bool same_orbit(const Element& a, const Element& b, double tol) {
  require_same_algebra(a, b);
  if (!invariants_match(a, b, tol)) return false;
  if (adjoint_orbit_dimension(a) != adjoint_orbit_dimension(b)) return false;
  const bool na = is_nilpotent(a), nb = is_nilpotent(b);
  if (na != nb) return false;
  if (na) {
    // Near the nilpotent cone the invariants are ill-conditioned; a point
    // whose Jordan data cannot be resolved is not certified to lie in O_b.
    try {
      return label_string(nilpotent_label(a)) == label_string(nilpotent_label(b));
    } catch (const Error&) {
      return false;
    }
  }
  if (a.algebra()->form_kind() == FormKind::None) return true;
  const auto sa = sheet_signature(a), sb = sheet_signature(b);
  if (sa.size() != sb.size()) return false;
  double radius = 0.0;
  for (const auto& e : sa) radius = std::max(radius, std::abs(e.imag));
  for (size_t i = 0; i < sa.size(); ++i)
    if (std::abs(sa[i].imag - sb[i].imag) > 1e-6 * (1.0 + radius) || sa[i].pos != sb[i].pos || sa[i].neg != sb[i].neg) return false;
  return true;
}

// ----------------------------------------------------- invariant equations

namespace {

// Power sums tr(x^j), j = 1..N, of x(s) = X + sum s_i B_i, scaled by
// sigma^-j, and their derivatives in s.
class InvariantSystem {
 public:
  InvariantSystem(const SlodowySlice& slice, const Element& nu)
      : slice_(slice), complex_(slice.algebra()->complex_entries()) {
    const MatrixLieAlgebra& g = *slice.algebra();
    x0_ = slice.offset().matrix();
    for (Eigen::Index i = 0; i < slice.dim(); ++i) dirs_.push_back(g.matrix(slice.base.basis().col(i)));
    n_ = g.matrix_size();
    sigma_ = 1.0 + std::max(nu.matrix().norm(), x0_.norm());
    target_ = power_sums(nu.matrix());
  }

  Eigen::Index unknowns() const { return Eigen::Index(dirs_.size()); }
  Eigen::Index equations() const { return complex_ ? 2 * n_ : n_; }

  MatrixXcd matrix(const VectorXd& s) const {
    MatrixXcd x = x0_;
    for (size_t i = 0; i < dirs_.size(); ++i) x += s(Eigen::Index(i)) * dirs_[i];
    return x;
  }

  VectorXd residual(const VectorXd& s) const { return to_real(power_sums(matrix(s)) - target_); }

  MatrixXd jacobian(const VectorXd& s) const {
    const MatrixXcd x = matrix(s);
    MatrixXd jac(equations(), unknowns());
    MatrixXcd pw = MatrixXcd::Identity(n_, n_);  // x^{j-1}
    for (int j = 1; j <= n_; ++j) {
      const double scale = j / std::pow(sigma_, j);
      for (Eigen::Index i = 0; i < unknowns(); ++i) {
        const cd v = scale * (pw * dirs_[size_t(i)]).trace();
        if (complex_) {
          jac(2 * (j - 1), i) = v.real();
          jac(2 * (j - 1) + 1, i) = v.imag();
        } else {
          jac(j - 1, i) = v.real();
        }
      }
      pw = pw * x;
    }
    return jac;
  }

 private:
  Eigen::VectorXcd power_sums(const MatrixXcd& x) const {
    Eigen::VectorXcd p(n_);
    MatrixXcd pw = x;
    for (int j = 1; j <= n_; ++j) {
      p(j - 1) = pw.trace() / std::pow(sigma_, j);
      pw = pw * x;
    }
    return p;
  }

  VectorXd to_real(const Eigen::VectorXcd& v) const {
    if (!complex_) return v.real();
    VectorXd out(2 * v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      out(2 * i) = v(i).real();
      out(2 * i + 1) = v(i).imag();
    }
    return out;
  }

  const SlodowySlice& slice_;
  bool complex_;
  MatrixXcd x0_;
  std::vector<MatrixXcd> dirs_;
  int n_ = 0;
  double sigma_ = 1.0;
  Eigen::VectorXcd target_;
};

constexpr double kAccept = 1e-10;

// Levenberg-Marquardt followed by minimum-norm Gauss-Newton polishing.
std::pair<VectorXd, double> solve_from(const InvariantSystem& sys, VectorXd s) {
  VectorXd r = sys.residual(s);
  double fr = r.norm();
  double lambda = 1e-3;
  for (int it = 0; it < 200 && fr > 1e-15; ++it) {
    const MatrixXd jac = sys.jacobian(s);
    const MatrixXd a = jac.transpose() * jac;
    const VectorXd grad = jac.transpose() * r;
    bool improved = false;
    while (lambda < 1e12) {
      MatrixXd damped = a;
      damped.diagonal().array() += lambda * (a.diagonal().array() + 1e-12);
      const VectorXd step = -damped.ldlt().solve(grad);
      const VectorXd trial = s + step;
      const VectorXd rt = sys.residual(trial);
      if (rt.allFinite() && rt.norm() < fr) {
        s = trial;
        r = rt;
        const bool stalled = step.norm() < 1e-15 * (1.0 + s.norm());
        fr = rt.norm();
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = !stalled;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) break;
  }
  for (int it = 0; it < 20 && fr > 1e-15; ++it) {
    const MatrixXd jac = sys.jacobian(s);
    const VectorXd step = -jac.completeOrthogonalDecomposition().solve(r);
    const VectorXd trial = s + step;
    const VectorXd rt = sys.residual(trial);
    if (!rt.allFinite() || rt.norm() >= fr) break;
    s = trial;
    r = rt;
    fr = rt.norm();
  }
  return {s, fr};
}

// Gauss-Newton projection of q onto the solution set, moving only along
// the given directions (all directions when empty).
std::optional<VectorXd> project(const InvariantSystem& sys, VectorXd q, const MatrixXd& normal = MatrixXd()) {
  for (int it = 0; it < 30; ++it) {
    const VectorXd r = sys.residual(q);
    if (r.norm() < 1e-13) return q;
    const MatrixXd jac = sys.jacobian(q);
    if (normal.cols() > 0) {
      q -= normal * (jac * normal).completeOrthogonalDecomposition().solve(r);
    } else {
      q -= jac.completeOrthogonalDecomposition().solve(r);
    }
    if (!q.allFinite()) return std::nullopt;
  }
  if (sys.residual(q).norm() < kAccept) return q;
  return std::nullopt;
}

// Tangent (first) and normal (second) bases of a d-dimensional solution
// set at s.
std::pair<MatrixXd, MatrixXd> tangent_normal(const InvariantSystem& sys, const VectorXd& s, int d) {
  const MatrixXd jac = sys.jacobian(s);
  Eigen::JacobiSVD<MatrixXd> svd(jac, Eigen::ComputeFullV);
  const Eigen::Index k = jac.cols();
  const auto& sv = svd.singularValues();
  if (k - d - 1 >= 0 && (k - d - 1 >= sv.size() || sv(k - d - 1) < 1e-10 * std::max(1e-300, sv(0))))
    throw Error(ErrorCode::TransversalityFailure, "invariant map loses rank on the intersection");
  return {svd.matrixV().rightCols(d), svd.matrixV().leftCols(k - d)};
}

std::vector<VectorXd> seed_points(Eigen::Index k, double scale, double box) {
  std::vector<VectorXd> dirs;
  for (Eigen::Index i = 0; i < k; ++i)
    for (double sg : {1.0, -1.0}) dirs.push_back(sg * VectorXd::Unit(k, i));
  if (k <= 6)
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = i + 1; j < k; ++j)
        for (double a : {1.0, -1.0})
          for (double b : {1.0, -1.0}) dirs.push_back((a * VectorXd::Unit(k, i) + b * VectorXd::Unit(k, j)) / std::sqrt(2.0));
  std::vector<VectorXd> seeds{VectorXd::Zero(k)};
  for (int m = 0; m <= 10; ++m) {
    const double r = std::min(box, scale * std::pow(10.0, -2.0 + 0.5 * m));
    for (const auto& d : dirs) seeds.push_back(r * d);
  }
  return seeds;
}

struct Exploration {
  std::vector<VectorXd> points;
  bool escaped = false;
  VectorXd escape;
};

// Covers the solution manifold by points spaced about step(p) apart,
// stopping as soon as one leaves the box.
template <typename Step>
Exploration explore(const InvariantSystem& sys, const std::vector<VectorXd>& seeds, int d, Step step,
                    const SolverOptions& opt) {
  Exploration ex;
  std::deque<size_t> queue;
  auto near = [&](const VectorXd& q, double h) {
    for (const auto& p : ex.points)
      if ((p - q).norm() < 0.6 * h) return true;
    return false;
  };
  for (const auto& s : seeds) {
    if (near(s, step(s))) continue;
    ex.points.push_back(s);
    queue.push_back(ex.points.size() - 1);
  }
  const int directions = d == 1 ? 2 : 6;
  while (!queue.empty()) {
    const VectorXd p = ex.points[queue.front()];
    queue.pop_front();
    const auto [tangent, normal] = tangent_normal(sys, p, d);
    const double h = step(p);
    for (int k = 0; k < directions; ++k) {
      VectorXd dir;
      if (d == 1) {
        dir = (k == 0 ? 1.0 : -1.0) * tangent.col(0);
      } else {
        const double a = 2.0 * std::numbers::pi * k / directions;
        dir = std::cos(a) * tangent.col(0) + std::sin(a) * tangent.col(1);
      }
      const auto q = project(sys, p + h * dir, normal);
      if (!q || (*q - p).norm() > 2.0 * h) continue;
      if (q->norm() > opt.box) {
        ex.escaped = true;
        ex.escape = *q / q->norm();
        ex.points.push_back(*q);
        return ex;
      }
      if (near(*q, step(*q))) continue;
      ex.points.push_back(*q);
      queue.push_back(ex.points.size() - 1);
      if (int(ex.points.size()) > opt.max_points)
        throw Error(ErrorCode::NoConvergence, "intersection exploration exceeded " + std::to_string(opt.max_points) + " points");
    }
  }
  return ex;
}

std::vector<std::pair<double, double>> escape_weights(const SlodowySlice& slice, const VectorXd& dir) {
  const MatrixXd& b = slice.base.basis();
  const MatrixXd restricted = b.transpose() * slice.algebra()->ad(slice.triple.H.coords()) * b;
  Eigen::EigenSolver<MatrixXd> es(restricted);
  const Eigen::VectorXcd c = es.eigenvectors().colPivHouseholderQr().solve(dir.cast<cd>());
  std::vector<std::pair<double, double>> out;
  double total = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double lam = std::round(es.eigenvalues()(i).real() * 1e6) / 1e6;
    const double w = std::norm(c(i)) * es.eigenvectors().col(i).squaredNorm();
    total += w;
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return std::abs(p.first - lam) < 1e-6; });
    if (it == out.end())
      out.emplace_back(lam, w);
    else
      it->second += w;
  }
  for (auto& p : out) p.second /= std::max(total, 1e-300);
  std::sort(out.begin(), out.end());
  return out;
}

double max_spread(const std::vector<VectorXd>& pts) {
  double d = 0.0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

}  // namespace

// ----------------------------------------------------------- intersection

namespace {

double rao_density_unchecked(const Element& point, const SlodowySlice& slice);

}  // namespace

SliceIntersection intersect_orbit_slice(const Element& nu, const SlodowySlice& slice, const SolverOptions& opt) {
  require_same_algebra(nu, slice.offset());
  SliceIntersection out(slice, nu);
  const int dim_nu = adjoint_orbit_dimension(nu);
  const int dim_x = adjoint_orbit_dimension(slice.offset());
  out.dimension = dim_nu - dim_x;
  if (out.dimension < 0) return out;
  if (out.dimension > 2)
    throw Error(ErrorCode::DimensionTooHigh, "intersection of dimension " + std::to_string(out.dimension));

  const InvariantSystem sys(slice, nu);
  const double scale = 1.0 + std::max(nu.matrix().norm(), slice.offset().matrix().norm());

  // Converged seeds lying in O_nu itself.
  std::vector<std::pair<VectorXd, double>> found;
  for (const VectorXd& s0 : seed_points(slice.dim(), scale, opt.box)) {
    auto [s, res] = solve_from(sys, s0);
    if (!(res < kAccept) || s.norm() > opt.box) continue;
    if (!same_orbit(slice.point(s), nu, opt.tol)) continue;
    found.emplace_back(std::move(s), res);
  }
  if (found.empty()) return out;

  if (out.dimension == 0) {
    // Keep the best-converged representative of each cluster.
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second < b.second;
      return a.first.norm() < b.first.norm();
    });
    const double cluster = 1e-5 * scale;
    for (const auto& [s, res] : found) {
      if (std::any_of(out.coords.begin(), out.coords.end(), [&](const VectorXd& c) { return (c - s).norm() < cluster; }))
        continue;
      out.coords.push_back(s);
    }
    for (const auto& s : out.coords) {
      out.samples.push_back(slice.point(s));
      out.point_masses.push_back(rao_density_unchecked(out.samples.back(), slice));
      out.explored_radius = std::max(out.explored_radius, s.norm());
    }
    return out;
  }

  std::vector<VectorXd> seeds;
  for (const auto& f : found) seeds.push_back(f.first);
  double floor = 0.0;
  for (const auto& s : seeds) floor = std::max(floor, s.norm());
  floor = std::max(0.05 * std::max(max_spread(seeds), floor), 1e-12);
  const Exploration ex = explore(sys, seeds, out.dimension, [&](const VectorXd& p) { return std::max(floor, 0.2 * p.norm()); }, opt);
  out.coords = ex.points;
  for (const auto& s : out.coords) {
    out.samples.push_back(slice.point(s));
    out.explored_radius = std::max(out.explored_radius, s.norm());
  }
  out.compact = !ex.escaped;
  if (ex.escaped) {
    out.escape_direction = ex.escape;
    out.escape_weights = escape_weights(slice, ex.escape);
  }
  return out;
}

// ---------------------------------------------------------------- densities

namespace {

// Canonical top form on a tangent frame at lam (no orthonormalization).
double frame_density(const Element& lam, const MatrixXd& frame) {
  const Eigen::Index n = frame.cols();
  if (n == 0) return 1.0;
  if (n % 2) throw Error(ErrorCode::DegenerateForm, "odd-dimensional tangent frame");
  const MatrixLieAlgebra& g = *lam.algebra();
  const MatrixXd ad = g.ad(lam.coords());
  // [A_i, lam] = v_i  <=>  ad(lam) A_i = -v_i.
  const MatrixXd a = -ad.completeOrthogonalDecomposition().solve(frame);
  if ((ad * a + frame).norm() > 1e-7 * std::max(1.0, frame.norm()))
    throw Error(ErrorCode::DegenerateForm, "frame is not tangent to the orbit");
  MatrixXd omega(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    omega(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      omega(i, j) = g.pair(lam.coords(), g.bracket(a.col(i), a.col(j)));
      omega(j, i) = -omega(i, j);
    }
  }
  const double det = std::abs(omega.determinant());
  if (det < 1e-12) throw Error(ErrorCode::DegenerateForm, "symplectic form is degenerate on the frame");
  return std::sqrt(det) / std::pow(2.0 * std::numbers::pi, double(n / 2));
}

double rao_density_unchecked(const Element& point, const SlodowySlice& slice) {
  const MatrixLieAlgebra& g = *point.algebra();
  const MatrixXd t = column_space(g.ad(point.coords()));
  const MatrixXd& z = slice.base.basis();
  const int dim_x = adjoint_orbit_dimension(slice.offset());
  const Eigen::Index d = t.cols() - dim_x;
  const MatrixXd k = intersect_spans(t, z);
  if (k.cols() != d) throw Error(ErrorCode::TransversalityFailure, "orbit is not transverse to the slice here");
  const MatrixXd u = column_space(MatrixXd(t - k * (k.transpose() * t)));
  if (u.cols() != dim_x) throw Error(ErrorCode::TransversalityFailure, "tangent complement has the wrong rank");
  MatrixXd frame(t.rows(), t.cols());
  frame << k, u;
  const double top = frame_density(point, frame);
  if (slice.is_zero_slice()) return top;

  // Project U onto [g, X] along Z_g(Y).
  const MatrixXd c = column_space(g.ad(slice.offset().coords()));
  MatrixXd split(c.rows(), c.cols() + z.cols());
  split << c, z;
  const MatrixXd pu = c * split.fullPivLu().solve(u).topRows(c.cols());
  if (numerical_rank(pu) != dim_x) throw Error(ErrorCode::TransversalityFailure, "projection to T O_X is singular");
  return top / frame_density(slice.offset(), pu);
}

}  // namespace

double canonical_density(const Element& nu, const MatrixXd& tangent) {
  const MatrixXd q = column_space(tangent);
  if (q.cols() != tangent.cols()) throw Error(ErrorCode::DegenerateForm, "tangent frame is rank deficient");
  return frame_density(nu, q);
}

double rao_density(const Element& point, const Element& nu, const SlodowySlice& slice) {
  slice.coordinates(point);
  if (!same_orbit(point, nu)) throw Error(ErrorCode::NotOnIntersection, "point is not in the orbit of nu");
  return rao_density_unchecked(point, slice);
}

// ------------------------------------------------------------------ volumes

double symplectic_volume(const Element& nu) {
  const MatrixLieAlgebra& g = *nu.algebra();
  const bool compact = g.form_kind() == FormKind::Hermitian && (g.spec().p == 0 || g.spec().q == 0);
  if (!compact) throw Error(ErrorCode::NoncompactOrbit, "orbits of " + g.name() + " are not compact");
  const detail::OrbitSweep sweep = detail::orbit_sweep(nu);
  if (sweep.kind == detail::OrbitSweep::Kind::Point) return 1.0;
  const auto [x, w] = detail::gauss_legendre(48);
  const double half = 0.5 * (sweep.s_hi - sweep.s_lo), mid = 0.5 * (sweep.s_hi + sweep.s_lo);
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) total += w(i) * half * sweep.density(mid + half * x(i));
  return 2.0 * std::numbers::pi * total;
}

double quadrature_volume(const SliceIntersection& inter, const SolverOptions& opt) {
  if (inter.empty()) return 0.0;
  if (!inter.compact) return infinity();
  const int d = inter.dimension;
  if (d == 0) {
    double v = 0.0;
    for (double m : inter.point_masses) v += m;
    return v;
  }
  if (d > 2) throw Error(ErrorCode::DimensionTooHigh, "quadrature supports d <= 2");

  const InvariantSystem sys(inter.slice, inter.nu);
  const double h = max_spread(inter.coords) / 10.0;
  if (!(h > 0.0)) throw Error(ErrorCode::NoConvergence, "intersection samples do not spread");
  const Exploration cover = explore(sys, inter.coords, d, [&](const VectorXd&) { return h; }, opt);
  if (cover.escaped) return infinity();
  const std::vector<VectorXd>& centers = cover.points;
  const double rho = 2.0 * h;
  auto bump = [&](double r) { return r >= rho ? 0.0 : std::exp(-1.0 / (1.0 - (r / rho) * (r / rho))); };

  constexpr int kGrid = 21;
  const double du = 2.0 * rho / (kGrid - 1);
  double total = 0.0;
  for (const VectorXd& c : centers) {
    const auto [tan_c, normal_c] = tangent_normal(sys, c, d);
    const int ny = d == 2 ? kGrid : 1;
    for (int ix = 0; ix < kGrid; ++ix)
      for (int iy = 0; iy < ny; ++iy) {
        VectorXd u(d);
        u(0) = -rho + ix * du;
        if (d == 2) u(1) = -rho + iy * du;
        if (u.norm() >= rho) continue;
        const auto phi = project(sys, c + tan_c * u, normal_c);
        if (!phi) throw Error(ErrorCode::NoConvergence, "chart projection failed");
        const double own = bump((*phi - c).norm());
        if (own == 0.0) continue;
        double sum = 0.0;
        for (const VectorXd& o : centers) sum += bump((*phi - o).norm());
        const MatrixXd k = tangent_normal(sys, *phi, d).first;
        const MatrixXd jac = k * (tan_c.transpose() * k).inverse();
        const double area = std::sqrt((jac.transpose() * jac).determinant());
        const double dens = rao_density_unchecked(inter.slice.point(*phi), inter.slice);
        total += own / sum * dens * area * std::pow(du, d);
      }
  }
  return total;
}

double slice_volume(const SliceIntersection& inter) {
  if (inter.empty()) return 0.0;
  if (!inter.compact) return infinity();
  if (inter.dimension == 0) {
    double v = 0.0;
    for (double m : inter.point_masses) v += m;
    return v;
  }
  if (inter.dimension > 2) throw Error(ErrorCode::DimensionTooHigh, "volume supports d <= 2");
  const MatrixLieAlgebra& g = *inter.slice.algebra();
  const bool compact_algebra = g.form_kind() == FormKind::Hermitian && (g.spec().p == 0 || g.spec().q == 0);
  if (inter.slice.is_zero_slice() && compact_algebra && g.matrix_size() == 2) return symplectic_volume(inter.nu);
  return quadrature_volume(inter);
}

// ------------------------------------------------------------------ catalog

NilpotentEntry make_catalog_entry(std::string name, const Element& x) {
  if (!is_nilpotent(x)) throw Error(ErrorCode::NotNilpotent, "catalog entry '" + name + "' is not nilpotent");
  NilpotentEntry e{.name = std::move(name), .X = x, .slice = slice_at(x)};
  e.dimension = adjoint_orbit_dimension(x);
  e.centralizer_compact = compact_mod_center_numeric(reductive_centralizer_numeric(x));
  return e;
}

std::vector<NilpotentEntry> nilpotent_catalog(const AlgebraPtr& g) {
  std::vector<NilpotentEntry> out;
  for (const auto& label : nilpotent_orbit_labels(g)) out.push_back(make_catalog_entry(label_string(label), representative(g, label)));
  return out;
}

WaveFrontCycle wavefront_cycle(const std::vector<Element>& nus, const std::vector<NilpotentEntry>& catalog,
                               const SolverOptions& opt) {
  if (nus.empty()) throw Error(ErrorCode::NonRegularInput, "no regular orbits given");
  for (const auto& nu : nus) {
    if (!is_regular(nu)) throw Error(ErrorCode::NonRegularInput, "input element is not regular");
    if (!catalog.empty()) require_same_algebra(nu, catalog.front().X);
  }
  WaveFrontCycle cycle;
  for (const auto& entry : catalog) {
    OrbitEvidence ev;
    ev.name = entry.name;
    ev.dimension = entry.dimension;
    for (const auto& nu : nus) {
      const SliceIntersection inter = intersect_orbit_slice(nu, entry.slice, opt);
      ev.nonempty.push_back(!inter.empty());
      ev.compact.push_back(inter.compact);
      ev.volumes.push_back(slice_volume(inter));
    }
    const bool all_compact = std::all_of(ev.compact.begin(), ev.compact.end(), [](bool b) { return b; });
    const bool any_nonempty = std::any_of(ev.nonempty.begin(), ev.nonempty.end(), [](bool b) { return b; });
    ev.kept = all_compact && any_nonempty;
    if (ev.kept) {
      double coeff = 0.0;
      for (size_t i = 0; i < nus.size(); ++i)
        if (ev.nonempty[i]) coeff += ev.volumes[i];
      cycle.terms.push_back({entry.name, entry.dimension, coeff, entry.centralizer_compact});
    }
    cycle.evidence.push_back(std::move(ev));
  }
  for (const auto& t : cycle.terms)
    if (t.dimension != cycle.terms.front().dimension)
      throw Error(ErrorCode::MixedDimensions, "kept orbits '" + cycle.terms.front().name + "' and '" + t.name +
                                                  "' have different dimensions");
  return cycle;
}

// ---------------------------------------------------------------- center test

Subspace lemma41_check(const SlodowySlice& slice, const Subspace& l, const std::vector<Element>& samples) {
  if (samples.empty()) throw Error(ErrorCode::EmptySamples, "at least one sample is required");
  const AlgebraPtr& g = slice.algebra();
  const MatrixXd& lb = l.basis();
  if (lb.cols() == 0) return Subspace::zero(g);
  std::vector<MatrixXd> blocks;
  for (Eigen::Index j = 0; j < lb.cols(); ++j) blocks.push_back(g->ad(lb.col(j)) * lb);
  for (const auto& xi : samples) {
    require_same_algebra(xi, slice.offset());
    blocks.push_back(g->ad(xi.coords()) * lb);
  }
  MatrixXd stacked(Eigen::Index(blocks.size()) * g->dim(), lb.cols());
  for (size_t i = 0; i < blocks.size(); ++i) stacked.middleRows(Eigen::Index(i) * g->dim(), g->dim()) = blocks[i];
  const MatrixXd ker = null_space(stacked);
  if (ker.cols() == 0) return Subspace::zero(g);
  return Subspace(g, lb * ker);
}

std::vector<Element> slice_regular_samples(const SlodowySlice& slice, int count, double radius) {
  static constexpr double kWeyl[] = {1.4142135623730951, 1.7320508075688772, 2.2360679774997898, 2.6457513110645907,
                                     3.3166247903554,    3.605551275463989,  4.123105625617661,  4.358898943540674,
                                     4.795831523312719,  5.385164807134504,  5.5677643628300215, 6.082762530298219};
  const Eigen::Index k = slice.dim();
  std::vector<Element> out;
  for (int i = 1; int(out.size()) < count; ++i) {
    if (i > 50 * count) throw Error(ErrorCode::NoConvergence, "could not find regular slice points");
    VectorXd s(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const double a = kWeyl[j % 12] * (1.0 + double(j / 12));
      const double frac = i * a - std::floor(i * a);
      s(j) = radius * (2.0 * frac - 1.0);
    }
    const Element p = slice.point(s);
    if (is_regular(p)) out.push_back(p);
  }
  return out;
}

}  // namespace orbitkit
