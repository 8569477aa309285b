#include "orbitkit/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "orbit_sweep.hpp"
#include "quadrature.hpp"

namespace orbitkit {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Target and hard limit for the truncation majorant, relative to the
// running value.
constexpr double kTailTarget = 1e-10;
constexpr double kTailLimit = 1e-6;
constexpr double kPanel = 0.25;
constexpr double kMaxS = 60.0;

}  // namespace

// ----------------------------------------------------------- test functions

TestFunction::TestFunction(Kind k, Element c, double w) : kind(k), center(std::move(c)), width(w) {
  if (!(w > 0.0)) throw Error(ErrorCode::InvalidSpec, "test function width must be positive");
}

double TestFunction::operator()(const VectorXd& x) const {
  const double r2 = (x - center.coords()).squaredNorm() / (width * width);
  if (kind == Kind::Gaussian) return std::exp(-0.5 * r2);
  return r2 >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - r2));
}

std::string TestFunction::to_string() const {
  std::ostringstream os;
  os << std::setprecision(6) << (kind == Kind::Gaussian ? "gaussian" : "bump") << "(c=[";
  for (Eigen::Index i = 0; i < center.coords().size(); ++i) os << (i ? "," : "") << center.coords()(i);
  os << "],w=" << width << ")";
  return os.str();
}

// -------------------------------------------------------- orbit quadrature

namespace {

// Quadrature over xi(s, theta) = Ad(exp theta K) xi_s. The theta rotation
// acts on coordinates as exp(theta M) with M^3 = -M.
class OrbitQuadrature {
 public:
  explicit OrbitQuadrature(const Element& nu) : sweep_(detail::orbit_sweep(nu)), g_(*nu.algebra()) {
    if (sweep_.kind == detail::OrbitSweep::Kind::Point) return;
    m_ = g_.ad(g_.coords(sweep_.K));
    m2_ = m_ * m_;
    if ((m2_ * m_ + m_).norm() > 1e-10 * std::max(1.0, m_.norm()))
      throw Error(ErrorCode::UnsupportedOrbit, "rotation generator does not have period 2 pi");
    // Lower bound on coordinate norms from Frobenius norms.
    MatrixXd vec(2 * g_.matrix_size() * g_.matrix_size(), g_.dim());
    for (Eigen::Index i = 0; i < g_.dim(); ++i) {
      const MatrixXcd& b = g_.basis()[size_t(i)];
      for (Eigen::Index j = 0; j < b.size(); ++j) {
        vec(2 * j, i) = b.data()[j].real();
        vec(2 * j + 1, i) = b.data()[j].imag();
      }
    }
    lift_ = Eigen::JacobiSVD<MatrixXd>(vec).singularValues()(0);
  }

  const detail::OrbitSweep& sweep() const { return sweep_; }

  VectorXd slice_coords(double s) const { return g_.coords(sweep_.point(s, 0.0)); }
  double frobenius(double s) const { return sweep_.point(s, 0.0).norm(); }
  double lift() const { return lift_; }

  VectorXd rotate(const VectorXd& x, double theta) const {
    return x + std::sin(theta) * (m_ * x) + (1.0 - std::cos(theta)) * (m2_ * x);
  }

  // Trapezoid in theta, doubling until two levels agree.
  template <typename F>
  auto theta_integral(const VectorXd& x, F&& fn) const {
    using T = decltype(fn(x));
    int n = 32;
    T sum = T(0);
    for (int j = 0; j < n; ++j) sum += fn(rotate(x, kTwoPi * j / n));
    T prev = sum * (kTwoPi / n);
    while (n < 8192) {
      for (int j = 0; j < n; ++j) sum += fn(rotate(x, kTwoPi * (2 * j + 1) / (2 * n)));
      n *= 2;
      const T cur = sum * (kTwoPi / n);
      if (std::abs(cur - prev) <= 1e-13 * std::abs(cur) || std::abs(cur - prev) < 1e-300) return cur;
      prev = cur;
    }
    return prev;
  }

  template <typename F>
  auto panel(double a, double b, F&& fn) const {
    static const auto nodes = detail::gauss_legendre(12);
    using T = decltype(fn(VectorXd()));
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    T total = T(0);
    for (Eigen::Index i = 0; i < nodes.first.size(); ++i) {
      const double s = mid + half * nodes.first(i);
      total += nodes.second(i) * half * sweep_.density(s) * theta_integral(slice_coords(s), fn);
    }
    return total;
  }

  // Compact orbits: Gauss-Legendre on [s_lo, s_hi], doubling the panels.
  template <typename F>
  auto compact_integral(F&& fn) const {
    using T = decltype(fn(VectorXd()));
    int panels = 4;
    auto run = [&](int k) {
      T total = T(0);
      const double w = (sweep_.s_hi - sweep_.s_lo) / k;
      for (int i = 0; i < k; ++i) total += panel(sweep_.s_lo + i * w, sweep_.s_lo + (i + 1) * w, fn);
      return total;
    };
    T prev = run(panels);
    while (panels < 256) {
      panels *= 2;
      const T cur = run(panels);
      if (std::abs(cur - prev) <= 1e-13 * std::abs(cur) || std::abs(cur - prev) < 1e-300) return cur;
      prev = cur;
    }
    return prev;
  }

  // Upper Riemann sum of the outward-decreasing majorant of the s-integrand
  // beyond edge; +inf while the majorant is not yet decreasing.
  double tail_bound(double edge, double dir, const TestFunction& f) const {
    const double c = f.center.coords().norm();
    const bool shrinking = frobenius(edge + dir * kPanel) < frobenius(edge);
    auto majorant = [&](double s) {
      double gauss = 1.0;
      if (!shrinking) {
        const double gap = std::max(0.0, frobenius(s) / lift_ - c);
        gauss = std::exp(-0.5 * gap * gap / (f.width * f.width));
      }
      return kTwoPi * sweep_.density(s) * gauss;
    };
    double sum = 0.0, last = majorant(edge);
    for (int k = 0;; ++k) {
      const double s = edge + dir * k * kPanel;
      const double m = k == 0 ? last : majorant(s);
      if (m > last * (1.0 + 1e-12)) return std::numeric_limits<double>::infinity();
      last = m;
      sum += kPanel * m;
      if (m <= 1e-18 * sum || m == 0.0) return sum;
      if (std::abs(s) > 2.0 * kMaxS) return std::numeric_limits<double>::infinity();
    }
  }

 private:
  detail::OrbitSweep sweep_;
  const MatrixLieAlgebra& g_;
  MatrixXd m_;
  MatrixXd m2_;
  double lift_ = 1.0;
};

double noncompact_integral(const OrbitQuadrature& q, const TestFunction& f) {
  const auto& sw = q.sweep();
  const double start = std::isfinite(sw.s_lo) ? sw.s_lo : 0.0;
  double total = 0.0;
  struct Front {
    double edge;
    double dir;
    bool open;
  };
  std::vector<Front> fronts;
  fronts.push_back({start, +1.0, true});
  if (!std::isfinite(sw.s_lo)) fronts.push_back({start, -1.0, true});
  std::vector<double> bounds(fronts.size(), std::numeric_limits<double>::infinity());

  auto pending = [&] {
    double b = 0.0;
    for (double x : bounds) b += x;
    return b;
  };
  while (pending() > kTailTarget * std::abs(total)) {
    bool moved = false;
    for (size_t i = 0; i < fronts.size(); ++i) {
      Front& fr = fronts[i];
      if (!fr.open) continue;
      if (std::abs(fr.edge) >= kMaxS) {
        fr.open = false;
        continue;
      }
      const double next = fr.edge + fr.dir * kPanel;
      total += fr.dir > 0 ? q.panel(fr.edge, next, f) : q.panel(next, fr.edge, f);
      fr.edge = next;
      bounds[i] = q.tail_bound(fr.edge, fr.dir, f);
      if (bounds[i] <= 0.5 * kTailTarget * std::abs(total)) fr.open = false;
      moved = true;
    }
    if (!moved) break;
  }
  if (!(pending() <= kTailLimit * std::abs(total)))
    throw Error(ErrorCode::TailBoundViolation, "truncated orbital integral has tail bound " +
                                                   std::to_string(pending()) + " against value " +
                                                   std::to_string(total));
  return total;
}

}  // namespace

double orbital_integral(const Element& nu, const TestFunction& f) {
  require_same_algebra(nu, f.center);
  const OrbitQuadrature q(nu);
  if (q.sweep().kind == detail::OrbitSweep::Kind::Point) return f(nu.coords());
  if (q.sweep().compact()) return q.compact_integral(f);
  if (f.kind != TestFunction::Kind::Gaussian)
    throw Error(ErrorCode::UnsupportedOrbit, "noncompact orbits are paired with gaussian test functions only");
  return noncompact_integral(q, f);
}

std::complex<double> orbit_fourier(const Element& nu, const Element& x) {
  require_same_algebra(nu, x);
  const MatrixLieAlgebra& g = *nu.algebra();
  const VectorXd w = g.traceform() * x.coords();
  auto phase = [&](const VectorXd& xi) { return std::exp(cd(0.0, w.dot(xi))); };
  const OrbitQuadrature q(nu);
  if (q.sweep().kind == detail::OrbitSweep::Kind::Point) return phase(nu.coords());
  if (!q.sweep().compact()) throw Error(ErrorCode::NoncompactOrbit, "Fourier transform needs a compact orbit");
  return q.compact_integral(phase);
}

// ------------------------------------------------------------ limit formula

std::vector<double> default_t_grid() {
  std::vector<double> t;
  for (int k = 2; k <= 9; ++k) t.push_back(std::ldexp(1.0, -k));
  return t;
}

namespace {

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

AsymptoticReport limit_formula_check(const Element& nu, const std::vector<NilpotentEntry>& catalog,
                                     const std::vector<TestFunction>& bank, const std::vector<double>& t_grid) {
  if (!is_regular(nu)) throw Error(ErrorCode::NotRegular, "limit formula needs a regular element");
  if (t_grid.size() < 3) throw Error(ErrorCode::InvalidSpec, "t-grid needs at least three points");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] < t_grid[i - 1]) || !(t_grid[i] > 0.0))
      throw Error(ErrorCode::InvalidSpec, "t-grid must be positive and strictly decreasing");

  AsymptoticReport rep;
  rep.t_grid = t_grid;
  rep.orbit_dimension = adjoint_orbit_dimension(nu);

  // Maximal orbits of the asymptotic cone.
  std::vector<const NilpotentEntry*> cone;
  std::vector<double> volumes;
  rep.cone_dimension = -1;
  for (const auto& entry : catalog) {
    const SliceIntersection inter = intersect_orbit_slice(nu, entry.slice);
    if (inter.empty()) continue;
    if (entry.dimension > rep.cone_dimension) {
      rep.cone_dimension = entry.dimension;
      cone.clear();
      volumes.clear();
    }
    if (entry.dimension == rep.cone_dimension) {
      cone.push_back(&entry);
      volumes.push_back(slice_volume(inter));
    }
  }
  if (cone.empty()) throw Error(ErrorCode::NoSolution, "no catalog orbit meets the dilations of nu");
  for (size_t i = 0; i < cone.size(); ++i) {
    rep.cone_orbits.push_back(cone[i]->name);
    rep.cone_volumes.push_back(volumes[i]);
  }
  rep.predicted_exponent = 0.5 * (rep.orbit_dimension - rep.cone_dimension);

  const size_t last = t_grid.size() - 1;
  for (const auto& f : bank) {
    LimitRow row;
    row.function = f.to_string();
    for (double t : t_grid) row.pairings.push_back(orbital_integral(t * nu, f));
    std::vector<double> lx, ly;
    for (size_t i = last - 2; i <= last; ++i) {
      lx.push_back(std::log(t_grid[i]));
      ly.push_back(std::log(std::abs(row.pairings[i])));
    }
    row.fitted_exponent = slope(lx, ly);
    // Leading coefficient at the nearest half-integer exponent, with one
    // Richardson step against the linear correction.
    const double n = std::round(2.0 * row.fitted_exponent) / 2.0;
    const double q0 = row.pairings[last] / std::pow(t_grid[last], n);
    const double q1 = row.pairings[last - 1] / std::pow(t_grid[last - 1], n);
    const double ratio = t_grid[last - 1] / t_grid[last];
    row.raw_coefficient = q0;
    row.fitted_coefficient = (ratio * q0 - q1) / (ratio - 1.0);
    for (size_t i = 0; i < cone.size(); ++i) row.predicted_coefficient += volumes[i] * orbital_integral(cone[i]->X, f);
    row.exponent_error = std::abs(row.fitted_exponent - rep.predicted_exponent);
    row.coefficient_error =
        std::abs(row.fitted_coefficient - row.predicted_coefficient) / std::abs(row.predicted_coefficient);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

bool AsymptoticReport::passed(double exponent_tol, double coefficient_tol) const {
  if (rows.empty()) return false;
  return std::all_of(rows.begin(), rows.end(), [&](const LimitRow& r) {
    return r.exponent_error < exponent_tol && r.coefficient_error < coefficient_tol;
  });
}

std::string AsymptoticReport::to_record() const {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "orbit_dimension = " << orbit_dimension << "\n";
  os << "cone_dimension = " << cone_dimension << "\n";
  os << "predicted_exponent = " << predicted_exponent << "\n";
  for (size_t i = 0; i < cone_orbits.size(); ++i)
    os << "cone_orbit = " << cone_orbits[i] << " : " << cone_volumes[i] << "\n";
  os << "t_grid =";
  for (double t : t_grid) os << " " << t;
  os << "\n";
  for (const auto& r : rows) {
    os << "\n[function]\n";
    os << "function = " << r.function << "\n";
    os << "fitted_exponent = " << r.fitted_exponent << "\n";
    os << "exponent_error = " << r.exponent_error << "\n";
    os << "fitted_coefficient = " << r.fitted_coefficient << "\n";
    os << "raw_coefficient = " << r.raw_coefficient << "\n";
    os << "predicted_coefficient = " << r.predicted_coefficient << "\n";
    os << "coefficient_error = " << r.coefficient_error << "\n";
  }
  return os.str();
}

std::string AsymptoticReport::to_tsv() const {
  std::ostringstream os;
  os << std::setprecision(15) << "function\tt\tpairing\n";
  for (const auto& r : rows)
    for (size_t i = 0; i < t_grid.size(); ++i) os << r.function << "\t" << t_grid[i] << "\t" << r.pairings[i] << "\n";
  return os.str();
}

// ---------------------------------------------------------------- chambers

ChamberReport chamber_invariance_check(const Element& nu, const Element& lambda,
                                       const std::vector<NilpotentEntry>& catalog, const SolverOptions& opt) {
  require_same_algebra(nu, lambda);
  if (!is_regular(nu) || !is_regular(lambda)) throw Error(ErrorCode::NotRegular, "chamber check needs regular elements");
  ChamberReport rep;
  for (const auto& entry : catalog) {
    if (!intersect_orbit_slice(nu, entry.slice, opt).empty()) rep.nu_set.push_back(entry.name);
    if (!intersect_orbit_slice(lambda, entry.slice, opt).empty()) rep.lambda_set.push_back(entry.name);
  }
  rep.equal = rep.nu_set == rep.lambda_set;
  return rep;
}

}  // namespace orbitkit
