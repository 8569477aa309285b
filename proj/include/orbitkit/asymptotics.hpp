#pragma once

// Orbital integrals on the two-dimensional orbits of su(2), u(2) and
// sl(2,R), the small-t limit of the dilated orbits, chamber comparison
// and Fourier transforms of compact orbits.

#include <complex>
#include <string>
#include <vector>

#include "orbitkit/liecore.hpp"
#include "orbitkit/slicegeom.hpp"

namespace orbitkit {

struct TestFunction {
  enum class Kind { Gaussian, Bump };

  Kind kind = Kind::Gaussian;
  Element center;
  double width = 1.0;

  /// Throws InvalidSpec unless width > 0.
  TestFunction(Kind kind, Element center, double width);
  static TestFunction gaussian(Element center, double width) { return {Kind::Gaussian, std::move(center), width}; }
  static TestFunction bump(Element center, double radius) { return {Kind::Bump, std::move(center), radius}; }

  /// Value at a coordinate vector (Euclidean distance in coordinates).
  double operator()(const VectorXd& x) const;
  std::string to_string() const;
};

/// Integral of f over O_nu against the canonical measure. Noncompact orbits
/// take gaussians only and are truncated once the analytic tail majorant
/// drops below 1e-6 of the running value; the zero orbit is a unit point
/// mass. Throws UnsupportedOrbit and TailBoundViolation.
double orbital_integral(const Element& nu, const TestFunction& f);

struct LimitRow {
  std::string function;
  std::vector<double> pairings;  // <O_{t nu}, f> along the t-grid
  double fitted_exponent = 0.0;
  double fitted_coefficient = 0.0;    // Richardson-extrapolated
  double raw_coefficient = 0.0;       // pairing / t^n at the smallest t
  double predicted_coefficient = 0.0;
  double exponent_error = 0.0;
  double coefficient_error = 0.0;     // relative
};

struct AsymptoticReport {
  std::vector<double> t_grid;  // strictly decreasing
  int orbit_dimension = 0;
  int cone_dimension = 0;
  double predicted_exponent = 0.0;
  /// Maximal orbits of the asymptotic cone and vol(O_nu ∩ S_X) for each.
  std::vector<std::string> cone_orbits;
  std::vector<double> cone_volumes;
  std::vector<LimitRow> rows;

  bool passed(double exponent_tol = 0.05, double coefficient_tol = 0.05) const;
  std::string to_record() const;
  /// Columns: function, t, pairing.
  std::string to_tsv() const;
};

/// t-grid 2^-2 .. 2^-9.
std::vector<double> default_t_grid();

/// Fits log <O_{t nu}, f> against log t on the three smallest t and compares
/// with sum_X vol(O_nu ∩ S_X) <O_X, f> over the maximal orbits of the cone.
AsymptoticReport limit_formula_check(const Element& nu, const std::vector<NilpotentEntry>& catalog,
                                     const std::vector<TestFunction>& bank,
                                     const std::vector<double>& t_grid = default_t_grid());

struct ChamberReport {
  std::vector<std::string> nu_set;
  std::vector<std::string> lambda_set;
  bool equal = false;
};

/// Catalog entries whose slice meets O_nu, compared with those meeting
/// O_lambda. Throws NotRegular.
ChamberReport chamber_invariance_check(const Element& nu, const Element& lambda,
                                       const std::vector<NilpotentEntry>& catalog,
                                       const SolverOptions& opt = {});

/// Integral of exp(i <xi, x>) over the compact orbit O_nu. Throws
/// NoncompactOrbit.
std::complex<double> orbit_fourier(const Element& nu, const Element& x);

}  // namespace orbitkit
