#pragma once

// Global coordinates on the two-dimensional coadjoint orbits of the 2x2
// algebras: xi(s, theta) = Ad(exp theta K) Ad(exp s B) nu0.

#include "orbitkit/liecore.hpp"

namespace orbitkit::detail {

struct OrbitSweep {
  enum class Kind { Point, Sphere, EllipticSheet, NilpotentCone, Hyperboloid };

  Kind kind = Kind::Point;
  AlgebraPtr algebra;
  MatrixXcd nu0;
  MatrixXcd K;
  MatrixXcd B;
  double s_lo = 0.0;
  double s_hi = 0.0;

  bool compact() const { return kind == Kind::Point || kind == Kind::Sphere; }
  MatrixXcd point(double s, double theta) const;
  /// Canonical density against ds dtheta; independent of theta.
  double density(double s) const;
};

/// Throws UnsupportedOrbit outside su(2), u(2) and sl(2,R).
OrbitSweep orbit_sweep(const Element& nu);

}  // namespace orbitkit::detail
