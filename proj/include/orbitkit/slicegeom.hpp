#pragma once

// Transverse slices S_X = X + Z_g(Y), orbit-slice intersections, the
// quotient measure on them, and wave-front coefficients.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "orbitkit/liecore.hpp"
#include "orbitkit/orbitcomb.hpp"

namespace orbitkit {

struct SlodowySlice {
  Sl2Triple triple;
  /// Orthonormal coordinate basis of Z_g(Y) (all of g for the zero slice).
  Subspace base;
  /// Eigenvalues of ad H on the base, ascending.
  std::vector<double> spectrum;

  const AlgebraPtr& algebra() const { return base.algebra(); }
  const Element& offset() const { return triple.X; }
  bool is_zero_slice() const { return triple.X.norm() == 0.0; }
  Eigen::Index dim() const { return base.dim(); }
  /// X + sum_i s_i b_i.
  Element point(const VectorXd& s) const;
  /// Slice coordinates of a point; throws NotOnIntersection off the slice.
  VectorXd coordinates(const Element& x, double tol = 1e-8) const;
};

/// Throws SpectrumViolation if ad H has a positive eigenvalue on Z_g(Y).
SlodowySlice build_slice(const Sl2Triple& triple);
/// S_0 = g.
SlodowySlice zero_slice(const AlgebraPtr& g);
/// Slice through a nilpotent (zero slice for x = 0).
SlodowySlice slice_at(const Element& x);

/// exp(-1/2 log(t) H); throws NonpositiveT.
MatrixXcd gamma_scaling(double t, const Sl2Triple& triple);
/// X + t Ad(gamma_t)(xi - X), the image of xi in O_{t nu} ∩ S_X.
Element scale_slice_point(const SlodowySlice& slice, const Element& xi, double t);

struct SolverOptions {
  double box = 1e3;  // radius of the search region in slice coordinates
  double tol = 1e-8;
  int max_points = 20000;
};

struct SliceIntersection {
  SliceIntersection(SlodowySlice s, Element n) : slice(std::move(s)), nu(std::move(n)) {}

  SlodowySlice slice;
  Element nu;
  /// Solution dimension dim O_nu - dim O_X (meaningful when nonempty).
  int dimension = 0;
  std::vector<VectorXd> coords;  // slice coordinates of the samples
  std::vector<Element> samples;
  bool compact = true;
  /// d = 0: Rao point mass at each sample.
  std::vector<double> point_masses;
  /// Largest slice-coordinate norm reached while exploring.
  double explored_radius = 0.0;
  /// Noncompact case: unit escape direction and its weight on each ad H
  /// eigenvalue of the base, as (eigenvalue, weight) pairs.
  VectorXd escape_direction;
  std::vector<std::pair<double, double>> escape_weights;

  bool empty() const { return samples.empty(); }
};

/// Same orbit as nu: invariants, orbit dimension and, where g preserves a
/// form, the sheet (signature on imaginary eigenspaces, or nilpotent label).
bool same_orbit(const Element& a, const Element& b, double tol = 1e-8);

SliceIntersection intersect_orbit_slice(const Element& nu, const SlodowySlice& slice, const SolverOptions& opt = {});

/// sqrt|det Omega| / (2 pi)^m for an orthonormalized tangent frame at nu.
double canonical_density(const Element& nu, const MatrixXd& tangent);
/// Density of the quotient measure at a point of O_nu ∩ S_X against the
/// Euclidean measure on the intersection's tangent space.
double rao_density(const Element& point, const Element& nu, const SlodowySlice& slice);

/// Volume of O_nu ∩ S_X: sum of point masses (d = 0), exact orbit volume on
/// the zero slice of a compact algebra, chart quadrature otherwise.
/// Returns +infinity for noncompact intersections.
double slice_volume(const SliceIntersection& inter);
/// Partition-of-unity chart quadrature for d in {1, 2}.
double quadrature_volume(const SliceIntersection& inter, const SolverOptions& opt = {});

/// Symplectic volume of a coadjoint orbit of a compact 2x2 algebra.
double symplectic_volume(const Element& nu);

struct NilpotentEntry {
  std::string name;
  Element X;
  SlodowySlice slice;
  int dimension = 0;
  /// Z_g{X,H,Y} compact modulo Z(g).
  bool centralizer_compact = false;
};

NilpotentEntry make_catalog_entry(std::string name, const Element& x);
/// One entry per nilpotent orbit (labels from orbitcomb).
std::vector<NilpotentEntry> nilpotent_catalog(const AlgebraPtr& g);

struct OrbitEvidence {
  std::string name;
  int dimension = 0;
  std::vector<bool> nonempty;  // per nu
  std::vector<bool> compact;   // per nu
  std::vector<double> volumes; // per nu, +inf when noncompact
  bool kept = false;
};

struct WaveFrontTerm {
  std::string name;
  int dimension = 0;
  double coefficient = 0.0;
  bool criterion_passed = false;
};

struct WaveFrontCycle {
  std::vector<WaveFrontTerm> terms;
  std::vector<OrbitEvidence> evidence;
};

/// Keeps X iff O_nu_i ∩ S_X is compact for every i and nonempty for some
/// i; coefficient sum_i vol(O_nu_i ∩ S_X). Throws NonRegularInput and
/// MixedDimensions.
WaveFrontCycle wavefront_cycle(const std::vector<Element>& nus, const std::vector<NilpotentEntry>& catalog,
                               const SolverOptions& opt = {});

/// Intersection over the samples of Z(l) ∩ Z_l(xi). Throws EmptySamples.
Subspace lemma41_check(const SlodowySlice& slice, const Subspace& l, const std::vector<Element>& samples);
/// Deterministic regular points of the slice near X.
std::vector<Element> slice_regular_samples(const SlodowySlice& slice, int count, double radius = 0.5);

}  // namespace orbitkit
