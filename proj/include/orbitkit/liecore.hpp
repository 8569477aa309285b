#pragma once

// Matrix realizations of small classical Lie algebras.
//
// Every algebra is treated as a real vector space: complex algebras carry a
// doubled real basis, and elements are real coordinate vectors against the
// fixed basis. The real trace form <a,b> = Re tr(ab) identifies g with g*.

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "orbitkit/error.hpp"
#include "orbitkit/linalg.hpp"

namespace orbitkit {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Family {
  SlR,  // sl(n,R)
  GlR,  // gl(n,R)
  SuPQ, // su(p,q); su(n) is su(n,0)
  UPQ,  // u(p,q)
  SpR,  // sp(2n,R)
  SpC,  // sp(2n,C) viewed as a real algebra
};

/// Group-invariant form used to tell apart real orbits with equal
/// characteristic polynomials.
enum class FormKind {
  None,
  Hermitian,   // x^* J + J x = 0, J = diag(I_p, -I_q)
  Symplectic,  // x^T W + W x = 0, W = [[0, I], [-I, 0]], real entries
};

struct AlgebraSpec {
  Family family = Family::SlR;
  int n = 0;  // sl/gl: matrix size; sp: half size; u/su: p + q
  int p = 0;
  int q = 0;
  /// Optional replacement basis (must span the same algebra).
  std::vector<MatrixXcd> basis_override;
};

/// Parse names like "sl(2,R)", "gl(3,R)", "su(2)", "u(2,2)", "sp(4,R)", "sp(4,C)".
AlgebraSpec parse_group(std::string_view name);
/// Parse the declarative `key = value` algebra file format.
AlgebraSpec parse_algebra_spec(std::string_view text);
std::string group_name(const AlgebraSpec& spec);

class MatrixLieAlgebra;
using AlgebraPtr = std::shared_ptr<const MatrixLieAlgebra>;

AlgebraPtr make_algebra(const AlgebraSpec& spec);
inline AlgebraPtr make_algebra(std::string_view group) { return make_algebra(parse_group(group)); }

class MatrixLieAlgebra {
 public:
  explicit MatrixLieAlgebra(AlgebraSpec spec);

  const AlgebraSpec& spec() const { return spec_; }
  Family family() const { return spec_.family; }
  const std::string& name() const { return name_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  int matrix_size() const { return size_; }
  bool complex_entries() const { return complex_; }
  /// Real dimension of a Cartan subalgebra (generic centralizer dimension).
  int rank() const { return rank_; }

  const std::vector<MatrixXcd>& basis() const { return basis_; }
  const MatrixXd& traceform() const { return gram_; }

  FormKind form_kind() const { return form_kind_; }
  /// Hermitian matrix F with x^* F + F x = 0 for all x (J, or iW for the
  /// symplectic case); empty when form_kind() is None.
  const MatrixXcd& hermitian_form() const { return hform_; }
  /// The raw preserved form (J or W).
  const MatrixXcd& form() const { return form_; }

  MatrixXcd matrix(const VectorXd& coords) const;
  /// Coordinates of m; throws NotInAlgebra when m is off the span.
  VectorXd coords(const MatrixXcd& m) const;
  /// Relative distance of m from the span of the basis.
  double projection_residual(const MatrixXcd& m) const;

  /// Matrix of w -> [x, w] in basis coordinates.
  MatrixXd ad(const VectorXd& x) const;
  VectorXd bracket(const VectorXd& a, const VectorXd& b) const;
  double pair(const VectorXd& a, const VectorXd& b) const { return a.dot(gram_ * b); }

  /// Orthonormal coordinate basis of the center Z(g).
  const MatrixXd& center_basis() const { return center_; }

 private:
  Eigen::VectorXd vectorize(const MatrixXcd& m) const;
  void validate() const;

  AlgebraSpec spec_;
  std::string name_;
  int size_ = 0;
  bool complex_ = false;
  int rank_ = 0;
  std::vector<MatrixXcd> basis_;
  MatrixXd gram_;
  MatrixXd vec_basis_;
  MatrixXd pinv_;
  std::vector<MatrixXd> ad_basis_;
  MatrixXd center_;
  FormKind form_kind_ = FormKind::None;
  MatrixXcd form_;
  MatrixXcd hform_;
};

/// A point of g (equivalently g* through the trace form).
class Element {
 public:
  Element(AlgebraPtr algebra, VectorXd coords);
  static Element from_matrix(AlgebraPtr algebra, const MatrixXcd& m);
  static Element zero(AlgebraPtr algebra);
  static Element basis_vector(AlgebraPtr algebra, Eigen::Index i);

  const AlgebraPtr& algebra() const { return algebra_; }
  const VectorXd& coords() const { return coords_; }
  const MatrixXcd& matrix() const { return matrix_; }
  double norm() const { return coords_.norm(); }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const { return Element(algebra_, -coords_); }
  Element operator*(double s) const { return Element(algebra_, s * coords_); }
  friend Element operator*(double s, const Element& e) { return e * s; }

 private:
  AlgebraPtr algebra_;
  VectorXd coords_;
  MatrixXcd matrix_;
};

/// Real subspace of g with orthonormal coordinate basis.
class Subspace {
 public:
  Subspace(AlgebraPtr algebra, const MatrixXd& spanning);
  static Subspace whole(AlgebraPtr algebra);
  static Subspace zero(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const { return algebra_; }
  const MatrixXd& basis() const { return basis_; }
  Eigen::Index dim() const { return basis_.cols(); }
  bool contains(const VectorXd& v, double tol = 1e-9) const;
  Subspace intersect(const Subspace& other) const;

 private:
  AlgebraPtr algebra_;
  MatrixXd basis_;
};

struct Sl2Triple {
  Element X;  // nilpositive
  Element H;  // semisimple
  Element Y;  // nilnegative

  /// Largest bracket-relation residual (coordinates).
  double residual() const;
  /// Throws NoSolution unless all triple relations hold within tol.
  void check(double tol = 1e-10) const;
};

/// [a, b] computed from matrices, projected back to coordinates.
Element bracket(const Element& a, const Element& b);

/// Simultaneous centralizer {w : [w, e] = 0 for every e}.
Subspace centralizer(const std::vector<Element>& elements);
Subspace centralizer(const Sl2Triple& t);

Sl2Triple jacobson_morozov(const Element& x);

/// dim O_x = rank of ad x.
int adjoint_orbit_dimension(const Element& x);
int centralizer_dimension(const Element& x);

/// Coordinates of g x g^{-1}.
Element group_conjugate(const MatrixXcd& g, const Element& x);

/// Characteristic-polynomial coefficients c_1..c_n, flattened as
/// (re, im) pairs when the algebra has complex entries.
VectorXd orbit_invariants(const Element& x);

bool is_nilpotent(const Element& x, double tol = 1e-10);
bool is_regular(const Element& x);

void require_same_algebra(const Element& a, const Element& b);

}  // namespace orbitkit
