#pragma once

// Combinatorics of nilpotent orbits: partitions, signed Young diagrams,
// reductive centralizers and the noticed predicate (rule and Levi scan).

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orbitkit/liecore.hpp"

namespace orbitkit {

class Partition {
 public:
  /// Throws InvalidLabel unless parts are positive and weakly decreasing.
  explicit Partition(std::vector<int> parts);
  static Partition parse(std::string_view text);  // "2,1,1"

  const std::vector<int>& parts() const { return parts_; }
  int total() const { return total_; }
  int multiplicity(int length) const;
  /// Odd parts occur with even multiplicity.
  bool is_type_c() const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

/// Partition from the multiset of lengths; sorts for the caller.
Partition partition_of(std::vector<int> parts);
/// a dominates b (same total, every partial sum of a >= that of b).
bool dominates(const Partition& a, const Partition& b);

struct SignedRow {
  int length = 0;
  int sign = +1;  // starting sign; signs alternate along the row
  friend bool operator==(const SignedRow&, const SignedRow&) = default;
};

/// Rows in canonical order: by length descending, then '+' before '-'.
class SignedYoungDiagram {
 public:
  explicit SignedYoungDiagram(std::vector<SignedRow> rows);
  /// Rows separated by spaces, each written out: "+-+ -", "+- +-", "+ + - -".
  static SignedYoungDiagram parse(std::string_view text);

  const std::vector<SignedRow>& rows() const { return rows_; }
  int p() const { return p_; }
  int q() const { return q_; }
  Partition shape() const;
  /// (rows starting +, rows starting -) among rows of the given length.
  std::pair<int, int> sign_counts(int length) const;
  std::string to_string() const;

  friend bool operator==(const SignedYoungDiagram& a, const SignedYoungDiagram& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<SignedRow> rows_;
  int p_ = 0;
  int q_ = 0;
};

using OrbitLabel = std::variant<Partition, SignedYoungDiagram>;
std::string label_string(const OrbitLabel& label);
Partition label_shape(const OrbitLabel& label);

enum class FamilyTag { A, C };

/// All partitions of total allowed for the family, lexicographically descending.
std::vector<Partition> enumerate_partitions(int total, FamilyTag tag);
/// All signed Young diagrams of signature (p, q), canonical and deduplicated.
std::vector<SignedYoungDiagram> enumerate_signed_diagrams(int p, int q);
/// Diagrams of signature (n, n) labelling real orbits of sp(2n,R): for each
/// odd length, as many rows start with + as with -.
std::vector<SignedYoungDiagram> enumerate_symplectic_diagrams(int n);

struct CentralizerFactor {
  enum class Kind { U, OC, SpC, Torus };
  Kind kind = Kind::U;
  int a = 0;  // u(a,b); o(a,C); sp(a,C); gl(a) torus
  int b = 0;

  bool compact() const;
  int real_dimension() const;
  std::string to_string() const;
};

struct CentralizerType {
  std::vector<CentralizerFactor> factors;
  bool compact_mod_center = false;

  int real_dimension() const;
  std::string to_string() const;
};

/// Reductive centralizer: u(p,q) rule for signed diagrams, type C
/// (complex) rule for partitions.
CentralizerType reductive_centralizer(const OrbitLabel& label);
bool is_noticed_rule(const OrbitLabel& label);

/// Labels of every nilpotent orbit of g, in enumeration order.
std::vector<OrbitLabel> nilpotent_orbit_labels(const AlgebraPtr& g);
/// Nilpotent representative of the labelled orbit in g.
Element representative(const AlgebraPtr& g, const OrbitLabel& label);
/// Orbit label of a nilpotent matrix: signed diagram when g preserves a
/// Hermitian or real symplectic form, partition otherwise.
OrbitLabel nilpotent_label(const Element& x);

/// Levi scan: false iff a nilpotent of some proper standard Levi subalgebra
/// lies in the orbit of x.
bool is_noticed_oracle(const Element& x);

/// Numerical reductive centralizer Z_g{X,H,Y} (g itself for X = 0).
Subspace reductive_centralizer_numeric(const Element& x);
/// Trace form negative definite on the part of l orthogonal to Z(g).
bool compact_mod_center_numeric(const Subspace& l);

struct OrbitClass {
  OrbitLabel label = Partition(std::vector<int>{});
  VectorXd representative;
  int dimension = 0;
  CentralizerType centralizer;
  bool noticed = false;         // combinatorial rule
  bool noticed_oracle = false;  // Levi scan
  std::optional<bool> noticed_reference;  // published claim, when recorded
  int centralizer_dimension_numeric = 0;
  bool centralizer_compact_numeric = false;

  bool discrepancy() const;
};

std::vector<OrbitClass> classify_orbits(const AlgebraPtr& g);
std::vector<OrbitClass> classify_orbits(std::string_view group);

/// Published noticed sets kept for comparison (e.g. sp(4,C)).
std::optional<std::vector<std::string>> reference_noticed(const std::string& group);

struct Cover {
  size_t upper = 0;
  size_t lower = 0;
  friend bool operator==(const Cover&, const Cover&) = default;
};

/// Covering pairs of the dominance order on the underlying partitions.
std::vector<Cover> closure_order(const std::vector<OrbitLabel>& labels);

std::string orbit_table_tsv(const std::vector<OrbitClass>& table);
std::string orbit_table_records(const std::string& group, const std::vector<OrbitClass>& table);
std::string closure_dot(const std::vector<OrbitLabel>& labels, const std::vector<Cover>& covers);

}  // namespace orbitkit
