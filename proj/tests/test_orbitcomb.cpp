#include "doctest.h"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <random>
#include <map>
#include <set>
#include <sstream>

#include "orbitkit/orbitcomb.hpp"

using namespace orbitkit;

namespace {

// Independent enumerations: every composition of total, sorted and deduped.
void compositions(int remaining, std::vector<int>& cur, std::set<std::vector<int>>& out) {
  if (remaining == 0) {
    std::vector<int> s = cur;
    std::sort(s.rbegin(), s.rend());
    out.insert(s);
    return;
  }
  for (int d = 1; d <= remaining; ++d) {
    cur.push_back(d);
    compositions(remaining - d, cur, out);
    cur.pop_back();
  }
}

std::set<std::vector<int>> brute_partitions(int total) {
  std::set<std::vector<int>> out;
  std::vector<int> cur;
  compositions(total, cur, out);
  return out;
}

// Every sign assignment to every row, canonicalized as a sorted multiset of
// row strings.
std::set<std::multiset<std::string>> brute_signed(int p, int q) {
  std::set<std::multiset<std::string>> out;
  for (const auto& parts : brute_partitions(p + q)) {
    const int rows = int(parts.size());
    for (int mask = 0; mask < (1 << rows); ++mask) {
      std::multiset<std::string> diagram;
      int plus = 0, minus = 0;
      for (int r = 0; r < rows; ++r) {
        std::string row;
        bool pos = !((mask >> r) & 1);
        for (int k = 0; k < parts[r]; ++k, pos = !pos) {
          row += pos ? '+' : '-';
          (pos ? plus : minus)++;
        }
        diagram.insert(row);
      }
      if (plus == p && minus == q) out.insert(diagram);
    }
  }
  return out;
}

std::multiset<std::string> rows_of(const SignedYoungDiagram& s) {
  std::multiset<std::string> out;
  std::stringstream ss(s.to_string());
  std::string tok;
  while (ss >> tok) out.insert(tok);
  return out;
}

std::vector<OrbitLabel> all_labels(const AlgebraPtr& g) {
  std::vector<OrbitLabel> out;
  const AlgebraSpec& s = g->spec();
  switch (s.family) {
    case Family::UPQ:
    case Family::SuPQ:
      for (auto& d : enumerate_signed_diagrams(s.p, s.q)) out.emplace_back(d);
      break;
    case Family::SpR:
      for (auto& d : enumerate_symplectic_diagrams(s.n)) out.emplace_back(d);
      break;
    case Family::SpC:
      for (auto& p : enumerate_partitions(2 * s.n, FamilyTag::C)) out.emplace_back(p);
      break;
    case Family::SlR:
      if (s.n == 2) {
        for (auto& d : enumerate_symplectic_diagrams(1)) out.emplace_back(d);
        break;
      }
      [[fallthrough]];
    case Family::GlR:
      for (auto& p : enumerate_partitions(s.n, FamilyTag::A)) out.emplace_back(p);
      break;
  }
  return out;
}

bool label_eq(const OrbitLabel& a, const OrbitLabel& b) { return label_string(a) == label_string(b) && a.index() == b.index(); }

}  // namespace

TEST_CASE("partitions") {
  std::vector<std::string> c4;
  for (const auto& p : enumerate_partitions(4, FamilyTag::C)) c4.push_back(p.to_string());
  CHECK(c4 == std::vector<std::string>{"4", "2,2", "2,1,1", "1,1,1,1"});
  CHECK(enumerate_partitions(1, FamilyTag::A).size() == 1);
  CHECK(enumerate_partitions(6, FamilyTag::C).size() == 8);

  for (int n = 1; n <= 9; ++n) {
    CAPTURE(n);
    const auto brute = brute_partitions(n);
    const auto all = enumerate_partitions(n, FamilyTag::A);
    CHECK(all.size() == brute.size());
    CHECK(std::is_sorted(all.begin(), all.end(), [](const auto& a, const auto& b) { return a > b; }));
    size_t c = 0;
    for (const auto& parts : brute) {
      bool ok = true;
      for (int d : parts)
        if (d % 2 && std::count(parts.begin(), parts.end(), d) % 2) ok = false;
      c += ok;
    }
    CHECK(enumerate_partitions(n, FamilyTag::C).size() == c);
  }
  CHECK_THROWS_AS(enumerate_partitions(0, FamilyTag::A), Error);
  CHECK_THROWS_AS(Partition({1, 2}), Error);
  CHECK(Partition::parse("{2,1,1}") == Partition({2, 1, 1}));
  CHECK_THROWS_AS(Partition::parse("2,x"), Error);
}

TEST_CASE("signed Young diagrams") {
  CHECK(enumerate_signed_diagrams(1, 0).size() == 1);
  CHECK(enumerate_signed_diagrams(1, 1).size() == 3);
  CHECK(enumerate_signed_diagrams(2, 2).size() == 10);
  for (int p = 0; p <= 6; ++p)
    for (int q = 0; p + q <= 6; ++q) {
      if (p + q == 0) continue;
      CAPTURE(p);
      CAPTURE(q);
      const auto brute = brute_signed(p, q);
      const auto got = enumerate_signed_diagrams(p, q);
      std::set<std::multiset<std::string>> seen;
      for (const auto& s : got) {
        CHECK(s.p() == p);
        CHECK(s.q() == q);
        seen.insert(rows_of(s));
      }
      CHECK(seen.size() == got.size());
      CHECK(seen == brute);
    }

  const auto s = SignedYoungDiagram::parse("- +-+");
  CHECK(s.to_string() == "+-+ -");
  CHECK(s.p() == 2);
  CHECK(s.q() == 2);
  CHECK(SignedYoungDiagram::parse("- +") == SignedYoungDiagram::parse("+ -"));
  CHECK_THROWS_AS(SignedYoungDiagram::parse("++"), Error);
}

TEST_CASE("real symplectic diagrams") {
  // sp(2,R): zero, e, -e.
  CHECK(enumerate_symplectic_diagrams(1).size() == 3);
  // Brute force: signature (n,n) diagrams whose odd rows pair + with -.
  for (int n = 1; n <= 3; ++n) {
    size_t expected = 0;
    for (const auto& d : brute_signed(n, n)) {
      std::map<size_t, int> balance;
      for (const auto& row : d)
        if (row.size() % 2) balance[row.size()] += row[0] == '+' ? 1 : -1;
      expected += std::all_of(balance.begin(), balance.end(), [](const auto& kv) { return kv.second == 0; });
    }
    CHECK(enumerate_symplectic_diagrams(n).size() == expected);
  }
}

TEST_CASE("reductive centralizer rules") {
  const auto c22 = reductive_centralizer(SignedYoungDiagram::parse("+- +-"));
  REQUIRE(c22.factors.size() == 1);
  CHECK(c22.factors[0].to_string() == "u(2,0)");
  CHECK(c22.compact_mod_center);

  const auto c1111 = reductive_centralizer(SignedYoungDiagram::parse("+ + - -"));
  REQUIRE(c1111.factors.size() == 1);
  CHECK(c1111.factors[0].to_string() == "u(2,2)");
  CHECK_FALSE(c1111.compact_mod_center);

  const auto c4 = reductive_centralizer(Partition({4}));
  REQUIRE(c4.factors.size() == 1);
  CHECK(c4.factors[0].to_string() == "o(1,C)");
  CHECK(c4.compact_mod_center);
  CHECK(reductive_centralizer(Partition({2, 2})).factors[0].to_string() == "o(2,C)");
  CHECK(reductive_centralizer(Partition({2, 1, 1})).to_string() == "o(1,C) x sp(2,C)");
  CHECK_THROWS_AS(reductive_centralizer(Partition({3, 1})), Error);

  CHECK(is_noticed_rule(SignedYoungDiagram::parse("+- +-")));
  CHECK_FALSE(is_noticed_rule(SignedYoungDiagram::parse("+- + -")));
  CHECK(is_noticed_rule(SignedYoungDiagram::parse("+-+ -")));
  CHECK(is_noticed_rule(Partition({4})));
  CHECK_FALSE(is_noticed_rule(Partition({2, 2})));
}

TEST_CASE("representatives round-trip through matrix labels") {
  std::mt19937 rng(17);
  for (const char* name : {"sl(2,R)", "sl(3,R)", "gl(4,R)", "su(2)", "u(1,1)", "su(2,1)", "u(2,2)", "u(3,2)", "sp(4,R)",
                           "sp(6,R)", "sp(4,C)", "sp(6,C)"}) {
    CAPTURE(name);
    auto g = make_algebra(name);
    std::set<std::string> seen;
    for (const auto& label : all_labels(g)) {
      CAPTURE(label_string(label));
      const Element x = representative(g, label);
      CHECK(is_nilpotent(x));
      CHECK(label_eq(nilpotent_label(x), label));
      const int dim = adjoint_orbit_dimension(x);
      CHECK(dim % 2 == 0);
      CHECK(dim + centralizer({x}).dim() == g->dim());
      seen.insert(label_string(label));

      // The label is a conjugation invariant.
      std::normal_distribution<double> nd(0.0, 0.3);
      VectorXd c(g->dim());
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = nd(rng);
      const Element y = group_conjugate(g->matrix(c).exp(), x);
      CHECK(label_eq(nilpotent_label(y), label));
    }
    CHECK(seen.size() == all_labels(g).size());
  }

  auto sl2 = make_algebra("sl(2,R)");
  const Element e = Element::basis_vector(sl2, 0);
  CHECK(label_string(nilpotent_label(e)) == "+-");
  CHECK(label_string(nilpotent_label(-e)) == "-+");
  CHECK(label_string(nilpotent_label(Element::basis_vector(sl2, 2))) == "-+");
  CHECK_THROWS_AS(nilpotent_label(Element::basis_vector(sl2, 1)), Error);
  CHECK_THROWS_AS(representative(sl2, Partition({2})), Error);
  CHECK_THROWS_AS(representative(make_algebra("u(2,2)"), SignedYoungDiagram::parse("+-+")), Error);
}

TEST_CASE("Jacobson-Morozov on every Jordan type up to size 6") {
  // sl(2,R) carries signed labels; its single shape is covered below.
  for (int n = 3; n <= 6; ++n) {
    auto g = make_algebra("sl(" + std::to_string(n) + ",R)");
    for (const auto& p : enumerate_partitions(n, FamilyTag::A)) {
      if (p.parts()[0] == 1) continue;
      CAPTURE(p.to_string());
      const Element x = representative(g, p);
      const Sl2Triple t = jacobson_morozov(x);
      CHECK(t.residual() < 1e-8);
      // H has eigenvalues d-1, d-3, ..., 1-d on each row of length d.
      std::vector<double> expected;
      for (int d : p.parts())
        for (int k = 0; k < d; ++k) expected.push_back(d - 1 - 2 * k);
      std::sort(expected.begin(), expected.end());
      Eigen::ComplexEigenSolver<MatrixXcd> es(t.H.matrix());
      std::vector<double> got;
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        CHECK(std::abs(es.eigenvalues()(i).imag()) < 1e-7);
        got.push_back(es.eigenvalues()(i).real());
      }
      std::sort(got.begin(), got.end());
      for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-7));
    }
  }
  for (const char* name : {"sl(2,R)", "u(3,3)", "sp(6,R)"}) {
    auto g = make_algebra(name);
    for (const auto& label : all_labels(g)) {
      const Element x = representative(g, label);
      if (x.norm() == 0.0) continue;
      CAPTURE(label_string(label));
      CHECK(jacobson_morozov(x).residual() < 1e-8);
    }
  }
}

TEST_CASE("Levi-scan oracle") {
  auto sl2 = make_algebra("sl(2,R)");
  CHECK(is_noticed_oracle(Element::basis_vector(sl2, 0)));
  CHECK_FALSE(is_noticed_oracle(Element::zero(sl2)));
  CHECK_THROWS_AS(is_noticed_oracle(Element::basis_vector(sl2, 1)), Error);

  auto spc = make_algebra("sp(4,C)");
  CHECK(is_noticed_oracle(representative(spc, Partition({4}))));
  CHECK_FALSE(is_noticed_oracle(representative(spc, Partition({2, 1, 1}))));
  // {2,2} meets the gl(2,C) Levi: X = [[0, 0], [0, 0]] + diag(J_2, -J_2^T).
  CHECK_FALSE(is_noticed_oracle(representative(spc, Partition({2, 2}))));

  // Compact forms have no proper Levi subalgebras.
  CHECK(is_noticed_oracle(Element::zero(make_algebra("su(2)"))));

  auto u22 = make_algebra("u(2,2)");
  for (const auto& s : enumerate_signed_diagrams(2, 2)) {
    CAPTURE(s.to_string());
    CHECK(is_noticed_oracle(representative(u22, s)) == is_noticed_rule(s));
  }
}

TEST_CASE("classification tables") {
  const auto u22 = classify_orbits("u(2,2)");
  CHECK(u22.size() == 10);
  CHECK(std::count_if(u22.begin(), u22.end(), [](const auto& c) { return c.noticed; }) == 6);
  for (const auto& c : u22) {
    CAPTURE(label_string(c.label));
    CHECK(c.dimension % 2 == 0);
    CHECK(c.noticed == c.centralizer.compact_mod_center);
    CHECK(c.noticed == c.noticed_oracle);
    CHECK(c.centralizer_compact_numeric == c.centralizer.compact_mod_center);
    CHECK(c.centralizer_dimension_numeric == c.centralizer.real_dimension());
    CHECK_FALSE(c.noticed_reference.has_value());
    CHECK_FALSE(c.discrepancy());
  }

  const auto spc = classify_orbits("sp(4,C)");
  REQUIRE(spc.size() == 4);
  for (const auto& c : spc) {
    CAPTURE(label_string(c.label));
    REQUIRE(c.noticed_reference.has_value());
    CHECK(c.centralizer_dimension_numeric == c.centralizer.real_dimension());
    CHECK(c.centralizer_compact_numeric == c.centralizer.compact_mod_center);
    CHECK(c.noticed == c.noticed_oracle);
  }
  CHECK(spc[0].dimension == 16);
  CHECK(spc[1].dimension == 12);
  CHECK(*spc[0].noticed_reference);
  CHECK(*spc[1].noticed_reference);
  CHECK(spc[0].noticed_oracle);
  CHECK_FALSE(spc[1].noticed_oracle);
  CHECK(spc[1].discrepancy());
  CHECK_FALSE(spc[0].discrepancy());
  CHECK_FALSE(spc[2].discrepancy());
  CHECK_FALSE(spc[3].discrepancy());

  // The compact form has only the zero orbit.
  const auto su2 = classify_orbits("su(2)");
  REQUIRE(su2.size() == 1);
  CHECK(su2[0].noticed);
  CHECK(su2[0].noticed_oracle);
  CHECK(su2[0].dimension == 0);

  CHECK_THROWS_AS(classify_orbits("sl(3,R)"), Error);
}

TEST_CASE("closure order") {
  std::vector<OrbitLabel> c4;
  for (auto& p : enumerate_partitions(4, FamilyTag::C)) c4.emplace_back(p);
  const auto covers = closure_order(c4);
  CHECK(covers == std::vector<Cover>{{0, 1}, {1, 2}, {2, 3}});

  // Brute force: covers of the dominance order on all partitions of 6.
  std::vector<OrbitLabel> a6;
  for (auto& p : enumerate_partitions(6, FamilyTag::A)) a6.emplace_back(p);
  auto geq = [&](size_t i, size_t j) {
    const auto& x = std::get<Partition>(a6[i]).parts();
    const auto& y = std::get<Partition>(a6[j]).parts();
    int sx = 0, sy = 0;
    for (size_t k = 0; k < 6; ++k) {
      sx += k < x.size() ? x[k] : 0;
      sy += k < y.size() ? y[k] : 0;
      if (sx < sy) return false;
    }
    return true;
  };
  std::vector<Cover> expected;
  for (size_t i = 0; i < a6.size(); ++i)
    for (size_t j = 0; j < a6.size(); ++j) {
      if (i == j || !geq(i, j)) continue;
      bool between = false;
      for (size_t k = 0; k < a6.size(); ++k)
        if (k != i && k != j && geq(i, k) && geq(k, j)) between = true;
      if (!between) expected.push_back({i, j});
    }
  CHECK(closure_order(a6) == expected);
  CHECK(expected.size() == 12);

  std::vector<OrbitLabel> mixed{Partition({2}), SignedYoungDiagram::parse("+-")};
  CHECK_THROWS_AS(closure_order(mixed), Error);

  const std::string dot = closure_dot(c4, covers);
  CHECK(dot.find("n0 -> n1;") != std::string::npos);
  CHECK(dot.find("label=\"2,2\"") != std::string::npos);

  const std::string tsv = orbit_table_tsv(classify_orbits("sp(4,C)"));
  CHECK(tsv.rfind("label\tdimension\tcentralizer\tnoticed_rule\tnoticed_oracle\n", 0) == 0);
  CHECK(tsv.find("2,2\t12\to(2,C)\tfalse\tfalse") != std::string::npos);
}
