#include "doctest.h"

#include <unsupported/Eigen/MatrixFunctions>

#include <random>

#include "orbitkit/liecore.hpp"

using namespace orbitkit;

namespace {

using cd = std::complex<double>;

VectorXd random_coords(const MatrixLieAlgebra& g, std::mt19937& rng, double sigma = 1.0) {
  std::normal_distribution<double> n(0.0, sigma);
  VectorXd v(g.dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = n(rng);
  return v;
}

MatrixXcd random_group_element(const AlgebraPtr& g, std::mt19937& rng, double sigma = 0.5) {
  return g->matrix(random_coords(*g, rng, sigma)).exp();
}

const char* kFamilies[] = {"sl(2,R)", "sl(3,R)", "gl(3,R)", "su(2)", "u(2)", "su(2,1)", "u(2,2)", "sp(4,R)", "sp(4,C)"};

}  // namespace

TEST_CASE("family dimensions and rank") {
  CHECK(make_algebra("sl(2,R)")->dim() == 3);
  CHECK(make_algebra("gl(3,R)")->dim() == 9);
  CHECK(make_algebra("su(2)")->dim() == 3);
  CHECK(make_algebra("u(2,2)")->dim() == 16);
  CHECK(make_algebra("su(2,1)")->dim() == 8);
  CHECK(make_algebra("sp(4,R)")->dim() == 10);
  CHECK(make_algebra("sp(4,C)")->dim() == 20);
  CHECK(make_algebra("sl(2,R)")->rank() == 1);
  CHECK(make_algebra("u(2,2)")->rank() == 4);
  CHECK(make_algebra("sp(4,C)")->rank() == 4);
  CHECK(make_algebra("u(2)")->center_basis().cols() == 1);
  CHECK(make_algebra("sp(4,R)")->center_basis().cols() == 0);
}

TEST_CASE("unsupported groups are rejected") {
  CHECK_THROWS_AS(parse_group("so(3)"), Error);
  CHECK_THROWS_AS(parse_group("sp(3,R)"), Error);
  CHECK_THROWS_AS(parse_group("sl(2,C)"), Error);
  try {
    parse_group("e8");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedFamily);
  }
}

TEST_CASE("trace form is symmetric, nondegenerate and invariant") {
  std::mt19937 rng(7);
  for (const char* name : kFamilies) {
    CAPTURE(name);
    auto g = make_algebra(name);
    const MatrixXd& k = g->traceform();
    CHECK((k - k.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(k.determinant()) > 1e-10);
    std::uniform_int_distribution<Eigen::Index> pick(0, g->dim() - 1);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const VectorXd x = VectorXd::Unit(g->dim(), pick(rng));
      const VectorXd y = VectorXd::Unit(g->dim(), pick(rng));
      const VectorXd z = VectorXd::Unit(g->dim(), pick(rng));
      worst = std::max(worst, std::abs(g->pair(g->bracket(x, y), z) + g->pair(y, g->bracket(x, z))));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("bracket") {
  auto g = make_algebra("sl(2,R)");
  const Element e = Element::basis_vector(g, 0), h = Element::basis_vector(g, 1), f = Element::basis_vector(g, 2);
  CHECK(bracket(e, e).norm() == doctest::Approx(0.0));
  CHECK((bracket(e, f) - h).norm() < 1e-14);
  CHECK((bracket(h, e) - 2.0 * e).norm() < 1e-14);

  // Jacobi identity on random sp(4,R) elements.
  auto sp = make_algebra("sp(4,R)");
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    Element a(sp, random_coords(*sp, rng)), b(sp, random_coords(*sp, rng)), c(sp, random_coords(*sp, rng));
    const Element jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
    CHECK(jac.norm() < 1e-10);
  }

  CHECK_THROWS_AS(bracket(e, Element::zero(make_algebra("sl(2,R)"))), Error);
}

TEST_CASE("centralizer") {
  auto g = make_algebra("sl(2,R)");
  CHECK(centralizer({Element::zero(g)}).dim() == 3);
  const Element f = Element::basis_vector(g, 2);
  const Subspace zf = centralizer({f});
  REQUIRE(zf.dim() == 1);
  CHECK(zf.contains(f.coords()));

  // sp(4,R), X = [[0, I], [0, 0]] (partition {2,2}). By hand: [M, X] = 0
  // forces C = 0 and A antisymmetric, [M, Y] = 0 forces B = 0, so the triple
  // centralizer is so(2).
  auto sp = make_algebra("sp(4,R)");
  MatrixXcd xm = MatrixXcd::Zero(4, 4);
  xm.topRightCorner(2, 2).setIdentity();
  const Element x = Element::from_matrix(sp, xm);
  const Sl2Triple t = jacobson_morozov(x);
  CHECK(centralizer(t).dim() == 1);
  CHECK_THROWS_AS(centralizer({x, Element::zero(g)}), Error);
}

TEST_CASE("jacobson-morozov") {
  auto g = make_algebra("sl(2,R)");
  const Element e = Element::basis_vector(g, 0);
  const Sl2Triple t = jacobson_morozov(e);
  CHECK((t.H - Element::basis_vector(g, 1)).norm() < 1e-10);
  CHECK((t.Y - Element::basis_vector(g, 2)).norm() < 1e-10);
  CHECK(t.residual() < 1e-10);

  try {
    jacobson_morozov(Element::zero(g));
    FAIL("expected ZeroNilpositive");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::ZeroNilpositive);
  }
  try {
    jacobson_morozov(Element::basis_vector(g, 1));
    FAIL("expected NotNilpotent");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotNilpotent);
  }

  auto sp = make_algebra("sp(4,R)");
  MatrixXcd xm = MatrixXcd::Zero(4, 4);
  xm.topRightCorner(2, 2) << 1.0, 0.5, 0.5, 2.0;
  const Sl2Triple ts = jacobson_morozov(Element::from_matrix(sp, xm));
  CHECK(ts.residual() < 1e-10);
  Eigen::ComplexEigenSolver<MatrixXcd> es(ts.H.matrix());
  std::vector<double> ev;
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(es.eigenvalues()(i).imag()) < 1e-9);
    ev.push_back(es.eigenvalues()(i).real());
  }
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(ev[1] == doctest::Approx(-1.0));
  CHECK(ev[2] == doctest::Approx(1.0));
  CHECK(ev[3] == doctest::Approx(1.0));
}

TEST_CASE("adjoint orbit dimension") {
  auto g = make_algebra("sl(2,R)");
  CHECK(adjoint_orbit_dimension(Element::zero(g)) == 0);
  CHECK(adjoint_orbit_dimension(Element::basis_vector(g, 0)) == 2);
  auto spc = make_algebra("sp(4,C)");
  MatrixXcd xm = MatrixXcd::Zero(4, 4);
  xm.topRightCorner(2, 2).setIdentity();
  const Element x = Element::from_matrix(spc, xm);
  CHECK(adjoint_orbit_dimension(x) == 12);
  CHECK(adjoint_orbit_dimension(x) + centralizer({x}).dim() == spc->dim());
}

TEST_CASE("group conjugation") {
  auto g = make_algebra("sl(2,R)");
  const Element e = Element::basis_vector(g, 0);
  CHECK((group_conjugate(MatrixXcd::Identity(2, 2), e) - e).norm() < 1e-15);
  const double s = 1.7;
  MatrixXcd d = MatrixXcd::Zero(2, 2);
  d(0, 0) = s;
  d(1, 1) = 1.0 / s;
  CHECK((group_conjugate(d, e) - s * s * e).norm() < 1e-12);

  auto su = make_algebra("su(2)");
  MatrixXcd xm = MatrixXcd::Zero(2, 2);
  xm(0, 0) = cd(0, 1);
  xm(1, 1) = cd(0, -1);
  const Element x = Element::from_matrix(su, xm);
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    const Element y = group_conjugate(random_group_element(su, rng, 1.0), x);
    CHECK(su->pair(y.coords(), y.coords()) == doctest::Approx(su->pair(x.coords(), x.coords())).epsilon(1e-12));
  }

  // Leaving the algebra is an error.
  MatrixXcd bad = MatrixXcd::Identity(2, 2);
  bad(0, 1) = 1.0;
  try {
    Element::from_matrix(g, bad);
    FAIL("expected NotInAlgebra");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotInAlgebra);
  }
}

TEST_CASE("orbit invariants") {
  auto g = make_algebra("sl(2,R)");
  CHECK(orbit_invariants(Element::zero(g)).cwiseAbs().maxCoeff() == 0.0);
  const double c = 2.5;
  MatrixXcd m(2, 2);
  m << 0.0, 1.0, -c, 0.0;
  const VectorXd inv = orbit_invariants(Element::from_matrix(g, m));
  CHECK(inv(0) == doctest::Approx(0.0));  // -trace
  CHECK(inv(1) == doctest::Approx(c));    // det

  std::mt19937 rng(5);
  for (const char* name : kFamilies) {
    CAPTURE(name);
    auto alg = make_algebra(name);
    const Element x(alg, random_coords(*alg, rng));
    const VectorXd base = orbit_invariants(x);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
      const Element y = group_conjugate(random_group_element(alg, rng, 0.3), x);
      worst = std::max(worst, (orbit_invariants(y) - base).cwiseAbs().maxCoeff() / std::max(1.0, base.cwiseAbs().maxCoeff()));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("algebra spec files") {
  const AlgebraSpec s = parse_algebra_spec("# u(2,2)\nfamily = u\np = 2\nq = 2\n");
  CHECK(s.family == Family::UPQ);
  CHECK(group_name(s) == "u(2,2)");
  CHECK(group_name(parse_algebra_spec("family = sp_complex\nn = 4\n")) == "sp(4,C)");

  // Basis override: sl(2,R) with (e + f, h, e - f).
  const AlgebraSpec o = parse_algebra_spec(
      "family = sl\nn = 2\n"
      "basis = 0 1 1 0\n"
      "basis = 1 0 0 -1\n"
      "basis = 0 1 -1 0\n");
  auto g = make_algebra(o);
  CHECK(g->dim() == 3);
  CHECK(g->rank() == 1);
  CHECK_THROWS_AS(make_algebra(parse_algebra_spec("family = sl\nn = 2\nbasis = 1 0 0 1\nbasis = 0 1 0 0\nbasis = 0 0 1 0\n")),
                  Error);
  CHECK_THROWS_AS(parse_algebra_spec("family = sl\nbogus = 1\n"), Error);
}
