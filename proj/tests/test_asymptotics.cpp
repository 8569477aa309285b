#include "doctest.h"

#include <cmath>
#include <numbers>

#include "orbitkit/asymptotics.hpp"
#include "orbitkit/error.hpp"

using namespace orbitkit;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an orbitkit::Error");
  return ErrorCode::NoSolution;
}

Element at(const AlgebraPtr& g, std::vector<double> c) { return Element(g, Eigen::Map<VectorXd>(c.data(), Eigen::Index(c.size()))); }

// Gaussian of width w at distance d from the centre of the su(2) sphere of
// coordinate radius r (the orbit of r diag(i,-i), total mass 2r):
// 2r / (4 pi r^2) * 2 pi r^2 int_{-1}^{1} exp(-(r^2 + d^2 - 2 r d u) / 2w^2) du.
double sphere_gaussian(double r, double d, double w) {
  return r * std::exp(-(r * r + d * d) / (2 * w * w)) * (2 * w * w / (r * d)) * std::sinh(r * d / (w * w));
}

// Centred gaussian on the nilpotent cone through e in sl(2,R). On the
// sweep |xi|^2 = e^{2s}(1 - sin^2(theta)/4) with density e^s / 4pi, so the
// s-integral is sqrt(pi/2) w / sqrt(q) and the theta-integral is 4 K(1/2).
double cone_gaussian(double w) { return w * std::sqrt(kPi / 2) / (4 * kPi) * 4 * std::comp_ellint_1(0.5); }

std::vector<TestFunction> bank(const AlgebraPtr& g) {
  std::vector<TestFunction> out;
  const Eigen::Index n = g->dim();
  out.push_back(TestFunction::gaussian(Element::zero(g), 1.0));
  out.push_back(TestFunction::gaussian(Element::zero(g), 0.6));
  out.push_back(TestFunction::gaussian(Element::zero(g), 1.7));
  VectorXd c = VectorXd::Zero(n);
  c(0) = 0.3;
  out.push_back(TestFunction::gaussian(Element(g, c), 1.2));
  c.setZero();
  c(n - 1) = -0.4;
  c(1) = 0.2;
  out.push_back(TestFunction::gaussian(Element(g, c), 0.9));
  return out;
}

}  // namespace

TEST_CASE("test functions") {
  auto g = make_algebra("sl(2,R)");
  const auto gauss = TestFunction::gaussian(Element::zero(g), 2.0);
  CHECK(gauss(VectorXd::Zero(3)) == 1.0);
  CHECK(gauss(VectorXd::Unit(3, 1) * 2.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  const auto b = TestFunction::bump(Element::zero(g), 1.0);
  CHECK(b(VectorXd::Unit(3, 0)) == 0.0);
  CHECK(b(VectorXd::Zero(3)) == doctest::Approx(std::exp(-1.0)));
  CHECK(code_of([&] { TestFunction::gaussian(Element::zero(g), 0.0); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("orbital integrals on su(2) spheres") {
  auto g = make_algebra("su(2)");
  const Element d = Element::basis_vector(g, 0);
  for (double r : {0.5, 1.0, 2.0}) {
    const Element nu = r * d;
    // Widening gaussians tend to the constant 1.
    CHECK(orbital_integral(nu, TestFunction::gaussian(Element::zero(g), 1e5)) ==
          doctest::Approx(symplectic_volume(nu)).epsilon(1e-9));
    for (auto [dist, w] : {std::pair{0.4, 0.8}, std::pair{1.3, 0.5}, std::pair{3.0, 2.0}}) {
      const Element c = at(g, {0.6 * dist, 0.0, 0.8 * dist});
      CHECK(orbital_integral(nu, TestFunction::gaussian(c, w)) ==
            doctest::Approx(sphere_gaussian(r, dist, w)).epsilon(1e-9));
    }
    // Far-away narrow gaussians see nothing.
    CHECK(orbital_integral(nu, TestFunction::gaussian(at(g, {50.0, 0.0, 0.0}), 0.1)) < 1e-100);
    // Bumps are fine on compact orbits.
    CHECK(orbital_integral(nu, TestFunction::bump(Element::zero(g), 0.5 * r)) == 0.0);
  }
  // Linearity: the rule is a fixed weighted sum once the theta levels
  // settle, so a + b matches the pointwise sum integrated directly.
  const Element nu = 0.8 * d;
  const auto f1 = TestFunction::gaussian(at(g, {0.2, 0.1, 0.0}), 0.7);
  const auto f2 = TestFunction::gaussian(at(g, {-0.5, 0.3, 0.4}), 1.1);
  const double a = orbital_integral(nu, f1), b = orbital_integral(nu, f2);
  double sum = 0.0;
  for (const auto& fn : {f1, f2}) sum += orbital_integral(nu, fn);
  CHECK(std::abs(sum - (a + b)) < 1e-12);
  CHECK(a + b == doctest::Approx(sphere_gaussian(0.8, at(g, {0.2, 0.1, 0.0}).norm(), 0.7) +
                                 sphere_gaussian(0.8, at(g, {-0.5, 0.3, 0.4}).norm(), 1.1))
                     .epsilon(1e-8));
  // The zero orbit is a unit point mass.
  CHECK(orbital_integral(Element::zero(g), f1) == doctest::Approx(f1(VectorXd::Zero(3))));
}

TEST_CASE("orbital integrals on sl(2,R)") {
  auto g = make_algebra("sl(2,R)");
  const Element e = Element::basis_vector(g, 0), h = Element::basis_vector(g, 1), f = Element::basis_vector(g, 2);
  for (double w : {0.5, 1.0, 2.0}) {
    const auto fn = TestFunction::gaussian(Element::zero(g), w);
    CHECK(orbital_integral(e, fn) == doctest::Approx(cone_gaussian(w)).epsilon(1e-8));
    CHECK(orbital_integral(-1.0 * e, fn) == doctest::Approx(cone_gaussian(w)).epsilon(1e-8));
    CHECK(orbital_integral(f, fn) == doctest::Approx(cone_gaussian(w)).epsilon(1e-8));
  }
  // The cone is a cone: dilating it scales the canonical measure by t.
  const auto fn = TestFunction::gaussian(at(g, {0.3, -0.2, 0.1}), 0.8);
  const auto wide = TestFunction::gaussian(at(g, {0.3 / 3, -0.2 / 3, 0.1 / 3}), 0.8 / 3);
  CHECK(orbital_integral(e, wide) == doctest::Approx(orbital_integral(e, fn) / 3.0).epsilon(1e-8));
  // Sheets and hyperboloids integrate finitely.
  CHECK(orbital_integral(e - f, fn) > 0.0);
  CHECK(orbital_integral(h, fn) > 0.0);
  CHECK(code_of([&] { orbital_integral(h, TestFunction::bump(Element::zero(g), 1.0)); }) ==
        ErrorCode::UnsupportedOrbit);
  CHECK(code_of([&] { orbital_integral(Element::basis_vector(make_algebra("u(2,2)"), 0),
                                       TestFunction::gaussian(Element::zero(make_algebra("u(2,2)")), 1.0)); }) ==
        ErrorCode::MixedAlgebras);
  auto big = make_algebra("su(2,1)");
  CHECK(code_of([&] { orbital_integral(Element::basis_vector(big, 0), TestFunction::gaussian(Element::zero(big), 1.0)); }) ==
        ErrorCode::UnsupportedOrbit);
}

TEST_CASE("limit formula") {
  SUBCASE("su(2)") {
    auto g = make_algebra("su(2)");
    const auto rep = limit_formula_check(0.5 * Element::basis_vector(g, 0), nilpotent_catalog(g), bank(g));
    MESSAGE(rep.to_record());
    CHECK(rep.predicted_exponent == 1.0);
    CHECK(rep.rows.size() == 5);
    CHECK(rep.passed());
  }
  auto g = make_algebra("sl(2,R)");
  const Element e = Element::basis_vector(g, 0), h = Element::basis_vector(g, 1), f = Element::basis_vector(g, 2);
  const auto catalog = nilpotent_catalog(g);
  SUBCASE("sl(2,R) elliptic") {
    const auto rep = limit_formula_check(e - f, catalog, bank(g));
    MESSAGE(rep.to_record());
    CHECK(rep.predicted_exponent == 0.0);
    CHECK(rep.cone_orbits == std::vector<std::string>{"+-"});
    CHECK(rep.passed());
  }
  SUBCASE("sl(2,R) hyperbolic") {
    const auto rep = limit_formula_check(h, catalog, bank(g));
    MESSAGE(rep.to_record());
    CHECK(rep.predicted_exponent == 0.0);
    CHECK(rep.cone_orbits.size() == 2);
    CHECK(rep.passed());
  }
  SUBCASE("validation") {
    CHECK(code_of([&] { limit_formula_check(Element::zero(g), catalog, bank(g)); }) == ErrorCode::NotRegular);
    CHECK(code_of([&] { limit_formula_check(h, catalog, bank(g), {0.5, 0.25, 0.25}); }) == ErrorCode::InvalidSpec);
  }
}

TEST_CASE("chamber invariance on sl(2,R)") {
  auto g = make_algebra("sl(2,R)");
  const Element e = Element::basis_vector(g, 0), h = Element::basis_vector(g, 1), f = Element::basis_vector(g, 2);
  const auto catalog = nilpotent_catalog(g);
  // The zero slice is all of g, so the zero orbit is always present.
  auto with_zero = [&](const char* half) {
    std::vector<std::string> out;
    for (const auto& entry : catalog)
      if (entry.X.norm() == 0.0 || entry.name == half) out.push_back(entry.name);
    return out;
  };
  // A path inside the upper elliptic chamber (det > 0, e-coefficient > f's).
  std::vector<Element> path;
  for (double a : {0.0, 0.3, 0.6}) path.push_back((1.0 + a) * e - (1.0 - 0.5 * a) * f + a * h);
  for (const auto& x : path) REQUIRE(x.matrix().determinant().real() > 0.0);
  for (size_t i = 0; i < path.size(); ++i)
    for (size_t j = 0; j < path.size(); ++j) {
      const auto r = chamber_invariance_check(path[i], path[j], catalog);
      CHECK(r.equal);
      CHECK(r.nu_set == with_zero("+-"));
      CHECK(r.equal == chamber_invariance_check(path[j], path[i], catalog).equal);
    }
  const auto opposite = chamber_invariance_check(e - f, f - e, catalog);
  CHECK_FALSE(opposite.equal);
  CHECK(opposite.nu_set == with_zero("+-"));
  CHECK(opposite.lambda_set == with_zero("-+"));
  CHECK(chamber_invariance_check(h, h, catalog).equal);
  CHECK(code_of([&] { chamber_invariance_check(e, Element::zero(g), catalog); }) == ErrorCode::NotRegular);
}

TEST_CASE("Fourier transform of su(2) orbits") {
  auto g = make_algebra("su(2)");
  const Element d = Element::basis_vector(g, 0);
  // x conjugate to theta diag(i,-i) has <x,x> = -2 theta^2; integrating
  // exp(-2 i r theta u) over the sphere of mass 2r gives sin(2 r theta)/theta.
  auto closed = [&](double r, const Element& x) {
    const double theta = std::sqrt(g->pair(x.coords(), x.coords()) / -2.0);
    return theta == 0.0 ? 2 * r : std::sin(2 * r * theta) / theta;
  };
  int n = 0;
  for (int k = 0; k < 20; ++k) {
    const double r = 0.5 * (1 + k % 4);
    const Element x = at(g, {std::sin(1.3 * k + 0.2), 1.7 * std::cos(0.7 * k), 0.9 * std::sin(0.4 * k + 1.0)});
    const auto v = orbit_fourier(r * d, x);
    const double ref = closed(r, x);
    CHECK(std::abs(v - ref) <= 1e-6 * std::max(1.0, std::abs(ref)));
    ++n;
  }
  CHECK(n == 20);
  for (int k = 0; k <= 5; ++k) {
    const Element nu = 0.5 * (k + 1) * d;
    CHECK(std::abs(orbit_fourier(nu, Element::zero(g)) - symplectic_volume(nu)) < 1e-8);
  }
  Eigen::Matrix2cd u;
  u << std::cos(0.7), std::complex<double>(0, std::sin(0.7)), std::complex<double>(0, std::sin(0.7)), std::cos(0.7);
  const Element x = at(g, {0.4, -1.1, 0.3});
  CHECK(std::abs(orbit_fourier(1.5 * d, group_conjugate(u, x)) - orbit_fourier(1.5 * d, x)) < 1e-8);
  CHECK(code_of([&] { orbit_fourier(Element::basis_vector(make_algebra("sl(2,R)"), 1),
                                    Element::zero(make_algebra("sl(2,R)"))); }) == ErrorCode::MixedAlgebras);
  auto sl = make_algebra("sl(2,R)");
  CHECK(code_of([&] { orbit_fourier(Element::basis_vector(sl, 1), Element::zero(sl)); }) == ErrorCode::NoncompactOrbit);
}
