#include "suites.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "orbitkit/asymptotics.hpp"
#include "orbitkit/orbitcomb.hpp"

namespace orbitkit::cli {

namespace {

Check at_most(std::string name, double value, double bound, std::string detail = {}) {
  return {std::move(name), value <= bound, value, bound, std::move(detail)};
}

Check holds(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, ok ? 1.0 : 0.0, 1.0, std::move(detail)};
}

struct Sl2 {
  AlgebraPtr g = make_algebra("sl(2,R)");
  Element e = Element::basis_vector(g, 0);
  Element h = Element::basis_vector(g, 1);
  Element f = Element::basis_vector(g, 2);
};

// Regular elements of sl(2,R) with their names, one per kind of orbit.
std::vector<std::pair<std::string, Element>> sl2_gold(const Sl2& s) {
  return {{"elliptic+", s.e - s.f}, {"elliptic-", s.f - s.e}, {"hyperbolic", 0.7 * s.h}};
}

std::vector<TestFunction> gaussian_bank(const AlgebraPtr& g) {
  std::vector<TestFunction> out;
  const Eigen::Index n = g->dim();
  for (double w : {0.6, 1.0, 1.7}) out.push_back(TestFunction::gaussian(Element::zero(g), w));
  VectorXd c = VectorXd::Zero(n);
  c(0) = 0.3;
  out.push_back(TestFunction::gaussian(Element(g, c), 1.2));
  c.setZero();
  c(1) = 0.2;
  c(n - 1) = -0.4;
  out.push_back(TestFunction::gaussian(Element(g, c), 0.9));
  return out;
}

std::vector<Check> suite_slices(const SolverOptions& opt) {
  std::vector<Check> out;
  for (const char* name : {"sl(2,R)", "su(2)", "u(1,1)", "su(2,1)", "sp(4,R)"}) {
    for (const auto& entry : nilpotent_catalog(make_algebra(name))) {
      const std::string tag = std::string(name) + " " + entry.name;
      double top = -std::numeric_limits<double>::infinity();
      for (double ev : entry.slice.spectrum) top = std::max(top, ev);
      if (!entry.slice.spectrum.empty()) out.push_back(at_most(tag + " ad_H spectrum", top, 1e-8));
      const auto in = intersect_orbit_slice(entry.X, entry.slice, opt);
      const double err = in.samples.size() == 1 ? (in.samples[0] - entry.X).norm() : 1.0;
      out.push_back(at_most(tag + " self-intersection is {X}", err, 1e-9,
                            std::to_string(in.samples.size()) + " points"));
    }
  }
  Sl2 s;
  const SlodowySlice sl = slice_at(s.e);
  for (double c : {0.5, 2.0}) {
    const auto in = intersect_orbit_slice(std::sqrt(c) * (s.e - s.f), sl, opt);
    Eigen::Matrix2cd want;
    want << 0, 1, -c, 0;
    const double err = in.samples.size() == 1 ? (in.samples[0].matrix() - want).norm() : 1.0;
    out.push_back(at_most("sl(2,R) elliptic det " + std::to_string(c) + " meets S_e at e - c f", err, 1e-9));
  }
  return out;
}

std::vector<Check> suite_scaling(const SolverOptions& opt) {
  std::vector<Check> out;
  Sl2 s;
  for (const auto& entry : nilpotent_catalog(s.g)) {
    if (entry.X.norm() == 0.0) continue;
    for (const auto& [tag, nu] : sl2_gold(s)) {
      const std::string name = "sl(2,R) " + tag + " at " + entry.name;
      const auto base = intersect_orbit_slice(nu, entry.slice, opt);
      for (double t : {0.1, 1.0, 10.0}) {
        const bool same = intersect_orbit_slice(t * nu, entry.slice, opt).empty() == base.empty();
        out.push_back(holds(name + " nonempty at t=" + std::to_string(t), same));
      }
      if (base.empty()) continue;
      for (double t : {0.25, 4.0}) {
        const auto scaled = intersect_orbit_slice(t * nu, entry.slice, opt);
        double worst = scaled.samples.size() == base.samples.size() ? 0.0 : 1.0;
        for (const auto& xi : base.samples) {
          const Element moved = scale_slice_point(entry.slice, xi, t);
          double best = std::numeric_limits<double>::infinity();
          for (const auto& p : scaled.samples) best = std::min(best, (p - moved).norm());
          worst = std::max(worst, best);
        }
        out.push_back(at_most(name + " scaling identity t=" + std::to_string(t), worst, 1e-7));
        const double v0 = slice_volume(base), vt = slice_volume(scaled);
        out.push_back(at_most(name + " volume invariance t=" + std::to_string(t), std::abs(vt - v0) / v0, 1e-6));
      }
    }
  }
  // Two-dimensional case: su(2) zero slice, m = 1, chart quadrature.
  auto su = make_algebra("su(2)");
  const Element nu = 0.5 * Element::basis_vector(su, 0);
  const double q1 = quadrature_volume(intersect_orbit_slice(nu, zero_slice(su), opt), opt);
  for (double t : {0.25, 4.0}) {
    const double qt = quadrature_volume(intersect_orbit_slice(t * nu, zero_slice(su), opt), opt);
    out.push_back(at_most("su(2) zero slice quadrature invariance t=" + std::to_string(t), std::abs(qt / t - q1) / q1,
                          2e-2));
  }
  return out;
}

std::vector<Check> suite_limits(const SolverOptions&) {
  std::vector<Check> out;
  auto su = make_algebra("su(2)");
  Sl2 s;
  const std::vector<std::tuple<std::string, Element, std::vector<NilpotentEntry>>> cases = {
      {"su(2)", 0.5 * Element::basis_vector(su, 0), nilpotent_catalog(su)},
      {"sl(2,R) elliptic", s.e - s.f, nilpotent_catalog(s.g)},
      {"sl(2,R) hyperbolic", s.h, nilpotent_catalog(s.g)},
  };
  for (const auto& [tag, nu, catalog] : cases) {
    const auto rep = limit_formula_check(nu, catalog, gaussian_bank(nu.algebra()));
    for (const auto& row : rep.rows) {
      out.push_back(at_most(tag + " exponent " + row.function, row.exponent_error, 0.05));
      out.push_back(at_most(tag + " coefficient " + row.function, row.coefficient_error, 0.05));
    }
  }
  return out;
}

std::vector<Check> suite_chambers(const SolverOptions& opt) {
  std::vector<Check> out;
  Sl2 s;
  const auto catalog = nilpotent_catalog(s.g);
  const std::vector<Element> upper = {s.e - s.f, 1.3 * s.e - 0.85 * s.f + 0.3 * s.h, 1.6 * s.e - 0.7 * s.f + 0.6 * s.h};
  for (size_t i = 0; i + 1 < upper.size(); ++i) {
    const auto r = chamber_invariance_check(upper[i], upper[i + 1], catalog, opt);
    out.push_back(holds("same chamber pair " + std::to_string(i), r.equal));
  }
  const auto r = chamber_invariance_check(upper.front(), upper.back(), catalog, opt);
  out.push_back(holds("same chamber path endpoints", r.equal));
  const auto opp = chamber_invariance_check(s.e - s.f, s.f - s.e, catalog, opt);
  out.push_back(holds("opposite chambers differ", !opp.equal));
  const auto back = chamber_invariance_check(s.f - s.e, s.e - s.f, catalog, opt);
  out.push_back(holds("symmetric", back.equal == opp.equal && back.nu_set == opp.lambda_set));
  return out;
}

std::vector<Check> suite_lemma41(const SolverOptions&) {
  std::vector<Check> out;
  for (const char* name : {"sl(2,R)", "su(1,1)", "sp(4,R)", "su(2,1)"}) {
    auto g = make_algebra(name);
    for (const auto& entry : nilpotent_catalog(g)) {
      if (entry.X.norm() == 0.0) continue;
      const auto samples = slice_regular_samples(entry.slice, 5);
      const Subspace z = lemma41_check(entry.slice, reductive_centralizer_numeric(entry.X), samples);
      out.push_back(at_most(std::string(name) + " " + entry.name + " center dimension",
                            double(z.dim()), double(g->center_basis().cols())));
    }
  }
  return out;
}

std::vector<Check> suite_kirillov(const SolverOptions&) {
  std::vector<Check> out;
  auto g = make_algebra("su(2)");
  for (int k = 0; k <= 5; ++k) {
    const double v = symplectic_volume(0.5 * (k + 1) * Element::basis_vector(g, 0));
    out.push_back(at_most("su(2) k=" + std::to_string(k) + " volume", std::abs(v - (k + 1)), 1e-6,
                          "volume " + std::to_string(v)));
  }
  return out;
}

using Suite = std::function<std::vector<Check>(const SolverOptions&)>;

const std::map<std::string, Suite>& registry() {
  static const std::map<std::string, Suite> r = {
      {"slices", suite_slices}, {"scaling", suite_scaling}, {"limits", suite_limits},
      {"chambers", suite_chambers}, {"lemma41", suite_lemma41}, {"kirillov", suite_kirillov},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

std::vector<Check> run_suite(const std::string& name, const SolverOptions& opt) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorCode::InvalidSpec, "unknown suite '" + name + "'");
  return it->second(opt);
}

}  // namespace orbitkit::cli
