// orbitkit command-line front end.
//
// Exit codes: 0 clean, 1 internal error or failed verification, 2 invalid
// input, 3 classification finished with a noticed-set discrepancy, 4 a kept
// wave-front orbit failed the centralizer compactness criterion.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "orbitkit/asymptotics.hpp"
#include "orbitkit/orbitcomb.hpp"
#include "orbitkit/slicegeom.hpp"
#include "run_support.hpp"
#include "suites.hpp"

using namespace orbitkit;
using namespace orbitkit::cli;

namespace {

enum Exit { kOk = 0, kInternal = 1, kInvalid = 2, kDiscrepancy = 3, kCriterion = 4 };

struct Globals {
  std::string out = "orbitkit-out";
  double tol = 1e-8;
  double box = 1e3;
  std::string cache;
};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string coords_string(const VectorXd& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v(i));
  return s;
}

Element element_from(const AlgebraPtr& g, const std::vector<double>& c, const std::string& what) {
  if (Eigen::Index(c.size()) != g->dim())
    throw Error(ErrorCode::InvalidSpec, what + " has " + std::to_string(c.size()) + " coordinates, " + g->name() +
                                            " needs " + std::to_string(g->dim()));
  return Element(g, Eigen::Map<const VectorXd>(c.data(), Eigen::Index(c.size())));
}

SolverOptions solver(const Globals& gl) {
  SolverOptions opt;
  opt.tol = gl.tol;
  opt.box = gl.box;
  return opt;
}

json numeric_config(const Globals& gl) {
  return {{"tolerances", {{"solver", gl.tol}, {"rank_relative", kRankCutoff}, {"quadrature_tail", 1e-6}}},
          {"box_radius", gl.box},
          {"grid",
           {{"seeds", "origin plus axis and diagonal rays at 11 log-spaced radii"},
            {"chart_quadrature", "21x21 trapezoid per chart, bump radius 2h, h = spread/10"},
            {"orbit_quadrature", "12-point Gauss-Legendre panels of width 0.25, theta trapezoid 32..8192"},
            {"t_grid", default_t_grid()}}}};
}

// ---------------------------------------------------------------- commands

RunResult cmd_classify(const std::string& group, const std::string& format) {
  const AlgebraPtr g = make_algebra(group);
  const auto table = classify_orbits(g);
  std::vector<OrbitLabel> labels;
  for (const auto& row : table) labels.push_back(row.label);
  const auto covers = closure_order(labels);

  RunResult r;
  r.artifacts.push_back({"orbits.tsv", orbit_table_tsv(table)});
  r.artifacts.push_back({"orbits.txt", orbit_table_records(g->name(), table)});
  r.artifacts.push_back({"closure.dot", closure_dot(labels, covers)});

  int rule = 0, oracle = 0;
  std::ostringstream os;
  for (const auto& row : table) {
    rule += row.noticed;
    oracle += row.noticed_oracle;
  }
  os << "# " << g->name() << ": " << table.size() << " orbit classes, " << rule << " noticed (rule), " << oracle
     << " noticed (oracle)\n";
  if (const auto ref = reference_noticed(g->name())) {
    os << "# reference noticed set:";
    for (const auto& l : *ref) os << " {" << l << "}";
    os << "\n";
  }
  for (const auto& row : table) {
    if (!row.discrepancy()) continue;
    r.exit_code = kDiscrepancy;
    os << "# discrepancy {" << label_string(row.label) << "}: rule=" << row.noticed << " oracle=" << row.noticed_oracle;
    if (row.noticed_reference) os << " reference=" << *row.noticed_reference;
    os << "\n";
  }
  os << (format == "dot" ? r.artifacts[2].content : format == "records" ? r.artifacts[1].content : r.artifacts[0].content);
  r.stdout_text = os.str();
  return r;
}

RunResult cmd_wavefront(const CaseConfig& c, const Globals& gl) {
  const AlgebraPtr g = make_algebra(c.algebra);
  if (c.nus.empty()) throw Error(ErrorCode::InvalidSpec, "case file lists no nu");
  std::vector<Element> nus;
  for (size_t i = 0; i < c.nus.size(); ++i) nus.push_back(element_from(g, c.nus[i], "nu " + std::to_string(i)));
  std::vector<NilpotentEntry> catalog;
  if (c.nilpotents.empty()) {
    catalog = nilpotent_catalog(g);
  } else {
    for (const auto& [name, coords] : c.nilpotents) catalog.push_back(make_catalog_entry(name, element_from(g, coords, name)));
  }
  const WaveFrontCycle cycle = wavefront_cycle(nus, catalog, solver(gl));

  RunResult r;
  std::ostringstream terms, evidence, os;
  terms << "label\tdimension\tcoefficient\tcriterion\n";
  for (const auto& t : cycle.terms)
    terms << t.name << "\t" << t.dimension << "\t" << num(t.coefficient) << "\t" << (t.criterion_passed ? "pass" : "fail")
          << "\n";
  evidence << "label\tdimension\tnu\tnonempty\tcompact\tvolume\tkept\n";
  for (const auto& ev : cycle.evidence)
    for (size_t i = 0; i < ev.nonempty.size(); ++i)
      evidence << ev.name << "\t" << ev.dimension << "\t" << i << "\t" << ev.nonempty[i] << "\t" << ev.compact[i] << "\t"
               << num(ev.volumes[i]) << "\t" << ev.kept << "\n";
  r.artifacts.push_back({"wavefront.tsv", terms.str()});
  r.artifacts.push_back({"evidence.tsv", evidence.str()});

  os << "# " << g->name() << ": " << nus.size() << " regular orbit(s), " << catalog.size() << " nilpotent orbit(s)\n";
  os << "WF =";
  if (cycle.terms.empty()) os << " 0";
  for (size_t i = 0; i < cycle.terms.size(); ++i)
    os << (i ? " +" : "") << " " << num(cycle.terms[i].coefficient) << " [" << cycle.terms[i].name << "]";
  os << "\n";
  for (const auto& t : cycle.terms) {
    os << "# centralizer of [" << t.name << "] compact mod center: " << (t.criterion_passed ? "yes" : "NO") << "\n";
    if (!t.criterion_passed) r.exit_code = kCriterion;
  }
  r.stdout_text = os.str();
  return r;
}

RunResult cmd_verify(const std::string& suite, const Globals& gl) {
  const auto checks = run_suite(suite, solver(gl));
  RunResult r;
  std::ostringstream tsv, os;
  tsv << "suite\tcheck\tstatus\tvalue\tbound\tdetail\n";
  int failed = 0;
  for (const auto& c : checks) {
    tsv << suite << "\t" << c.name << "\t" << (c.passed ? "pass" : "fail") << "\t" << num(c.value) << "\t" << num(c.bound)
        << "\t" << c.detail << "\n";
    if (!c.passed) {
      ++failed;
      os << "FAIL " << c.name << " (" << num(c.value) << " > " << num(c.bound) << ")\n";
    }
  }
  os << suite << ": " << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  r.artifacts.push_back({"verify.tsv", tsv.str()});
  r.stdout_text = os.str();
  r.exit_code = failed ? kInternal : kOk;
  return r;
}

RunResult cmd_fourier(const CaseConfig& c) {
  const AlgebraPtr g = make_algebra(c.algebra);
  if (c.nus.size() != 1) throw Error(ErrorCode::InvalidSpec, "fourier needs exactly one nu");
  const Element nu = element_from(g, c.nus[0], "nu");
  std::vector<Element> xs;
  for (size_t i = 0; i < c.xs.size(); ++i) xs.push_back(element_from(g, c.xs[i], "x " + std::to_string(i)));
  if (xs.empty()) xs.push_back(Element::zero(g));

  RunResult r;
  std::ostringstream tsv, os;
  tsv << "x\tre\tim\n";
  for (const auto& x : xs) {
    const auto v = orbit_fourier(nu, x);
    tsv << coords_string(x.coords()) << "\t" << num(v.real()) << "\t" << num(v.imag()) << "\n";
  }
  const double vol = symplectic_volume(nu);
  os << "# " << g->name() << ": symplectic volume " << num(vol) << "\n" << tsv.str();
  r.artifacts.push_back({"fourier.tsv", tsv.str()});
  r.stdout_text = os.str();
  return r;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec:
    case ErrorCode::UnsupportedFamily:
    case ErrorCode::InvalidLabel:
    case ErrorCode::MixedAlgebras:
    case ErrorCode::NotInAlgebra:
    case ErrorCode::NotNilpotent:
    case ErrorCode::NonRegularInput:
    case ErrorCode::NotRegular:
    case ErrorCode::NoncompactOrbit:
    case ErrorCode::UnsupportedOrbit:
    case ErrorCode::DimensionTooHigh:
      return kInvalid;
    default:
      return kInternal;
  }
}

// Digest, cache lookup, run, artifacts and manifest.
int execute(const Globals& gl, const std::string& command, json config, const std::function<RunResult()>& body) {
  config["command"] = command;
  config["version"] = kVersion;
  const std::string digest = fnv1a64(config.dump());
  const ResultCache cache = ResultCache::from(gl.cache);
  const auto t0 = std::chrono::steady_clock::now();

  std::string state = cache.enabled() ? "miss" : "off";
  RunResult result;
  if (auto hit = cache.load(digest)) {
    result = std::move(*hit);
    state = "hit";
  } else {
    try {
      result = body();
    } catch (const Error& e) {
      std::cerr << "orbitkit " << command << ": " << e.what() << "\n";
      return exit_for(e.code());
    }
    cache.store(digest, result);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_run(gl.out, command, config, digest, result, wall, state);
  std::cout << result.stdout_text;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nilpotent orbits, slices and wave-front cycles of small classical Lie algebras"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--out", gl.out, "Output directory for tables and manifest.json")->capture_default_str();
  app.add_option("--tol", gl.tol, "Solver tolerance for orbit membership")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--box", gl.box, "Search radius in slice coordinates")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--cache", gl.cache, "Result cache directory (default: $ORBITKIT_CACHE)");

  std::string group, format = "tsv";
  auto* classify = app.add_subcommand("classify", "Nilpotent orbit table, closure order and noticed orbits");
  classify->add_option("group", group, "e.g. u(2,2), sp(4,C), su(2)")->required();
  classify->add_option("--format", format, "Table written to stdout")->check(CLI::IsMember({"tsv", "dot", "records"}));

  std::string case_path;
  auto* wavefront = app.add_subcommand("wavefront", "Wave-front cycle of a union of regular orbits");
  wavefront->add_option("--case", case_path, "Case file")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a property suite over the gold cases");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));

  auto* fourier = app.add_subcommand("fourier", "Fourier transform of a compact orbit at sample points");
  fourier->add_option("--case", case_path, "Case file")->required();

  for (auto* sub : {classify, wavefront, verify, fourier}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*classify) {
      return execute(gl, "classify", {{"group", group}, {"format", format}}, [&] { return cmd_classify(group, format); });
    }
    if (*verify) {
      json cfg = numeric_config(gl);
      cfg["suite"] = suite;
      return execute(gl, "verify", cfg, [&] { return cmd_verify(suite, gl); });
    }
    CaseConfig c;
    try {
      c = CaseConfig::load(case_path);
    } catch (const Error& e) {
      std::cerr << "orbitkit: " << e.what() << "\n";
      return kInvalid;
    }
    json cfg = numeric_config(gl);
    cfg["case"] = c.to_json();
    if (*wavefront) return execute(gl, "wavefront", cfg, [&] { return cmd_wavefront(c, gl); });
    cfg.erase("grid");
    return execute(gl, "fourier", cfg, [&] { return cmd_fourier(c); });
  } catch (const std::exception& e) {
    std::cerr << "orbitkit: internal error: " << e.what() << "\n";
    return kInternal;
  }
}
