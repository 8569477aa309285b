#pragma once

// Property suites behind `orbitkit verify`.

#include <string>
#include <vector>

#include "orbitkit/slicegeom.hpp"

namespace orbitkit::cli {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;  // measured quantity (error, dimension, ...)
  double bound = 0.0;  // threshold it is held to
  std::string detail;
};

const std::vector<std::string>& suite_names();
/// Throws orbitkit::Error(InvalidSpec) for an unknown suite.
std::vector<Check> run_suite(const std::string& name, const SolverOptions& opt);

}  // namespace orbitkit::cli
