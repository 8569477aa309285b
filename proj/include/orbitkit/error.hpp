#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitkit {

enum class ErrorCode {
  MixedAlgebras,
  NotInAlgebra,
  NotNilpotent,
  ZeroNilpositive,
  NoSolution,
  InvalidSpec,
  UnsupportedFamily,
  InvalidLabel,
  MixedFamilies,
  SpectrumViolation,
  DimensionTooHigh,
  NoConvergence,
  NonpositiveT,
  DegenerateForm,
  NotOnIntersection,
  TransversalityFailure,
  NoncompactOrbit,
  NonRegularInput,
  MixedDimensions,
  EmptySamples,
  UnsupportedOrbit,
  TailBoundViolation,
  NotRegular,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orbitkit
