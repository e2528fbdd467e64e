#pragma once

#include <stdexcept>
#include <string>

namespace whs {

struct NonRealSpectrum : std::runtime_error {
  double t, max_imag;
  NonRealSpectrum(double t_, double imag_)
      : std::runtime_error("non-real spectrum at t=" + std::to_string(t_) +
                           " (|Im| = " + std::to_string(imag_) + ")"),
        t(t_), max_imag(imag_) {}
};

struct IdenticallyZeroDelta : std::runtime_error {
  IdenticallyZeroDelta() : std::runtime_error("Delta(., xi) is identically zero") {}
};

struct StiffnessFailure : std::runtime_error {
  double t;
  explicit StiffnessFailure(double t_)
      : std::runtime_error("step size collapsed at t=" + std::to_string(t_)), t(t_) {}
};

struct NonFiniteState : std::runtime_error {
  double t;
  explicit NonFiniteState(double t_)
      : std::runtime_error("state overflow at t=" + std::to_string(t_)), t(t_) {}
};

struct InsufficientRange : std::runtime_error {
  InsufficientRange() : std::runtime_error("growth fit needs >= 6 rows over >= 2 decades") {}
};

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Scenario parse / schema failure carrying the offending field.
struct ScenarioError : std::runtime_error {
  std::string field;
  int line;
  ScenarioError(std::string field_, int line_, const std::string& msg)
      : std::runtime_error("scenario field '" + field_ + "' (line " +
                           std::to_string(line_) + "): " + msg),
        field(std::move(field_)), line(line_) {}
};

}  // namespace whs
