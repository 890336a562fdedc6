#ifndef VHRD_ERRORS_HPP
#define VHRD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vhrd {

// Exception hierarchy; the CLI maps each type to a distinct exit code.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid model data: hypothesis violations, bad parameter ranges.
struct ValidationError : Error {
  using Error::Error;
};

// Bad numerical settings (grid too coarse, dt not dividing the period, ...).
struct NumericsError : Error {
  using Error::Error;
};

// Operator assembly failed (non-positive diffusivity sample, ...).
struct AssemblyError : Error {
  using Error::Error;
};

struct SingularSystemError : Error {
  using Error::Error;
};

// A state component dipped below the positivity floor during time stepping.
struct PositivityError : Error {
  PositivityError(const std::string& component, int node, double time, double value);
  std::string component;
  int node;
  double time;
  double value;
};

// Iteration cap reached (period-map power iteration, orbit extraction).
struct NonConvergenceError : Error {
  NonConvergenceError(const std::string& what_failed, double residual, int iterations);
  double residual;
  int iterations;
};

// mu-bracket for the reproduction-number root could not be established.
struct BracketError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// Requested a configuration the scheme does not support
// (e.g. the standard-incidence model under Dirichlet conditions).
struct UnsupportedError : Error {
  using Error::Error;
};

}  // namespace vhrd

#endif
