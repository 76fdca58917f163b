#pragma once

#include <stdexcept>
#include <string>

namespace greenlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (alpha <= n, point off the window, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method (Newton shooting, adaptive quadrature) did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A geodesic, stencil or causal shadow left the compute window.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// exp_inverse target sits on the cut locus of a circle fiber.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

/// Time step violates the configured Courant limit.
class CflError : public Error {
 public:
  using Error::Error;
};

/// A region failed causal-compatibility validation.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

/// Scenario configuration could not be parsed or validated.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error("config field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace greenlab
