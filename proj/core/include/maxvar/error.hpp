#pragma once

#include <stdexcept>
#include <string>

namespace maxvar {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid (n, beta) pair or other ambient-parameter misuse.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed or degenerate radial profile input.
class ProfileError : public Error {
 public:
  using Error::Error;
};

/// A ball that violates its geometric preconditions (e.g. does not contain
/// the evaluation point). Seeing one out of the search is a search bug.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate, double target)
      : Error(what), estimate_(estimate), target_(target) {}

  double estimate() const noexcept { return estimate_; }
  double target() const noexcept { return target_; }

 private:
  double estimate_;
  double target_;
};

/// Best-ball search could not produce a converged result.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace maxvar
