#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace starorlicz {

// Base of every library exception. The CLI maps all of these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameters: zero exponents, singular matrices, dimension mismatch, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A function or radial evaluation produced a non-finite or non-positive value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// A declared class or curvature contradicts the sampling probes, or the
// function is not classified at all.
class DeclarationError : public Error {
 public:
  using Error::Error;
};

struct BracketStep {
  double lo;
  double hi;
  double g_lo;
  double g_hi;
};

// Root bracketing or iteration failed. Carries the bracket history.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::vector<BracketStep> trace)
      : Error(what), trace_(std::move(trace)) {}

  const std::vector<BracketStep>& trace() const noexcept { return trace_; }

 private:
  std::vector<BracketStep> trace_;
};

}  // namespace starorlicz
