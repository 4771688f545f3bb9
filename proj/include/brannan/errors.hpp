#pragma once

#include <stdexcept>
#include <string>

namespace brannan {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A quadrature did not reach the requested tolerance within the level
// budget. Carries the best value obtained and its error estimate.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& msg, double best_value,
                 double error_estimate, int levels_used)
      : Error(msg),
        best_value(best_value),
        error_estimate(error_estimate),
        levels_used(levels_used) {}

  double best_value;
  double error_estimate;
  int levels_used;
};

// An integrand returned a NaN or infinity at an interior node.
class NonFinite : public Error {
 public:
  NonFinite(const std::string& msg, double at) : Error(msg), at(at) {}
  double at;
};

// Evaluation requested at the one genuinely singular corner (t=1, theta=+-pi).
class SingularPoint : public Error {
 public:
  using Error::Error;
};

// A function declared monotone failed the sampled monotonicity check.
class MonotonicityViolated : public Error {
 public:
  using Error::Error;
};

// The scanner was asked for a check identifier it does not know.
class UnknownCheck : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace brannan
