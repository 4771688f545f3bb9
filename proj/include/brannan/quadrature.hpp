#pragma once

#include <functional>
#include <vector>

#include "brannan/errors.hpp"

namespace brannan::quad {

enum class Rule { double_exponential, adaptive_bisection };

// Integration request over (0,1). left_exponent / right_exponent declare the
// known algebraic behavior of the integrand at the endpoints (integrand
// ~ t^left_exponent at 0 and ~ (1-t)^right_exponent at 1); both must exceed
// -1 for integrability. Exponents below -1/2 trigger an explicit power
// substitution that regularizes the endpoint before the nodes are laid down,
// guarding against node underflow for strong singularities.
struct QuadratureSpec {
  Rule rule = Rule::double_exponential;
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_levels = 12;
  double left_exponent = 0.0;
  double right_exponent = 0.0;

  void validate() const;  // throws DomainError
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int levels_used = 0;
};

// Integrands receive (t, tc) with tc = 1 - t held to full relative accuracy
// even when t is within an ulp of 1; single-argument callables are wrapped.
using Integrand = std::function<double(double t, double tc)>;
using Integrand1 = std::function<double(double t)>;
using Integrand2D = std::function<double(double t, double tc, double v, double vc)>;
using Integrand2D1 = std::function<double(double t, double v)>;

QuadratureResult integrate(const Integrand& f, const QuadratureSpec& spec);
QuadratureResult integrate(const Integrand1& f, const QuadratureSpec& spec);

// Tensor product of the double-exponential rule; the endpoint declaration
// applies to both axes. The error estimate is the level-to-level difference
// of the full tensor sum.
QuadratureResult integrate2d(const Integrand2D& g, const QuadratureSpec& spec);
QuadratureResult integrate2d(const Integrand2D1& g, const QuadratureSpec& spec);

// Simultaneous integration of ncomp components sharing one node set
// (always the double-exponential rule). Convergence is judged on the first
// nconv components; trailing components ride along (error channels).
struct VecResult {
  std::vector<double> values;
  std::vector<double> diffs;  // last level-to-level difference per component
  int levels_used = 0;
};
VecResult integrate_vec(int ncomp, int nconv,
                        const std::function<void(double t, double tc, double* out)>& f,
                        const QuadratureSpec& spec);

namespace detail {

// One tanh-sinh abscissa: t = 1/(1+exp(-pi sinh u)), tc = 1 - t computed
// without cancellation, w = pi cosh(u) t tc (the step factor h is applied
// by the driver). Tables are immutable once built and shared across threads.
struct Node {
  double t;
  double tc;
  double w;
};

// Nodes introduced at refinement level L (step h = 2^-L). Level 0 holds the
// integer grid; level L >= 1 holds the odd multiples of h only.
const std::vector<Node>& level_nodes(int level);

}  // namespace detail

}  // namespace brannan::quad
