#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "brannan/quadrature.hpp"

namespace brannan::ineq {

// Signed margin of one inequality, oriented so nonnegative = holds.
struct MarginResult {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs, exactly as computed
  double error_estimate = 0.0;
  bool below_threshold = false;  // parameters below the stated regime
  std::vector<std::pair<std::string, double>> sub_margins;
};

struct RootResult {
  std::string equation;
  double root = 0.0;
  double residual = 0.0;
};

// Chebyshev integral inequality for monotone f, g on [0,1]:
// same monotony   -> margin = int fg - int f int g (expect >= 0),
// opposite        -> margin = int f int g - int fg.
// Monotonicity of each function is checked on a 64-point grid.
MarginResult chebyshev_check(const std::function<double(double)>& f,
                             const std::function<double(double)>& g, bool same_monotony,
                             const quad::QuadratureSpec& spec);

// Unique root of c - t - 2 t^{2n} = 0 in (0,1) by bisection; the map is
// strictly decreasing from c to c-3.
RootResult solve_tn(double constant, long n);

enum class LemmaPart { a, b };

// Lemma-3 margins on theta in [0, pi/2] (folded by evenness). Part (b) is
// implemented in the statement's form; proof_form selects the variant with
// the extra (1+t) denominator factor that appears inside the proof.
MarginResult lemma3_margin(LemmaPart part, double alpha, long n, double theta,
                           const quad::QuadratureSpec& spec, bool proof_form = false);

// Pointwise Lemma-4 margin on t in [0,1], theta in [pi/2, 2pi/3]:
// 5/2 + (t+cos)/(den) - (50/23)(1+t)(1+cos)/(den).
MarginResult lemma4_margin(double t, double theta);

// Auxiliary quadratic g(x) = -1/5 + (5/13) x - x^2/10 from the Lemma-4
// reduction; g(13/5) = 31/250.
double lemma4_quadratic(double x);

// Lemma 5 pairs constants (27/50, 50/27) in its statement but (12/25, 25/12)
// inside the Theorem-2 proof; both variants are selectable.
enum class Lemma5Variant { stated_27_50, proof_12_25 };

MarginResult lemma5_margin(LemmaPart part, Lemma5Variant variant, double alpha, long n,
                           double theta, const quad::QuadratureSpec& spec);

// The five scalar positivity claims used inside the Lemma-3/Lemma-5 proofs,
// as margins against zero.
std::vector<MarginResult> proof_constant_checks(long n);

// Taylor-remainder margin: 1 + alpha(1+alpha)/2 minus
// (2-2x)^{alpha/2} + alpha Prod_{k=1}^{2n-1}(1-alpha/k) *
//   int_0^1 ((1-t)/sqrt(1+t^2-2tx))^{2n-1} (sqrt(1+t^2-2tx))^{alpha-1} dt,
// for x in [1/2, 1]. Also reports A_{2n-1}(alpha,1) >= 1 + alpha(1+alpha)/2
// as a sub-margin.
MarginResult theorem3_margin(double alpha, long n, double x,
                             const quad::QuadratureSpec& spec);

// Prod_{k=1}^{K} (1 - alpha/k), accumulated in increasing k.
double product_one_minus(double alpha, long K);

// Same display as theorem3_margin restricted to the conjectured open range
// alpha in (0, 1/3).
MarginResult conjecture_margin(double alpha, long n, double x,
                               const quad::QuadratureSpec& spec);

}  // namespace brannan::ineq
