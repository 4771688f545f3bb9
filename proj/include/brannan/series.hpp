#pragma once

#include <cmath>

namespace brannan::series {

struct ComplexValue {
  double re = 0.0;
  double im = 0.0;

  double modulus() const {
    // hypot(x, 0) is |x| on every libm we care about, but the exact-zero
    // margin contract at theta = 0 must not depend on that.
    return im == 0.0 ? std::fabs(re) : std::hypot(re, im);
  }
  ComplexValue conjugate() const { return {re, -im}; }
};

// One coefficient-sum evaluation: A_m(alpha, beta, e^{i theta}) with odd
// index m = 2n-1. Operations take m directly; callers never pass n.
struct SeriesQuery {
  double alpha = 0.5;
  double beta = 1.0;
  long m = 1;
  double theta = 0.0;

  void validate() const;  // throws DomainError
};

// Coefficient of x^k in the binomial series of (1+x)^alpha,
// computed by the recurrence c_0 = 1, c_k = c_{k-1} (alpha-k+1)/k.
double binom_coeff(double alpha, long k);

// Rising factorial beta (beta+1) ... (beta+j-1), with (beta)_0 = 1.
double pochhammer(double beta, long j);

// A_m(alpha, beta, e^{i theta}) =
//   sum_{k=0}^{m} binom_coeff(alpha,k) e^{ik theta} pochhammer(beta,m-k)/(m-k)!
ComplexValue partial_sum(const SeriesQuery& q);

// A_m(alpha, beta, 1) in pure real arithmetic. Term values and summation
// order are identical to partial_sum at theta = 0, so the margin at x = 1
// vanishes exactly.
double partial_sum_at_one(double alpha, double beta, long m);

// Sum of |term| over the partial sum; scale factor for round-off models.
double abs_term_sum(double alpha, double beta, long m);

struct BrannanEval {
  double at_one = 0.0;        // A_m(alpha, beta, 1)
  double abs_at_theta = 0.0;  // |A_m(alpha, beta, e^{i theta})|
  double margin = 0.0;        // at_one - abs_at_theta
};

BrannanEval brannan_eval(const SeriesQuery& q);

// Margin of |A_m(alpha,beta,x)| <= A_m(alpha,beta,1) on |x| = 1.
// Nonnegative return means the conjectured inequality holds at this point.
double brannan_margin(const SeriesQuery& q);

}  // namespace brannan::series
