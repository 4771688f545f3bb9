#pragma once

#include <memory>
#include <utility>

#include "brannan/quadrature.hpp"
#include "brannan/series.hpp"

namespace brannan::integral {

// Point at which the closed-form kernels are evaluated; the coefficient sum
// behind them runs to 2n-1.
struct KernelPoint {
  double t = 0.0;
  double theta = 0.0;
  long n = 1;

  void validate() const;
};

enum class PhiMethod { series, quadrature, double_integral };

struct PhiValue {
  series::ComplexValue value;
  double error_estimate = 0.0;
  PhiMethod method = PhiMethod::series;
};

// -Gamma(alpha) Gamma(-alpha) = pi / (alpha sin(pi alpha)), the factor
// linking Phi(theta) to A_{2n-1}(alpha, e^{i theta}). Requires 0 < alpha < 1.
double reflection_constant(double alpha);

// F(t) = integral_t^1 s^{-1-alpha} (1-s)^{alpha-1} ds, the decreasing
// singular weight with F'(t) = -t^{-1-alpha}(1-t)^{alpha-1} and F(1) = 0.
double weight_F(double t, double alpha, const quad::QuadratureSpec& spec);

struct KernelBC {
  double b = 0.0;
  double c = 0.0;
};

// Closed-form kernels: B + iC equals sum_{k=1}^{2n-1} (-t)^{k-1} e^{ik theta}.
// At theta = +-pi (cos theta == -1) the algebraically simplified limit
// B = -(1 - t^{2n-1})/(1 - t), C = 0 is used; (t = 1, theta = +-pi) is the
// one singular corner and raises SingularPoint.
KernelBC kernel_BC(const KernelPoint& p);

// Phi(theta) by the series route: reflection_constant(alpha) * A_m(alpha, 1, e^{i theta}).
PhiValue phi_series(double alpha, long m, double theta);

// Phi(theta) = integral_0^1 F(t) [1/alpha + B(t,theta) + i C(t,theta)] dt.
// F values are cached at the deterministic quadrature nodes per alpha and
// shared across calls and threads.
PhiValue phi_quadrature(double alpha, long m, double theta,
                        const quad::QuadratureSpec& spec);

enum class DiffMethod { via_phi, double_integral };

struct DiffResult {
  double value = 0.0;          // Phi^2(0) - |Phi(theta)|^2
  double error_estimate = 0.0;
  double phi0_sq = 0.0;        // Phi^2(0)
  double phi_theta_sq = 0.0;   // |Phi(theta)|^2
};

// Phi^2(0) - |Phi(theta)|^2, either by composing two Phi evaluations or by
// the double-integral form over (0,1)^2.
DiffResult phi_sq_diff(double alpha, long m, double theta,
                       const quad::QuadratureSpec& spec, DiffMethod method);

namespace detail {

// Memo table of F(t) at quadrature nodes for one alpha. Reads are lock-free
// once filled; concurrent fills are idempotent.
class FWeight {
 public:
  FWeight(double alpha, const quad::QuadratureSpec& inner_spec);
  ~FWeight();

  double alpha() const { return alpha_; }
  // (F(t), error estimate of F(t)); cached by the exact t bits.
  std::pair<double, double> value_err(double t, double tc) const;
  double max_rel_err() const;

 private:
  struct Impl;
  double alpha_;
  std::unique_ptr<Impl> impl_;
};

// Shared registry of F tables, keyed by alpha and the inner tolerances.
std::shared_ptr<FWeight> f_weight_table(double alpha, const quad::QuadratureSpec& spec);

// Inner-integral spec used for cached F values under an outer request.
quad::QuadratureSpec f_inner_spec(const quad::QuadratureSpec& outer);

}  // namespace detail

}  // namespace brannan::integral
