#include "brannan/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "brannan/errors.hpp"
#include "brannan/integral_rep.hpp"
#include "brannan/series.hpp"

namespace brannan::ineq {

namespace {

constexpr double kPi = std::numbers::pi;

// Trigonometric constants shared by every node of one lemma integral.
struct LemmaTrig {
  double cth;          // cos theta
  double opc;          // 1 + cos theta = 2 cos^2(theta/2)
  double omc;          // 1 - cos theta = 2 sin^2(theta/2)
  double c2n, c2n1;    // cos(2n theta), cos((2n-1) theta)
};

LemmaTrig lemma_trig(double theta, long n) {
  LemmaTrig k;
  k.cth = std::cos(theta);
  const double ch = std::cos(0.5 * theta);
  const double sh = std::sin(0.5 * theta);
  k.opc = 2.0 * ch * ch;
  k.omc = 2.0 * sh * sh;
  const double dn = static_cast<double>(n);
  k.c2n = std::cos(2.0 * dn * theta);
  k.c2n1 = std::cos((2.0 * dn - 1.0) * theta);
  return k;
}

struct KernelTerms {
  double b0;      // B(t, 0)
  double bth;     // B(t, theta)
  double p1, p2;  // t^{2n-1}, t^{2n}
  double den;     // 1 + t^2 + 2 t cos theta
};

KernelTerms kernel_terms(double t, double tc, const LemmaTrig& k, long n) {
  KernelTerms kt;
  kt.p1 = std::pow(t, static_cast<double>(2 * n - 1));
  kt.p2 = kt.p1 * t;
  const double opt = 1.0 + t;
  kt.b0 = (1.0 + t + kt.p1 + kt.p2) / (opt * opt);
  kt.den = tc * tc + 2.0 * t * k.opc;
  kt.bth = (k.cth + t + kt.p1 * k.c2n + kt.p2 * k.c2n1) / kt.den;
  return kt;
}

// Two F-weighted integrals sharing one node set plus the inherited-error
// channel; returns (lhs, rhs, error).
struct TwoSides {
  double lhs, rhs, err;
};

TwoSides integrate_two_sides(double alpha, const quad::QuadratureSpec& spec,
                             const std::function<double(double, double)>& kl,
                             const std::function<double(double, double)>& kr) {
  const auto fw = integral::detail::f_weight_table(alpha, integral::detail::f_inner_spec(spec));
  quad::QuadratureSpec outer = spec;
  outer.rule = quad::Rule::double_exponential;
  outer.left_exponent = -alpha;
  outer.right_exponent = alpha;
  auto f = [&](double t, double tc, double* out) {
    const auto [fv, fe] = fw->value_err(t, tc);
    const double l = kl(t, tc);
    const double r = kr(t, tc);
    out[0] = fv * l;
    out[1] = fv * r;
    out[2] = fe * (std::fabs(l) + std::fabs(r));
  };
  const quad::VecResult res = quad::integrate_vec(3, 2, f, outer);
  return {res.values[0], res.values[1], res.diffs[0] + res.diffs[1] + res.values[2]};
}

void require_spec_alpha(double alpha, const quad::QuadratureSpec& spec, const char* who) {
  spec.validate();
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw DomainError(std::string(who) + ": alpha must lie in (0,1)");
}

double fold_even(double theta) { return std::fabs(theta); }

std::string fmt_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

MarginResult taylor_margin_core(const char* name, double alpha, long n, double x,
                                const quad::QuadratureSpec& spec, bool below) {
  spec.validate();
  if (n < 1) throw DomainError(std::string(name) + ": n must be >= 1");
  if (!(x >= 0.5 - 1e-12) || !(x <= 1.0 + 1e-12))
    throw DomainError(std::string(name) + ": x must lie in [1/2, 1]");
  x = std::clamp(x, 0.5, 1.0);

  const long K = 2 * n - 1;
  const double prod = product_one_minus(alpha, K);

  quad::QuadratureSpec qs = spec;
  qs.rule = quad::Rule::double_exponential;
  qs.left_exponent = 0.0;
  qs.right_exponent = x == 1.0 ? alpha - 1.0 : 0.0;

  const double one_minus_x = 1.0 - x;
  const double pp = one_minus_x * (1.0 + x);  // 1 - x^2
  const double dK = static_cast<double>(K);
  const double half_exp = 0.5 * (alpha - static_cast<double>(2 * n));
  // integrand = tc^{2n-1} d^{(alpha-2n)/2}, d = (t-x)^2 + (1-x^2), formed in
  // log space; at x = 1 it collapses exactly to tc^{alpha-1}.
  auto integrand = [=](double /*t*/, double tc) {
    if (tc == 0.0) return 0.0;
    const double ltc = std::log(tc);
    const double dtx = one_minus_x - tc;  // t - x, exact as t -> 1
    const double lnd = pp == 0.0 ? 2.0 * std::log(tc) : std::log(dtx * dtx + pp);
    return std::exp(dK * ltc + half_exp * lnd);
  };
  const quad::QuadratureResult integral = quad::integrate(quad::Integrand(integrand), qs);

  MarginResult r;
  r.name = name;
  r.inputs = {{"alpha", alpha}, {"n", static_cast<double>(n)}, {"x", x}};
  r.lhs = 1.0 + 0.5 * alpha * (1.0 + alpha);
  r.rhs = std::pow(2.0 * one_minus_x, 0.5 * alpha) + alpha * prod * integral.value;
  r.margin = r.lhs - r.rhs;
  r.error_estimate = alpha * prod * integral.error_estimate +
                     8.0 * std::numeric_limits<double>::epsilon() * std::fabs(r.rhs);
  r.below_threshold = below;
  const double at_one = series::partial_sum_at_one(alpha, 1.0, K);
  r.sub_margins = {{"coefficient_sum_vs_taylor_bound", at_one - r.lhs}};
  return r;
}

}  // namespace

MarginResult chebyshev_check(const std::function<double(double)>& f,
                             const std::function<double(double)>& g, bool same_monotony,
                             const quad::QuadratureSpec& spec) {
  spec.validate();

  constexpr int kGrid = 64;
  auto direction = [](const std::function<double(double)>& h, const char* label) {
    double vals[kGrid];
    double scale = 0.0;
    for (int i = 0; i < kGrid; ++i) {
      vals[i] = h(static_cast<double>(i) / (kGrid - 1));
      scale = std::max(scale, std::fabs(vals[i]));
    }
    const double slack = 1e-12 * std::max(scale, 1.0);
    bool up = true, down = true;
    for (int i = 1; i < kGrid; ++i) {
      if (vals[i] < vals[i - 1] - slack) up = false;
      if (vals[i] > vals[i - 1] + slack) down = false;
    }
    if (!up && !down)
      throw MonotonicityViolated(std::string("chebyshev_check: ") + label +
                                 " is not monotone on the sample grid");
    if (up && down) return 0;  // constant
    return up ? 1 : -1;
  };
  const int df = direction(f, "f");
  const int dg = direction(g, "g");
  const int prod = df * dg;
  if (same_monotony && prod < 0)
    throw MonotonicityViolated("chebyshev_check: declared same monotony, observed opposite");
  if (!same_monotony && prod > 0)
    throw MonotonicityViolated("chebyshev_check: declared opposite monotony, observed same");

  const auto If = quad::integrate(quad::Integrand1(f), spec);
  const auto Ig = quad::integrate(quad::Integrand1(g), spec);
  const auto Ifg = quad::integrate(
      quad::Integrand1([&](double t) { return f(t) * g(t); }), spec);

  MarginResult r;
  r.name = same_monotony ? "chebyshev_same" : "chebyshev_opposite";
  r.inputs = {{"same_monotony", same_monotony ? 1.0 : 0.0}};
  const double product_of_means = If.value * Ig.value;
  if (same_monotony) {
    r.lhs = Ifg.value;
    r.rhs = product_of_means;
  } else {
    r.lhs = product_of_means;
    r.rhs = Ifg.value;
  }
  r.margin = r.lhs - r.rhs;
  r.error_estimate = Ifg.error_estimate + std::fabs(If.value) * Ig.error_estimate +
                     std::fabs(Ig.value) * If.error_estimate;
  return r;
}

RootResult solve_tn(double constant, long n) {
  if (!(constant > 0.0) || !(constant < 1.0))
    throw DomainError("solve_tn: constant must lie in (0,1)");
  if (n < 1) throw DomainError("solve_tn: n must be >= 1");
  const double e = static_cast<double>(2 * n);
  auto phi = [&](double t) { return constant - t - 2.0 * std::pow(t, e); };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (phi(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  RootResult r;
  r.root = 0.5 * (lo + hi);
  r.residual = phi(r.root);
  r.equation = fmt_num(constant) + " - t - 2 t^" + std::to_string(2 * n) + " = 0";
  return r;
}

MarginResult lemma3_margin(LemmaPart part, double alpha, long n, double theta,
                           const quad::QuadratureSpec& spec, bool proof_form) {
  require_spec_alpha(alpha, spec, "lemma3_margin");
  if (n < 1) throw DomainError("lemma3_margin: n must be >= 1");
  theta = fold_even(theta);
  if (theta > kPi / 2.0 + 1e-9)
    throw DomainError("lemma3_margin: |theta| must lie in [0, pi/2]");

  const LemmaTrig k = lemma_trig(theta, n);
  std::function<double(double, double)> kl, kr;
  if (part == LemmaPart::a) {
    kl = [=](double t, double tc) {
      const KernelTerms kt = kernel_terms(t, tc, k, n);
      return kt.b0 - kt.bth;
    };
    kr = [=](double t, double tc) {
      const KernelTerms kt = kernel_terms(t, tc, k, n);
      const double num =
          0.5 * k.omc + kt.p1 * (1.0 - k.c2n) + kt.p2 * (1.0 - k.c2n1);
      return num / ((1.0 + t) * kt.den);
    };
  } else {
    kl = [=](double t, double tc) {
      const KernelTerms kt = kernel_terms(t, tc, k, n);
      return 1.0 + kt.bth;
    };
    kr = [=, pf = proof_form](double t, double tc) {
      const KernelTerms kt = kernel_terms(t, tc, k, n);
      const double num =
          (1.0 + t) * k.opc + kt.p1 * (1.0 + k.c2n) + kt.p2 * (1.0 + k.c2n1);
      return pf ? num / ((1.0 + t) * kt.den) : num / kt.den;
    };
  }
  const TwoSides ts = integrate_two_sides(alpha, spec, kl, kr);

  MarginResult r;
  r.name = part == LemmaPart::a ? "lemma3a" : (proof_form ? "lemma3b_proof" : "lemma3b");
  r.inputs = {{"alpha", alpha}, {"n", static_cast<double>(n)}, {"theta", theta}};
  r.lhs = ts.lhs;
  r.rhs = ts.rhs;
  r.margin = ts.lhs - ts.rhs;
  r.error_estimate = ts.err;
  r.below_threshold = n < 27;
  return r;
}

double lemma4_quadratic(double x) { return -1.0 / 5.0 + (5.0 / 13.0) * x - x * x / 10.0; }

MarginResult lemma4_margin(double t, double theta) {
  if (!(t >= 0.0) || !(t <= 1.0)) throw DomainError("lemma4_margin: t must lie in [0,1]");
  theta = fold_even(theta);
  if (theta < kPi / 2.0 - 1e-9 || theta > 2.0 * kPi / 3.0 + 1e-9)
    throw DomainError("lemma4_margin: |theta| must lie in [pi/2, 2pi/3]");
  const double cth = std::cos(theta);
  const double den = 1.0 + t * t + 2.0 * t * cth;
  MarginResult r;
  r.name = "lemma4";
  r.inputs = {{"t", t}, {"theta", theta}};
  r.lhs = 2.5 + (t + cth) / den;
  r.rhs = (50.0 / 23.0) * (1.0 + t) * (1.0 + cth) / den;
  r.margin = r.lhs - r.rhs;
  r.error_estimate = 8.0 * std::numeric_limits<double>::epsilon() * (std::fabs(r.lhs) + std::fabs(r.rhs));
  return r;
}

MarginResult lemma5_margin(LemmaPart part, Lemma5Variant variant, double alpha, long n,
                           double theta, const quad::QuadratureSpec& spec) {
  require_spec_alpha(alpha, spec, "lemma5_margin");
  if (n < 1) throw DomainError("lemma5_margin: n must be >= 1");
  theta = fold_even(theta);
  if (theta < kPi / 2.0 - 1e-9 || theta > 2.0 * kPi / 3.0 + 1e-9)
    throw DomainError("lemma5_margin: |theta| must lie in [pi/2, 2pi/3]");

  const bool stated = variant == Lemma5Variant::stated_27_50;
  const double c_small = stated ? 27.0 / 50.0 : 12.0 / 25.0;
  const double c_large = stated ? 50.0 / 27.0 : 25.0 / 12.0;

  const LemmaTrig k = lemma_trig(theta, n);
  std::function<double(double, double)> kl, kr;
  if (part == LemmaPart::a) {
    kl = [=](double t, double tc) {
      const KernelTerms kt = kernel_terms(t, tc, k, n);
      return kt.b0 - kt.bth;
    };
    kr = [=](double t, double tc) {
      const KernelTerms kt = kernel_terms(t, tc, k, n);
      const double num =
          c_small * k.omc + kt.p1 * (1.0 - k.c2n) + kt.p2 * (1.0 - k.c2n1);
      return num / ((1.0 + t) * kt.den);
    };
  } else {
    kl = [=](double t, double tc) {
      const KernelTerms kt = kernel_terms(t, tc, k, n);
      return 2.0 + kt.b0 + kt.bth;
    };
    kr = [=](double t, double tc) {
      const KernelTerms kt = kernel_terms(t, tc, k, n);
      const double num = c_large * (1.0 + t) * k.opc + 2.0 * kt.p1 * (1.0 + k.c2n) +
                         2.0 * kt.p2 * (1.0 + k.c2n1);
      return num / kt.den;
    };
  }
  const TwoSides ts = integrate_two_sides(alpha, spec, kl, kr);

  MarginResult r;
  r.name = std::string("lemma5") + (part == LemmaPart::a ? "a" : "b") +
           (stated ? "" : "_proof");
  r.inputs = {{"alpha", alpha},
              {"n", static_cast<double>(n)},
              {"theta", theta},
              {"constant", part == LemmaPart::a ? c_small : c_large}};
  r.lhs = ts.lhs;
  r.rhs = ts.rhs;
  r.margin = ts.lhs - ts.rhs;
  r.error_estimate = ts.err;
  r.below_threshold = n < 27;
  return r;
}

std::vector<MarginResult> proof_constant_checks(long n) {
  if (n < 1) throw DomainError("proof_constant_checks: n must be >= 1");
  const double dn = static_cast<double>(n);
  const double ln2 = std::numbers::ln2;
  const double eps = std::numeric_limits<double>::epsilon();

  auto entry = [&](const char* name, double value) {
    MarginResult r;
    r.name = name;
    r.inputs = {{"n", dn}};
    r.lhs = value;
    r.rhs = 0.0;
    r.margin = value;
    r.error_estimate = 8.0 * eps * std::max(1.0, std::fabs(value));
    return r;
  };

  std::vector<MarginResult> out;
  out.push_back(entry("const_log2_over_2np1", ln2 / (2.0 * dn + 1.0)));
  out.push_back(entry("const_lemma3_chebyshev_slack",
                      1.5 * ln2 - 1.0 - 2.0 * ln2 / (2.0 * dn + 1.0)));
  out.push_back(entry("const_lemma3_moment_slack",
                      1.0 / 3.0 - 1.0 / (2.0 * dn + 1.0) - 1.0 / (2.0 * dn)));
  out.push_back(entry("const_lemma5_chebyshev_slack",
                      27.0 / 50.0 - 0.5 - 2.0 / (2.0 * dn + 1.0)));
  out.push_back(entry("const_lemma5_quartic_slack", 5.0 / 12.0 - 12.0 / dn));
  return out;
}

double product_one_minus(double alpha, long K) {
  if (K < 1) throw DomainError("product_one_minus: K must be >= 1");
  if (!std::isfinite(alpha)) throw DomainError("product_one_minus: alpha must be finite");
  if (K > 1000000) {
    // factors stay in [0,1]; the log path only guards extreme K
    double s = 0.0;
    for (long k = 1; k <= K; ++k) {
      const double f = 1.0 - alpha / static_cast<double>(k);
      if (f <= 0.0) return 0.0;
      s += std::log(f);
    }
    return std::exp(s);
  }
  double p = 1.0;
  for (long k = 1; k <= K; ++k) p *= 1.0 - alpha / static_cast<double>(k);
  return p;
}

MarginResult theorem3_margin(double alpha, long n, double x,
                             const quad::QuadratureSpec& spec) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw DomainError("theorem3_margin: alpha must lie in (0,1)");
  const bool below = n < 27 || alpha < 1.0 / 3.0 - 1e-12;
  return taylor_margin_core("theorem3", alpha, n, x, spec, below);
}

MarginResult conjecture_margin(double alpha, long n, double x,
                               const quad::QuadratureSpec& spec) {
  if (!(alpha > 0.0) || !(alpha < 1.0 / 3.0))
    throw DomainError("conjecture_margin: alpha must lie in (0, 1/3)");
  return taylor_margin_core("conjecture", alpha, n, x, spec, n < 27);
}

}  // namespace brannan::ineq
