#include "brannan/integral_rep.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>

#include "brannan/errors.hpp"

namespace brannan::integral {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this t the weight is taken from its small-t expansion
// F(t) = (t^-alpha - 1)/alpha + G0(alpha) + O(t^{1-alpha}); the dropped term
// is ~ alpha * t relative, far below every tolerance in play.
constexpr double kAsymptoticT = 1e-14;

void require_alpha_open_unit(double alpha, const char* who) {
  if (!(alpha > 0.0) || !(alpha < 1.0) || !std::isfinite(alpha))
    throw DomainError(std::string(who) + ": alpha must lie in (0,1)");
}

double log_tc(double t, double tc) { return tc <= 0.5 ? std::log(tc) : std::log1p(-t); }

// G0(alpha) = integral_0^1 s^{-1-alpha} [(1-s)^{alpha-1} - 1] ds, the O(1)
// constant in the small-t expansion of F. Evaluated in log space so the
// factors never overflow separately.
quad::QuadratureResult g0_constant(double alpha, const quad::QuadratureSpec& spec) {
  quad::QuadratureSpec inner = spec;
  inner.rule = quad::Rule::double_exponential;
  inner.left_exponent = -alpha;
  inner.right_exponent = alpha - 1.0;
  auto integrand = [alpha](double s, double sc) {
    const double l1ms = s <= 0.5 ? std::log1p(-s) : std::log(sc);
    const double e = std::expm1((alpha - 1.0) * l1ms);  // (1-s)^{a-1} - 1 > 0
    if (e <= 0.0) return 0.0;
    return std::exp(std::log(e) - (1.0 + alpha) * std::log(s));
  };
  return quad::integrate(quad::Integrand(integrand), inner);
}

// F(t) for one point. g0 is consulted only below the asymptotic threshold.
std::pair<double, double> f_point(double alpha, double t, double tc,
                                  const quad::QuadratureSpec& spec, double g0,
                                  double g0_err) {
  if (tc == 0.0) return {0.0, 0.0};
  if (t <= kAsymptoticT) {
    const double v = (std::pow(t, -alpha) - 1.0) / alpha + g0;
    const double err =
        g0_err + std::fabs(v) * (alpha * t + 4.0 * std::numeric_limits<double>::epsilon());
    return {v, err};
  }
  // Substitution w = (1-s)^alpha:
  //   F(t) = (W/alpha) * integral_0^1 (1 - (W u)^{1/alpha})^{-1-alpha} du,
  // W = tc^alpha, with the inner distance 1 - (Wu)^{1/alpha} >= t formed via
  // expm1/log1p so it never cancels.
  const double ltc = log_tc(t, tc);
  const double w_upper = std::exp(alpha * ltc);
  quad::QuadratureSpec inner = spec;
  inner.rule = quad::Rule::double_exponential;
  inner.left_exponent = 0.0;
  inner.right_exponent = 0.0;
  auto integrand = [alpha, ltc](double u, double uc) {
    const double lu = u <= 0.5 ? std::log(u) : std::log1p(-uc);
    const double s = -std::expm1(ltc + lu / alpha);
    return std::pow(s, -1.0 - alpha);
  };
  const quad::QuadratureResult r = quad::integrate(quad::Integrand(integrand), inner);
  const double scale = w_upper / alpha;
  return {scale * r.value, scale * r.error_estimate};
}

// Per-(theta, n) trigonometric constants of the kernels.
struct KernelTrig {
  double cth = 1.0;
  double sth = 0.0;
  double one_plus_cth = 2.0;  // 2 cos^2(theta/2), no cancellation near pi
  double c2n = 1.0, s2n = 0.0;
  double c2n1 = 1.0, s2n1 = 0.0;
  long n = 1;
  bool at_pi = false;
};

KernelTrig make_trig(double theta, long n) {
  KernelTrig k;
  k.n = n;
  k.cth = std::cos(theta);
  k.sth = std::sin(theta);
  const double ch = std::cos(0.5 * theta);
  k.one_plus_cth = 2.0 * ch * ch;
  k.at_pi = k.cth == -1.0;
  const double dn = static_cast<double>(n);
  k.c2n = std::cos(2.0 * dn * theta);
  k.s2n = std::sin(2.0 * dn * theta);
  k.c2n1 = std::cos((2.0 * dn - 1.0) * theta);
  k.s2n1 = std::sin((2.0 * dn - 1.0) * theta);
  return k;
}

KernelBC kernel_eval(double t, double tc, const KernelTrig& k) {
  if (k.at_pi) {
    // B(t, pi) = -(1 - t^{2n-1})/(1 - t), finite limit -(2n-1) at t -> 1.
    const double e = static_cast<double>(2 * k.n - 1);
    if (tc == 0.0) return {-e, 0.0};
    return {std::expm1(e * std::log1p(-tc)) / tc, 0.0};
  }
  const double den = tc * tc + 2.0 * t * k.one_plus_cth;
  const double p1 = std::pow(t, static_cast<double>(2 * k.n - 1));
  const double p2 = p1 * t;
  const double b = (k.cth + t + p1 * k.c2n + p2 * k.c2n1) / den;
  const double c = (k.sth + p1 * k.s2n + p2 * k.s2n1) / den;
  return {b, c};
}

void validate_phi_args(double alpha, long m, double theta, const char* who) {
  require_alpha_open_unit(alpha, who);
  if (m < 1 || m % 2 == 0)
    throw DomainError(std::string(who) + ": m must be a positive odd integer");
  if (!std::isfinite(theta) || std::fabs(theta) > kPi + 1e-9)
    throw DomainError(std::string(who) + ": theta must lie in [-pi, pi]");
}

}  // namespace

void KernelPoint::validate() const {
  if (!(t >= 0.0) || !(t <= 1.0)) throw DomainError("KernelPoint: t must lie in [0,1]");
  if (!std::isfinite(theta) || std::fabs(theta) > kPi + 1e-9)
    throw DomainError("KernelPoint: theta must lie in [-pi, pi]");
  if (n < 1) throw DomainError("KernelPoint: n must be >= 1");
}

double reflection_constant(double alpha) {
  require_alpha_open_unit(alpha, "reflection_constant");
  return kPi / (alpha * std::sin(kPi * alpha));
}

double weight_F(double t, double alpha, const quad::QuadratureSpec& spec) {
  require_alpha_open_unit(alpha, "weight_F");
  spec.validate();
  if (!(t > 0.0) || !(t <= 1.0)) throw DomainError("weight_F: t must lie in (0,1]");
  double g0 = 0.0, g0_err = 0.0;
  if (t <= kAsymptoticT) {
    const quad::QuadratureResult g = g0_constant(alpha, spec);
    g0 = g.value;
    g0_err = g.error_estimate;
  }
  return f_point(alpha, t, 1.0 - t, spec, g0, g0_err).first;
}

KernelBC kernel_BC(const KernelPoint& p) {
  p.validate();
  const KernelTrig k = make_trig(p.theta, p.n);
  if (k.at_pi && p.t == 1.0)
    throw SingularPoint("kernel_BC: (t=1, theta=+-pi) is a singular corner");
  return kernel_eval(p.t, 1.0 - p.t, k);
}

PhiValue phi_series(double alpha, long m, double theta) {
  validate_phi_args(alpha, m, theta, "phi_series");
  const double refl = reflection_constant(alpha);
  const series::SeriesQuery q{alpha, 1.0, m, theta};
  const series::ComplexValue a = series::partial_sum(q);
  const double scale = series::abs_term_sum(alpha, 1.0, m);
  PhiValue pv;
  pv.value = {refl * a.re, refl * a.im};
  pv.error_estimate =
      refl * scale * static_cast<double>(m) * std::numeric_limits<double>::epsilon();
  pv.method = PhiMethod::series;
  return pv;
}

// --- F node cache ------------------------------------------------------------

namespace detail {

struct FWeight::Impl {
  quad::QuadratureSpec inner;
  double g0 = 0.0;
  double g0_err = 0.0;

  struct KeyHash {
    size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
      return std::hash<uint64_t>()(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
    }
  };
  mutable std::unordered_map<std::pair<uint64_t, uint64_t>, std::pair<double, double>, KeyHash>
      cache;
  mutable std::shared_mutex mu;
  mutable std::atomic<double> max_rel{0.0};
};

FWeight::FWeight(double alpha, const quad::QuadratureSpec& inner_spec) : alpha_(alpha) {
  require_alpha_open_unit(alpha, "FWeight");
  inner_spec.validate();
  impl_ = std::make_unique<Impl>();
  impl_->inner = inner_spec;
  const quad::QuadratureResult g = g0_constant(alpha, inner_spec);
  impl_->g0 = g.value;
  impl_->g0_err = g.error_estimate;
}

FWeight::~FWeight() = default;

std::pair<double, double> FWeight::value_err(double t, double tc) const {
  const std::pair<uint64_t, uint64_t> key{std::bit_cast<uint64_t>(t),
                                          std::bit_cast<uint64_t>(tc)};
  {
    std::shared_lock lock(impl_->mu);
    auto it = impl_->cache.find(key);
    if (it != impl_->cache.end()) return it->second;
  }
  const std::pair<double, double> ve =
      f_point(alpha_, t, tc, impl_->inner, impl_->g0, impl_->g0_err);
  {
    std::unique_lock lock(impl_->mu);
    impl_->cache.emplace(key, ve);  // idempotent on races: same inputs, same value
    if (ve.first > 0.0) {
      const double rel = ve.second / ve.first;
      double cur = impl_->max_rel.load(std::memory_order_relaxed);
      while (rel > cur &&
             !impl_->max_rel.compare_exchange_weak(cur, rel, std::memory_order_relaxed)) {
      }
    }
  }
  return ve;
}

double FWeight::max_rel_err() const { return impl_->max_rel.load(std::memory_order_relaxed); }

quad::QuadratureSpec f_inner_spec(const quad::QuadratureSpec& outer) {
  quad::QuadratureSpec inner;
  inner.rule = quad::Rule::double_exponential;
  inner.abs_tol = 1e-13;
  inner.rel_tol = std::max(1e-13, std::min(1e-11, outer.rel_tol * 1e-2));
  inner.max_levels = std::clamp(outer.max_levels, 10, 16);
  return inner;
}

std::shared_ptr<FWeight> f_weight_table(double alpha, const quad::QuadratureSpec& spec) {
  using Key = std::tuple<uint64_t, uint64_t, uint64_t, int>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<FWeight>> registry;
  const Key key{std::bit_cast<uint64_t>(alpha), std::bit_cast<uint64_t>(spec.abs_tol),
                std::bit_cast<uint64_t>(spec.rel_tol), spec.max_levels};
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;
  auto table = std::make_shared<FWeight>(alpha, spec);
  registry.emplace(key, table);
  return table;
}

}  // namespace detail

PhiValue phi_quadrature(double alpha, long m, double theta,
                        const quad::QuadratureSpec& spec) {
  validate_phi_args(alpha, m, theta, "phi_quadrature");
  spec.validate();
  const long n = (m + 1) / 2;
  const KernelTrig trig = make_trig(theta, n);
  const auto fw = detail::f_weight_table(alpha, detail::f_inner_spec(spec));
  const double inv_a = 1.0 / alpha;

  quad::QuadratureSpec outer = spec;
  outer.rule = quad::Rule::double_exponential;
  outer.left_exponent = -alpha;  // F ~ t^-alpha / alpha near 0
  outer.right_exponent = alpha;  // F ~ (1-t)^alpha / alpha near 1

  auto f = [&](double t, double tc, double* out) {
    const auto [fv, fe] = fw->value_err(t, tc);
    const KernelBC bc = kernel_eval(t, tc, trig);
    out[0] = fv * (inv_a + bc.b);
    out[1] = fv * bc.c;
    out[2] = fe * (std::fabs(inv_a + bc.b) + std::fabs(bc.c));
  };
  const quad::VecResult r = quad::integrate_vec(3, 2, f, outer);

  PhiValue pv;
  pv.value = {r.values[0], r.values[1]};
  pv.error_estimate = r.diffs[0] + r.diffs[1] + r.values[2];
  pv.method = PhiMethod::quadrature;
  return pv;
}

DiffResult phi_sq_diff(double alpha, long m, double theta,
                       const quad::QuadratureSpec& spec, DiffMethod method) {
  validate_phi_args(alpha, m, theta, "phi_sq_diff");
  spec.validate();
  if (method == DiffMethod::via_phi) {
    const PhiValue p0 = phi_quadrature(alpha, m, 0.0, spec);
    const PhiValue pt = theta == 0.0 ? p0 : phi_quadrature(alpha, m, theta, spec);
    DiffResult d;
    d.phi0_sq = p0.value.re * p0.value.re;
    d.phi_theta_sq = pt.value.re * pt.value.re + pt.value.im * pt.value.im;
    d.value = d.phi0_sq - d.phi_theta_sq;
    d.error_estimate = 2.0 * std::fabs(p0.value.re) * p0.error_estimate +
                       2.0 * std::sqrt(d.phi_theta_sq) * pt.error_estimate;
    return d;
  }

  const long n = (m + 1) / 2;
  const KernelTrig trig0 = make_trig(0.0, n);
  const KernelTrig trigt = make_trig(theta, n);
  const auto fw = detail::f_weight_table(alpha, detail::f_inner_spec(spec));
  const double inv_a = 1.0 / alpha;

  quad::QuadratureSpec spec2 = spec;
  spec2.rule = quad::Rule::double_exponential;
  spec2.left_exponent = -alpha;
  spec2.right_exponent = alpha;
  spec2.max_levels = std::min(spec.max_levels, 8);  // tensor cost guard

  auto g = [&](double t, double tc, double v, double vc) {
    const double ft = fw->value_err(t, tc).first;
    const double fv = fw->value_err(v, vc).first;
    const KernelBC bt0 = kernel_eval(t, tc, trig0);
    const KernelBC bv0 = kernel_eval(v, vc, trig0);
    const KernelBC bt = kernel_eval(t, tc, trigt);
    const KernelBC bv = kernel_eval(v, vc, trigt);
    return ft * fv *
           ((inv_a + bt0.b) * (inv_a + bv0.b) - (inv_a + bt.b) * (inv_a + bv.b) -
            bt.c * bv.c);
  };
  const quad::QuadratureResult r = quad::integrate2d(quad::Integrand2D(g), spec2);

  DiffResult d;
  d.value = r.value;
  const double inherited = 2.0 * fw->max_rel_err();
  d.error_estimate = r.error_estimate * (1.0 + inherited) + inherited * std::fabs(r.value);
  d.phi0_sq = std::numeric_limits<double>::quiet_NaN();
  d.phi_theta_sq = std::numeric_limits<double>::quiet_NaN();
  return d;
}

}  // namespace brannan::integral
