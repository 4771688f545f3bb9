#include "brannan/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

namespace brannan::quad {

namespace {

constexpr double kPi = std::numbers::pi;

// Truncation point of the double-exponential node range. Beyond this the
// complementary node distance e^{-pi sinh u} sits at the bottom of the
// double range and the weights are ~1e-302.
constexpr double kUMax = 6.1;

// Refinement beyond this step size cannot improve a double result; requests
// for deeper levels are rejected up front so node tables stay bounded.
constexpr int kMaxSupportedLevels = 16;

void append_pair(std::vector<detail::Node>& nodes, double u) {
  const double a = kPi * std::sinh(u);
  const double e = std::exp(-a);  // a >= 0
  const double tpos = 1.0 / (1.0 + e);
  const double tneg = e / (1.0 + e);
  const double w = kPi * std::cosh(u) * tpos * tneg;
  if (tneg == 0.0 || w == 0.0) return;
  nodes.push_back({tpos, tneg, w});
  nodes.push_back({tneg, tpos, w});
}

std::vector<detail::Node> build_level(int level) {
  std::vector<detail::Node> nodes;
  if (level == 0) {
    nodes.push_back({0.5, 0.5, kPi * 0.25});  // u = 0
    for (int j = 1; j <= static_cast<int>(kUMax); ++j)
      append_pair(nodes, static_cast<double>(j));
  } else {
    const double h = std::ldexp(1.0, -level);
    for (long i = 1;; ++i) {
      const double u = static_cast<double>(2 * i - 1) * h;
      if (u > kUMax) break;
      append_pair(nodes, u);
    }
  }
  return nodes;
}

}  // namespace

namespace detail {

const std::vector<Node>& level_nodes(int level) {
  static std::mutex mu;
  static std::vector<std::unique_ptr<std::vector<Node>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (static_cast<size_t>(level) >= cache.size()) cache.resize(level + 1);
  if (!cache[level])
    cache[level] = std::make_unique<std::vector<Node>>(build_level(level));
  return *cache[level];
}

}  // namespace detail

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw DomainError("QuadratureSpec: tolerances must be positive");
  if (max_levels < 3) throw DomainError("QuadratureSpec: max_levels must be >= 3");
  if (max_levels > kMaxSupportedLevels)
    throw DomainError("QuadratureSpec: max_levels above the supported limit of 16");
  if (!(left_exponent > -1.0) || !(right_exponent > -1.0))
    throw DomainError("QuadratureSpec: endpoint exponents must exceed -1 (integrability)");
}

namespace {

using RawF = std::function<void(double, double, double*)>;

// t = u^p with p = 1/(1+a) regularizes an integrand ~ t^a at the left
// endpoint: the pullback carries exponent 0 there. Nodes whose image
// underflows contribute nothing and are skipped.
RawF wrap_left(RawF f, double a, int ncomp) {
  const double p = 1.0 / (1.0 + a);
  return [f = std::move(f), p, ncomp](double u, double uc, double* out) {
    const double lu = u <= 0.5 ? std::log(u) : std::log1p(-uc);
    const double t = std::exp(p * lu);
    const double tc = -std::expm1(p * lu);
    if (t == 0.0 || tc == 0.0) {
      std::fill(out, out + ncomp, 0.0);
      return;
    }
    f(t, tc, out);
    const double jac = p * std::exp((p - 1.0) * lu);
    for (int c = 0; c < ncomp; ++c) out[c] *= jac;
  };
}

// Mirror substitution 1 - t = v^q for an integrand ~ (1-t)^b at the right
// endpoint.
RawF wrap_right(RawF f, double b, int ncomp) {
  const double q = 1.0 / (1.0 + b);
  return [f = std::move(f), q, ncomp](double v, double vc, double* out) {
    const double lv = v <= 0.5 ? std::log(v) : std::log1p(-vc);
    const double tc = std::exp(q * lv);
    const double t = -std::expm1(q * lv);
    if (t == 0.0 || tc == 0.0) {
      std::fill(out, out + ncomp, 0.0);
      return;
    }
    f(t, tc, out);
    const double jac = q * std::exp((q - 1.0) * lv);
    for (int c = 0; c < ncomp; ++c) out[c] *= jac;
  };
}

RawF apply_substitutions(RawF f, const QuadratureSpec& spec, int ncomp) {
  if (spec.left_exponent < -0.5) f = wrap_left(std::move(f), spec.left_exponent, ncomp);
  if (spec.right_exponent < -0.5) f = wrap_right(std::move(f), spec.right_exponent, ncomp);
  return f;
}

VecResult de_core(int ncomp, int nconv, const RawF& raw, const QuadratureSpec& spec) {
  const RawF g = apply_substitutions(raw, spec, ncomp);

  std::vector<double> I(ncomp, 0.0), Iprev(ncomp, 0.0), diff(ncomp, 0.0);
  std::vector<double> buf(ncomp);
  bool prev_ok = false;
  for (int level = 0; level <= spec.max_levels; ++level) {
    const double h = std::ldexp(1.0, -level);
    const auto& nodes = detail::level_nodes(level);
    std::vector<double> S(ncomp, 0.0);
    for (const auto& node : nodes) {
      g(node.t, node.tc, buf.data());
      for (int c = 0; c < ncomp; ++c) {
        if (!std::isfinite(buf[c]))
          throw NonFinite("integrand returned a non-finite value", node.t);
        S[c] += node.w * buf[c];
      }
    }
    if (level == 0) {
      I = S;
    } else {
      for (int c = 0; c < ncomp; ++c) I[c] = 0.5 * Iprev[c] + h * S[c];
      bool ok = true;
      for (int c = 0; c < ncomp; ++c) {
        diff[c] = std::fabs(I[c] - Iprev[c]);
        if (c < nconv &&
            !(diff[c] <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(I[c]))))
          ok = false;
      }
      if (ok && prev_ok) return {std::move(I), std::move(diff), level};
      prev_ok = ok;
    }
    Iprev = I;
  }
  double worst = 0.0;
  for (int c = 0; c < nconv; ++c) worst = std::max(worst, diff[c]);
  throw NonConvergence("quadrature did not converge within max_levels", I[0], worst,
                       spec.max_levels);
}

// --- adaptive bisection with a Gauss 7 / Kronrod 15 panel -------------------

// {abscissa, Gauss weight, Kronrod weight}; Gauss weight 0 marks
// Kronrod-only points.
constexpr double kG7K15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct Panel {
  double value;
  double error;
};

Panel g7k15(const RawF& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double out;
  auto eval = [&](double t) {
    f(t, 1.0 - t, &out);
    if (!std::isfinite(out)) throw NonFinite("integrand returned a non-finite value", t);
    return out;
  };
  double y0 = eval(mid);
  double g7 = kG7K15[0][1] * y0;
  double k15 = kG7K15[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kG7K15[i][0];
    const double yi = eval(mid + dx) + eval(mid - dx);
    g7 += kG7K15[i][1] * yi;
    k15 += kG7K15[i][2] * yi;
  }
  g7 *= half;
  k15 *= half;
  double err = 200.0 * std::fabs(g7 - k15);
  err *= std::sqrt(err);
  return {k15, std::min(err, std::fabs(g7 - k15) * 200.0)};
}

QuadratureResult adaptive_core(const RawF& raw, const QuadratureSpec& spec) {
  const RawF g = apply_substitutions(raw, spec, 1);

  struct Interval {
    double a, b;
    int depth;
  };
  std::vector<Interval> stack{{0.0, 1.0, 0}};
  const Panel whole = g7k15(g, 0.0, 1.0);
  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(whole.value));

  double sum = 0.0, err_sum = 0.0;
  int max_depth = 0;
  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    const Panel p = g7k15(g, iv.a, iv.b);
    if (p.error <= tol * (iv.b - iv.a)) {
      sum += p.value;
      err_sum += p.error;
      continue;
    }
    if (iv.depth >= spec.max_levels)
      throw NonConvergence("adaptive bisection exceeded max_levels", sum + p.value,
                           err_sum + p.error, iv.depth);
    const double mid = 0.5 * (iv.a + iv.b);
    max_depth = std::max(max_depth, iv.depth + 1);
    stack.push_back({mid, iv.b, iv.depth + 1});
    stack.push_back({iv.a, mid, iv.depth + 1});
  }
  return {sum, err_sum, max_depth};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, const QuadratureSpec& spec) {
  spec.validate();
  RawF raw = [&f](double t, double tc, double* out) { out[0] = f(t, tc); };
  if (spec.rule == Rule::adaptive_bisection) return adaptive_core(raw, spec);
  VecResult r = de_core(1, 1, raw, spec);
  return {r.values[0], r.diffs[0], r.levels_used};
}

QuadratureResult integrate(const Integrand1& f, const QuadratureSpec& spec) {
  return integrate(Integrand([&f](double t, double) { return f(t); }), spec);
}

VecResult integrate_vec(int ncomp, int nconv,
                        const std::function<void(double, double, double*)>& f,
                        const QuadratureSpec& spec) {
  spec.validate();
  if (ncomp < 1 || nconv < 1 || nconv > ncomp)
    throw DomainError("integrate_vec: bad component counts");
  return de_core(ncomp, nconv, f, spec);
}

QuadratureResult integrate2d(const Integrand2D& g, const QuadratureSpec& spec) {
  spec.validate();

  // Per-axis map node variable -> (t, tc, jacobian); identical on both axes.
  const bool sub_left = spec.left_exponent < -0.5;
  const bool sub_right = spec.right_exponent < -0.5;
  const double p = sub_left ? 1.0 / (1.0 + spec.left_exponent) : 1.0;
  const double q = sub_right ? 1.0 / (1.0 + spec.right_exponent) : 1.0;
  auto axis_map = [&](double u, double uc, double& t, double& tc, double& jac) {
    t = u;
    tc = uc;
    jac = 1.0;
    if (sub_right) {
      const double lv = t <= 0.5 ? std::log(t) : std::log1p(-tc);
      jac *= q * std::exp((q - 1.0) * lv);
      const double ntc = std::exp(q * lv);
      const double nt = -std::expm1(q * lv);
      t = nt;
      tc = ntc;
    }
    if (sub_left) {
      const double lu = t <= 0.5 ? std::log(t) : std::log1p(-tc);
      jac *= p * std::exp((p - 1.0) * lu);
      const double nt = std::exp(p * lu);
      const double ntc = -std::expm1(p * lu);
      t = nt;
      tc = ntc;
    }
    return t != 0.0 && tc != 0.0 && jac != 0.0;
  };

  struct Mapped {
    double t, tc, wjac;
  };
  std::vector<Mapped> nodes;  // cumulative over levels, skipped nodes excluded

  auto pair_term = [&](const Mapped& a, const Mapped& b) {
    const double v = g(a.t, a.tc, b.t, b.tc);
    if (!std::isfinite(v)) throw NonFinite("2d integrand returned a non-finite value", a.t);
    return a.wjac * b.wjac * v;
  };

  double S = 0.0;  // raw tensor sum without the h^2 factor
  double I = 0.0, Iprev = 0.0, diff = 0.0;
  bool prev_ok = false;
  for (int level = 0; level <= spec.max_levels; ++level) {
    const double h = std::ldexp(1.0, -level);
    const auto& fresh = detail::level_nodes(level);
    const size_t old_count = nodes.size();
    for (const auto& n : fresh) {
      Mapped m{0, 0, 0};
      double t, tc, jac;
      if (axis_map(n.t, n.tc, t, tc, jac)) m = {t, tc, n.w * jac};
      if (m.wjac != 0.0) nodes.push_back(m);
    }
    for (size_t i = old_count; i < nodes.size(); ++i) {
      for (size_t j = 0; j < old_count; ++j)
        S += pair_term(nodes[i], nodes[j]) + pair_term(nodes[j], nodes[i]);
      for (size_t j = old_count; j < nodes.size(); ++j) S += pair_term(nodes[i], nodes[j]);
    }
    I = h * h * S;
    if (level >= 1) {
      diff = std::fabs(I - Iprev);
      const bool ok = diff <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(I));
      if (ok && prev_ok) return {I, diff, level};
      prev_ok = ok;
    }
    Iprev = I;
  }
  throw NonConvergence("2d quadrature did not converge within max_levels", I, diff,
                       spec.max_levels);
}

QuadratureResult integrate2d(const Integrand2D1& g, const QuadratureSpec& spec) {
  return integrate2d(
      Integrand2D([&g](double t, double, double v, double) { return g(t, v); }), spec);
}

}  // namespace brannan::quad
