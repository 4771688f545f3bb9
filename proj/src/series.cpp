#include "brannan/series.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "brannan/errors.hpp"
#include "brannan/kahan.hpp"

namespace brannan::series {

namespace {

constexpr int kRenormStride = 64;

// Leading weight (beta)_m / m!. Each factor is (beta+j-1)/j, so the beta = 1
// case stays exactly 1 with no round-off.
double leading_weight(double beta, long m) {
  double w = 1.0;
  for (long j = 1; j <= m; ++j) w *= (beta + static_cast<double>(j - 1)) / static_cast<double>(j);
  return w;
}

}  // namespace

void SeriesQuery::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("SeriesQuery: alpha must be positive and finite");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw DomainError("SeriesQuery: beta must be positive and finite");
  if (m < 1 || m % 2 == 0)
    throw DomainError("SeriesQuery: m must be a positive odd integer");
  if (!std::isfinite(theta) || std::fabs(theta) > std::numbers::pi + 1e-9)
    throw DomainError("SeriesQuery: theta must lie in [-pi, pi]");
}

double binom_coeff(double alpha, long k) {
  if (k < 0) throw DomainError("binom_coeff: k must be nonnegative");
  double c = 1.0;
  for (long j = 1; j <= k; ++j)
    c *= (alpha - static_cast<double>(j - 1)) / static_cast<double>(j);
  return c;
}

double pochhammer(double beta, long j) {
  if (j < 0) throw DomainError("pochhammer: j must be nonnegative");
  double p = 1.0;
  for (long i = 0; i < j; ++i) p *= beta + static_cast<double>(i);
  return p;
}

ComplexValue partial_sum(const SeriesQuery& q) {
  q.validate();
  const double base_re = std::cos(q.theta);
  const double base_im = std::sin(q.theta);

  double rot_re = 1.0, rot_im = 0.0;  // e^{ik theta}
  double c = 1.0;                     // binom_coeff(alpha, k)
  double w = leading_weight(q.beta, q.m);
  KahanSum re, im;
  for (long k = 0; k <= q.m; ++k) {
    const double term = c * w;
    re.add(term * rot_re);
    im.add(term * rot_im);
    if (k == q.m) break;
    c *= (q.alpha - static_cast<double>(k)) / static_cast<double>(k + 1);
    const double j = static_cast<double>(q.m - k);  // weight index m-k -> m-k-1
    w *= j / (q.beta + j - 1.0);
    const double nre = rot_re * base_re - rot_im * base_im;
    const double nim = rot_re * base_im + rot_im * base_re;
    rot_re = nre;
    rot_im = nim;
    if ((k + 1) % kRenormStride == 0) {
      const double norm = std::hypot(rot_re, rot_im);
      rot_re /= norm;
      rot_im /= norm;
    }
  }
  return {re.value(), im.value()};
}

double partial_sum_at_one(double alpha, double beta, long m) {
  SeriesQuery{alpha, beta, m, 0.0}.validate();
  double c = 1.0;
  double w = leading_weight(beta, m);
  KahanSum acc;
  for (long k = 0; k <= m; ++k) {
    acc.add(c * w);
    if (k == m) break;
    c *= (alpha - static_cast<double>(k)) / static_cast<double>(k + 1);
    const double j = static_cast<double>(m - k);
    w *= j / (beta + j - 1.0);
  }
  return acc.value();
}

double abs_term_sum(double alpha, double beta, long m) {
  SeriesQuery{alpha, beta, m, 0.0}.validate();
  double c = 1.0;
  double w = leading_weight(beta, m);
  double acc = 0.0;
  for (long k = 0; k <= m; ++k) {
    acc += std::fabs(c * w);
    if (k == m) break;
    c *= (alpha - static_cast<double>(k)) / static_cast<double>(k + 1);
    const double j = static_cast<double>(m - k);
    w *= j / (beta + j - 1.0);
  }
  return acc;
}

BrannanEval brannan_eval(const SeriesQuery& q) {
  q.validate();
  BrannanEval ev;
  ev.at_one = partial_sum_at_one(q.alpha, q.beta, q.m);
  ev.abs_at_theta = partial_sum(q).modulus();
  ev.margin = ev.at_one - ev.abs_at_theta;
  return ev;
}

double brannan_margin(const SeriesQuery& q) { return brannan_eval(q).margin; }

}  // namespace brannan::series
