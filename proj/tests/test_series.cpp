#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "brannan/errors.hpp"
#include "brannan/series.hpp"

using namespace brannan;
using namespace brannan::series;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: the coefficient of x^k in (1+x)^alpha by the literal
// product alpha(alpha-1)...(alpha-k+1)/k!, evaluated without the recurrence.
double binom_oracle(double alpha, long k) {
  double num = 1.0, den = 1.0;
  for (long j = 0; j < k; ++j) {
    num *= alpha - static_cast<double>(j);
    den *= static_cast<double>(j + 1);
  }
  return num / den;
}

// Independent oracle: Horner evaluation of sum c_k x^k from the highest term
// (the power accumulation and summation order both differ from partial_sum).
ComplexValue horner_oracle(double alpha, double beta, long m, double theta) {
  std::vector<double> binom(m + 1), weight(m + 1);
  binom[0] = 1.0;
  for (long k = 1; k <= m; ++k)
    binom[k] = binom[k - 1] * (alpha - static_cast<double>(k - 1)) / k;
  weight[0] = 1.0;  // weight[j] = (beta)_j / j!
  for (long j = 1; j <= m; ++j)
    weight[j] = weight[j - 1] * (beta + static_cast<double>(j - 1)) / j;
  const std::complex<double> x = std::polar(1.0, theta);
  std::complex<double> acc = binom[m] * weight[0];
  for (long k = m - 1; k >= 0; --k) acc = acc * x + binom[k] * weight[m - k];
  return {acc.real(), acc.imag()};
}

}  // namespace

TEST_CASE("binom_coeff examples") {
  CHECK(binom_coeff(0.5, 0) == 1.0);
  CHECK(binom_coeff(0.5, 2) == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(binom_coeff(1.0, 3) == 0.0);
  CHECK(binom_coeff(0.3, 1) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("binom_coeff matches the direct-product oracle") {
  for (double alpha : {0.1, 0.5, 0.9, 1.7}) {
    for (long k : {0L, 1L, 2L, 5L, 17L, 40L}) {
      const double expect = binom_oracle(alpha, k);
      CHECK(binom_coeff(alpha, k) ==
            doctest::Approx(expect).epsilon(1e-13).scale(std::fabs(expect) + 1e-300));
    }
  }
}

TEST_CASE("binom_coeff signs alternate from k = 2 for alpha in (0,1)") {
  for (double alpha : {0.1, 0.5, 0.9}) {
    for (long k = 2; k <= 60; ++k) {
      const double signed_value = binom_coeff(alpha, k) * ((k + 1) % 2 == 0 ? 1.0 : -1.0);
      CHECK(signed_value > 0.0);
    }
  }
}

TEST_CASE("pochhammer examples") {
  CHECK(pochhammer(2.0, 1) == 2.0);
  CHECK(pochhammer(1.0, 5) == 120.0);
  CHECK(pochhammer(0.5, 0) == 1.0);
}

TEST_CASE("partial_sum examples") {
  // 1 + 0.5 - 0.125 + 0.0625, all exact dyadics
  const ComplexValue a = partial_sum({0.5, 1.0, 3, 0.0});
  CHECK(a.re == 1.4375);
  CHECK(a.im == 0.0);

  const ComplexValue b = partial_sum({0.5, 1.0, 1, kPi});
  CHECK(b.re == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::fabs(b.im) < 1e-15);

  const ComplexValue c = partial_sum({0.5, 2.0, 1, 0.0});
  CHECK(c.re == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(c.im == 0.0);
}

TEST_CASE("partial_sum_at_one equals the complex path at theta = 0 bitwise") {
  for (double alpha : {0.1, 0.5, 0.93}) {
    for (double beta : {1.0, 2.5}) {
      for (long m : {1L, 3L, 51L, 1001L}) {
        const ComplexValue v = partial_sum({alpha, beta, m, 0.0});
        CHECK(v.im == 0.0);
        CHECK(v.re == partial_sum_at_one(alpha, beta, m));
      }
    }
  }
}

TEST_CASE("Horner equivalence up to m = 10001") {
  for (double alpha : {0.1, 0.5, 0.9}) {
    for (long m : {11L, 101L, 1001L, 10001L}) {
      for (double theta : {0.3, 2.5}) {
        const ComplexValue mine = partial_sum({alpha, 1.0, m, theta});
        const ComplexValue ref = horner_oracle(alpha, 1.0, m, theta);
        const double scale = std::hypot(ref.re, ref.im);
        CHECK(std::hypot(mine.re - ref.re, mine.im - ref.im) <= 1e-13 * scale);
      }
    }
  }
}

TEST_CASE("conjugate symmetry in theta") {
  for (double theta : {0.1, 1.2, 3.0, kPi}) {
    const SeriesQuery q{0.37, 1.0, 21, theta};
    const SeriesQuery qc{0.37, 1.0, 21, -theta};
    const ComplexValue v = partial_sum(q);
    const ComplexValue w = partial_sum(qc);
    CHECK(v.re == w.re);
    CHECK(v.im == -w.im);
    CHECK(brannan_margin(q) == brannan_margin(qc));
  }
}

TEST_CASE("brannan_margin examples") {
  CHECK(brannan_margin({0.7, 1.0, 5, 0.0}) == 0.0);
  CHECK(brannan_margin({0.5, 1.0, 1, kPi}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(brannan_margin({0.5, 1.0, 3, kPi}) == doctest::Approx(1.125).epsilon(1e-14));
}

TEST_CASE("margin at theta = 0 is exactly zero") {
  for (double alpha : {0.02, 0.5, 0.98, 3.2}) {
    for (double beta : {1.0, 0.7, 4.0}) {
      for (long m : {1L, 3L, 21L, 101L}) {
        CHECK(brannan_margin({alpha, beta, m, 0.0}) == 0.0);
      }
    }
  }
}

TEST_CASE("known regime m <= 51: margin >= -1e-12") {
  double min_margin = 1.0;
  for (long m = 1; m <= 51; m += 2) {
    for (int a = 0; a < 25; ++a) {
      const double alpha = 0.02 + 0.04 * a;
      for (int j = 0; j <= 512; ++j) {
        const double theta = kPi * j / 512.0;
        min_margin = std::min(min_margin, brannan_margin({alpha, 1.0, m, theta}));
      }
    }
  }
  CHECK(min_margin >= -1e-12);
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(partial_sum({0.5, 1.0, 2, 0.0}), DomainError);   // even m
  CHECK_THROWS_AS(partial_sum({0.5, 1.0, -3, 0.0}), DomainError);  // negative m
  CHECK_THROWS_AS(partial_sum({0.0, 1.0, 3, 0.0}), DomainError);   // alpha = 0
  CHECK_THROWS_AS(partial_sum({0.5, 0.0, 3, 0.0}), DomainError);   // beta = 0
  CHECK_THROWS_AS(partial_sum({0.5, 1.0, 3, 4.0}), DomainError);   // theta out of range
  CHECK_THROWS_AS(binom_coeff(0.5, -1), DomainError);
  CHECK_THROWS_AS(pochhammer(0.5, -1), DomainError);
}
