// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "brannan/inequalities.hpp"
#include "brannan/integral_rep.hpp"
#include "brannan/quadrature.hpp"
#include "brannan/scanner.hpp"
#include "brannan/series.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

using brannan::quad::QuadratureSpec;

// --- tiny big-unsigned arithmetic for the exact rational product oracle ----

struct BigUint {
  std::vector<uint32_t> limbs{0};  // little-endian base 2^32

  static BigUint one() { return BigUint{{1}}; }

  void mul_small(uint32_t f) {
    uint64_t carry = 0;
    for (uint32_t& limb : limbs) {
      const uint64_t p = static_cast<uint64_t>(limb) * f + carry;
      limb = static_cast<uint32_t>(p);
      carry = p >> 32;
    }
    while (carry) {
      limbs.push_back(static_cast<uint32_t>(carry));
      carry >>= 32;
    }
  }

  // -1, 0, +1 for this <,==,> other
  int compare(const BigUint& other) const {
    if (limbs.size() != other.limbs.size())
      return limbs.size() < other.limbs.size() ? -1 : 1;
    for (size_t i = limbs.size(); i-- > 0;) {
      if (limbs[i] != other.limbs[i]) return limbs[i] < other.limbs[i] ? -1 : 1;
    }
    return 0;
  }
};

// Exact sign of 6 * prod_{k=1}^{K} (1 - 1/(3k)) - 4/3, i.e. 9 N ? 2 D with
// N = prod (3k-1), D = prod 3k.
int product_vs_four_thirds(long K) {
  BigUint num = BigUint::one(), den = BigUint::one();
  for (long k = 1; k <= K; ++k) {
    num.mul_small(static_cast<uint32_t>(3 * k - 1));
    den.mul_small(static_cast<uint32_t>(3 * k));
  }
  num.mul_small(9);
  den.mul_small(2);
  return num.compare(den);
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  std::string title;
  double time_limit_seconds;
  std::function<void(std::string& detail)> body;  // throws or appends to fail()
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw Failure(msg);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// criterion 1 -----------------------------------------------------------------
void kernel_identity(std::string& detail) {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> ut(0.0, 0.999);
  std::uniform_real_distribution<double> uth(-kPi, kPi);
  std::uniform_int_distribution<long> un(1, 60);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double t = ut(rng);
    const double theta = uth(rng);
    const long n = un(rng);
    const brannan::integral::KernelBC k = brannan::integral::kernel_BC({t, theta, n});
    std::complex<double> ref{0.0, 0.0};
    for (long j = 1; j <= 2 * n - 1; ++j)
      ref += std::pow(-t, static_cast<double>(j - 1)) *
             std::complex<double>(std::cos(j * theta), std::sin(j * theta));
    worst = std::max(worst, std::abs(std::complex<double>(k.b, k.c) - ref));
  }
  detail = "max |closed form - sum| = " + fmt(worst);
  require(worst <= 1e-12, detail);
}

// criterion 2 -----------------------------------------------------------------
void lemma1_equivalence(std::string& detail) {
  const QuadratureSpec spec;
  double worst = 0.0;
  int cells = 0;
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (long m : {3L, 9L, 53L, 103L}) {
      for (double theta : {0.0, kPi / 4.0, kPi / 2.0, 2.0 * kPi / 3.0, 0.99 * kPi}) {
        const auto s = brannan::integral::phi_series(alpha, m, theta);
        const auto q = brannan::integral::phi_quadrature(alpha, m, theta, spec);
        const double rel =
            std::hypot(q.value.re - s.value.re, q.value.im - s.value.im) /
            s.value.modulus();
        worst = std::max(worst, rel);
        ++cells;
      }
    }
  }
  detail = std::to_string(cells) + " cells, max relative difference = " + fmt(worst);
  require(worst <= 1e-7, detail);
}

// criterion 3 -----------------------------------------------------------------
void f_closed_form(std::string& detail) {
  const QuadratureSpec spec;
  double worst = 0.0;
  for (double t : {0.01, 0.1, 0.5, 0.9, 0.999}) {
    const double expect = 2.0 * std::sqrt((1.0 - t) / t);
    const double got = brannan::integral::weight_F(t, 0.5, spec);
    worst = std::max(worst, std::fabs(got - expect) / expect);
  }
  detail = "max relative difference = " + fmt(worst);
  require(worst <= 1e-9, detail);
}

// criterion 4 -----------------------------------------------------------------
void known_regime_scan(std::string& detail) {
  brannan::scan::GridSpec g;
  g.check = "brannan";
  g.alpha_range = {0.02, 0.98, 0.04, true};
  g.angle_range = {0.0, kPi, kPi / 256.0, true};
  for (long m = 3; m <= 51; m += 2) g.n_list.push_back(m);
  const brannan::scan::CheckReport r = brannan::scan::scan(g, QuadratureSpec{});
  detail = std::to_string(r.cells_evaluated) +
           " cells, min margin = " + fmt(r.min_margin) + " at m=" +
           std::to_string(r.argmin.n) + ", alpha=" + fmt(r.argmin.alpha) +
           ", theta=" + fmt(r.argmin.angle_or_x);
  require(r.cells_evaluated == 25L * 25L * 257L, "unexpected cell count");
  require(r.min_margin >= -1e-12, detail);
}

// criterion 5 -----------------------------------------------------------------
void theorem12_regime(std::string& detail) {
  brannan::scan::GridSpec g;
  g.check = "phi_sq_diff";
  g.alpha_range = {0.1, 0.9, 0.4, true};  // {0.1, 0.5, 0.9}
  g.angle_range = {0.0, 2.0 * kPi / 3.0, kPi / 64.0, true};
  g.n_list = {52, 60};
  const brannan::scan::CheckReport r = brannan::scan::scan(g, QuadratureSpec{});
  double worst_slack = std::numeric_limits<double>::infinity();
  for (const auto& c : r.cells) {
    require(!c.failed, "cell failed: " + c.reason);
    worst_slack = std::min(worst_slack, c.margin + 2.0 * c.error_estimate);
  }
  detail = std::to_string(r.cells_evaluated) +
           " cells, min margin = " + fmt(r.min_margin) +
           ", min (margin + 2 err) = " + fmt(worst_slack);
  require(worst_slack >= 0.0, detail);
}

// criterion 6 -----------------------------------------------------------------
void lemma4_exhaustive(std::string& detail) {
  double min_margin = std::numeric_limits<double>::infinity();
  const double theta_step = (2.0 * kPi / 3.0 - kPi / 2.0) / 200.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.005 * i;
    for (int j = 0; j <= 200; ++j) {
      const double theta = kPi / 2.0 + theta_step * j;
      min_margin = std::min(min_margin,
                            brannan::ineq::lemma4_margin(std::min(t, 1.0), theta).margin);
    }
  }
  const double g_at = brannan::ineq::lemma4_quadratic(13.0 / 5.0);
  const double g_err = std::fabs(g_at - 31.0 / 250.0);
  detail = "40401 cells, min margin = " + fmt(min_margin) +
           ", |g(13/5) - 31/250| = " + fmt(g_err);
  require(min_margin >= -1e-12, detail);
  require(g_err <= 1e-15, detail);
}

// criterion 7 -----------------------------------------------------------------
void theorem3_regime(std::string& detail) {
  const QuadratureSpec spec;
  double min_margin = std::numeric_limits<double>::infinity();
  double worst_collapse = 0.0;
  for (double alpha : {1.0 / 3.0, 0.5, 0.7, 0.9}) {
    for (long n : {27L, 40L, 53L}) {
      for (double x : {0.5, 0.75, 1.0}) {
        const auto m = brannan::ineq::theorem3_margin(alpha, n, x, spec);
        min_margin = std::min(min_margin, m.margin);
        if (x == 1.0) {
          const double prod = brannan::ineq::product_one_minus(alpha, 2 * n - 1);
          worst_collapse = std::max(worst_collapse, std::fabs(m.rhs - prod) / prod);
        }
      }
    }
  }
  detail = "36 cells, min margin = " + fmt(min_margin) +
           ", max x=1 collapse relative error = " + fmt(worst_collapse);
  require(min_margin >= 0.0, detail);
  require(worst_collapse <= 1e-10, detail);
}

// criterion 8 -----------------------------------------------------------------
void product_discrepancy(std::string& detail) {
  const double p53 = 6.0 * brannan::ineq::product_one_minus(1.0 / 3.0, 53);
  const double p27 = 6.0 * brannan::ineq::product_one_minus(1.0 / 3.0, 27);
  const int sign53 = product_vs_four_thirds(53);
  const int sign27 = product_vs_four_thirds(27);
  detail = "6 prod_53 = " + fmt(p53) + " (exact sign " + std::to_string(sign53) +
           "), 6 prod_27 = " + fmt(p27) + " (exact sign " + std::to_string(sign27) + ")";
  require(p53 < 4.0 / 3.0 && sign53 < 0, detail);
  require(p27 > 4.0 / 3.0 && sign27 > 0, detail);
}

// criterion 9 -----------------------------------------------------------------
void proof_constant_ledger(std::string& detail) {
  const auto at27 = brannan::ineq::proof_constant_checks(27);
  const double c2 = at27[1].margin;  // (3/2)ln2 - 1 - 2ln2/55
  const double c4 = at27[3].margin;  // 27/50 - 1/2 - 2/55
  const double c5 = at27[4].margin;  // 5/12 - 12/27
  const bool sign_change_at_29 = brannan::ineq::proof_constant_checks(28)[4].margin < 0.0 &&
                                 brannan::ineq::proof_constant_checks(29)[4].margin > 0.0;
  detail = "margins: " + fmt(c2) + ", " + fmt(c4) + ", " + fmt(c5) +
           "; first positive n for 5/12 - 12/n is 29: " +
           (sign_change_at_29 ? "yes" : "no");
  require(c2 > 0.0 && c4 > 0.0 && c5 < 0.0 && sign_change_at_29, detail);
}

// criterion 10 ----------------------------------------------------------------
void conjecture_scan(std::string& detail) {
  brannan::scan::GridSpec g;
  g.check = "conjecture";
  g.alpha_range = {0.05, 0.30, 0.05, true};
  g.x_range = {0.5, 1.0, 0.025, true};
  g.n_list = {27, 52, 100};
  const brannan::scan::CheckReport r = brannan::scan::scan(g, QuadratureSpec{});
  double worst_err = 0.0;
  for (const auto& c : r.cells) {
    require(!c.failed, "cell failed: " + c.reason);
    worst_err = std::max(worst_err, c.error_estimate);
  }
  detail = std::to_string(r.cells_evaluated) +
           " cells, min margin = " + fmt(r.min_margin) + " at alpha=" +
           fmt(r.argmin.alpha) + ", n=" + std::to_string(r.argmin.n) + ", x=" +
           fmt(r.argmin.angle_or_x) + "; max per-cell error estimate = " + fmt(worst_err);
  require(r.cells_evaluated == 6L * 3L * 21L, "unexpected cell count");
  require(worst_err < 1e-8, detail);
}

// criterion 11 ----------------------------------------------------------------
void determinism(std::string& detail) {
  brannan::scan::GridSpec g;
  g.check = "phi_sq_diff";
  g.alpha_range = {0.3, 0.7, 0.4, true};
  g.angle_range = {0.0, 2.0 * kPi / 3.0, kPi / 8.0, true};
  g.n_list = {52};
  auto render = [&](int threads) {
    const brannan::scan::CheckReport r = brannan::scan::scan(g, QuadratureSpec{}, threads);
    std::ostringstream os;
    brannan::scan::emit(r, brannan::scan::Format::json, os);
    return os.str();
  };
  const std::string j1 = render(1);
  const std::string j8 = render(8);

  brannan::scan::GridSpec gb;
  gb.check = "brannan";
  gb.alpha_range = {0.02, 0.98, 0.04, true};
  gb.angle_range = {0.0, kPi, kPi / 64.0, true};
  gb.n_list = {3, 21, 51};
  auto render_b = [&](int threads) {
    const brannan::scan::CheckReport r = brannan::scan::scan(gb, QuadratureSpec{}, threads);
    std::ostringstream os;
    brannan::scan::emit(r, brannan::scan::Format::json, os);
    return os.str();
  };
  const std::string b1 = render_b(1);
  const std::string b8 = render_b(8);
  detail = "phi_sq_diff report " + std::to_string(j1.size()) + " bytes, brannan report " +
           std::to_string(b1.size()) + " bytes";
  require(j1 == j8, "phi_sq_diff JSON differs between 1 and 8 threads");
  require(b1 == b8, "brannan JSON differs between 1 and 8 threads");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "kernel identity, 200 seeded samples", 1.0, kernel_identity},
      {2, "phi quadrature vs series on the 100-point grid", 60.0, lemma1_equivalence},
      {3, "F closed form at alpha = 1/2", 30.0, f_closed_form},
      {4, "brannan margin >= -1e-12 for m <= 51", 300.0, known_regime_scan},
      {5, "phi_sq_diff >= -2 err for n in {52, 60}", 600.0, theorem12_regime},
      {6, "lemma4 exhaustive grid and g(13/5)", 30.0, lemma4_exhaustive},
      {7, "theorem3 margins and x = 1 collapse", 120.0, theorem3_regime},
      {8, "product discrepancy (53 vs 27 factors)", 10.0, product_discrepancy},
      {9, "proof-constant ledger at n = 27", 10.0, proof_constant_ledger},
      {10, "conjecture scan completes with tight error estimates", 600.0, conjecture_scan},
      {11, "byte-identical reports for 1 and 8 threads", 300.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    std::string error;
    try {
      c.body(detail);
    } catch (const std::exception& e) {
      ok = false;
      error = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && seconds > c.time_limit_seconds) {
      ok = false;
      error = "exceeded time limit of " + fmt(c.time_limit_seconds) + " s";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title
              << " [" << fmt(seconds) << " s]";
    if (!detail.empty()) std::cout << " -- " << detail;
    if (!ok && !error.empty() && error != detail) std::cout << " -- " << error;
    std::cout << std::endl;
    if (!ok) ++failures;
  }
  if (failures) std::cout << failures << " criterion(s) failed" << std::endl;
  return failures;
}
