#include "brannan/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "brannan/errors.hpp"
#include "brannan/inequalities.hpp"
#include "brannan/integral_rep.hpp"
#include "brannan/scanner.hpp"
#include "brannan/series.hpp"

namespace brannan::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct OutputConfig {
  std::string format = "human";
  std::string out_path;
  bool emit_timing = false;
  double violation_tol = 1e-12;
  double near_threshold = 1e-6;
};

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_levels = 12;

  quad::QuadratureSpec spec() const {
    quad::QuadratureSpec s;
    s.abs_tol = abs_tol;
    s.rel_tol = rel_tol;
    s.max_levels = max_levels;
    return s;
  }
};

void add_output_flags(CLI::App* cmd, OutputConfig* oc) {
  cmd->add_option("--format", oc->format, "Output format")
      ->check(CLI::IsMember({"human", "csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", oc->out_path, "Write the report to this file (atomic)");
  cmd->add_flag("--emit-timing", oc->emit_timing,
                "Include wall_time_seconds in JSON reports");
  cmd->add_option("--violation-tol", oc->violation_tol,
                  "Margins below -tol count as violations (exit 1)")
      ->capture_default_str();
  cmd->add_option("--near-threshold", oc->near_threshold,
                  "Near-violation threshold for reports")
      ->capture_default_str();
}

void add_quad_flags(CLI::App* cmd, QuadConfig* qc) {
  cmd->add_option("--abs-tol", qc->abs_tol, "Quadrature absolute tolerance")
      ->capture_default_str();
  cmd->add_option("--rel-tol", qc->rel_tol, "Quadrature relative tolerance")
      ->capture_default_str();
  cmd->add_option("--max-levels", qc->max_levels, "Quadrature refinement level cap")
      ->capture_default_str();
}

scan::Cell margin_cell(const ineq::MarginResult& m, long n, double alpha,
                       double angle_or_x) {
  scan::Cell c;
  c.check = m.name;
  c.n = n;
  c.alpha = alpha;
  c.angle_or_x = angle_or_x;
  c.lhs = m.lhs;
  c.rhs = m.rhs;
  c.margin = m.margin;
  c.error_estimate = m.error_estimate;
  return c;
}

struct CommandOutput {
  scan::CheckReport report;
  std::vector<std::string> human_notes;  // extra lines for human format
  std::string human_headline;            // optional line printed first
};

void print_human(std::ostream& out, const CommandOutput& co) {
  if (!co.human_headline.empty()) out << co.human_headline << '\n';
  const scan::CheckReport& r = co.report;
  for (const scan::Cell& c : r.cells) {
    out << c.check << " n=" << c.n << " alpha=" << fmt17(c.alpha)
        << " angle_or_x=" << fmt17(c.angle_or_x);
    if (c.failed) {
      out << " FAILED: " << c.reason << '\n';
    } else {
      out << " lhs=" << fmt17(c.lhs) << " rhs=" << fmt17(c.rhs)
          << " margin=" << fmt17(c.margin) << " err=" << fmt17(c.error_estimate) << '\n';
    }
  }
  for (const std::string& note : co.human_notes) out << note << '\n';
  out << "cells=" << r.cells_evaluated << " min_margin=" << fmt17(r.min_margin)
      << " argmin(check=" << r.argmin.check << ",n=" << r.argmin.n
      << ",alpha=" << fmt17(r.argmin.alpha)
      << ",angle_or_x=" << fmt17(r.argmin.angle_or_x) << ")"
      << " violations=" << r.violations.size()
      << " near_violations=" << r.near_violations.size() << '\n';
}

int finish(const CommandOutput& co, const OutputConfig& oc, std::ostream& out,
           std::ostream& err) {
  scan::EmitOptions eo;
  eo.include_timing = oc.emit_timing;
  if (!oc.out_path.empty()) {
    const scan::Format f = oc.format == "csv" ? scan::Format::csv : scan::Format::json;
    scan::emit(co.report, f, oc.out_path, eo);
    err << "report written to " << oc.out_path << '\n';
  } else if (oc.format == "csv") {
    scan::emit(co.report, scan::Format::csv, out, eo);
  } else if (oc.format == "json") {
    scan::emit(co.report, scan::Format::json, out, eo);
  } else {
    print_human(out, co);
  }
  if (co.report.wall_time_seconds > 0.0)
    err << "wall_time_seconds=" << co.report.wall_time_seconds << '\n';
  for (const scan::Cell& c : co.report.cells)
    if (c.failed || c.margin < -oc.violation_tol) return 1;
  return 0;
}

scan::GridSpec point_grid(const std::string& check, const OutputConfig& oc) {
  scan::GridSpec g;
  g.check = check;
  g.near_violation_threshold = oc.near_threshold;
  g.violation_threshold = oc.violation_tol;
  return g;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"brannan: signed margins for Brannan-type coefficient inequalities"};
  app.require_subcommand(1);

  const double pi = std::numbers::pi;

  // ---- coeffs / margin --------------------------------------------------
  struct SeriesArgs {
    double alpha = 0.5;
    double beta = 1.0;
    long m = 1;
    double theta = 0.0;
    bool degrees = false;
  };
  auto add_series_flags = [&](CLI::App* cmd, SeriesArgs* sa, bool with_beta) {
    cmd->add_option("--alpha", sa->alpha, "Exponent alpha (> 0)")->required();
    if (with_beta)
      cmd->add_option("--beta", sa->beta, "Exponent beta (> 0)")->capture_default_str();
    cmd->add_option("--m", sa->m, "Odd coefficient index m = 2n-1")->required();
    cmd->add_option("--theta", sa->theta, "Angle (radians unless --degrees)")
        ->capture_default_str();
    cmd->add_flag("--degrees", sa->degrees, "Interpret angles in degrees");
  };

  SeriesArgs coeffs_args;
  OutputConfig coeffs_out;
  CLI::App* coeffs = app.add_subcommand(
      "coeffs", "Evaluate the coefficient sum A_m(alpha,beta,e^{i theta})");
  add_series_flags(coeffs, &coeffs_args, true);
  add_output_flags(coeffs, &coeffs_out);

  SeriesArgs margin_args;
  OutputConfig margin_out;
  CLI::App* margin = app.add_subcommand(
      "margin", "Brannan margin A_m(alpha,beta,1) - |A_m(alpha,beta,e^{i theta})|");
  add_series_flags(margin, &margin_args, true);
  add_output_flags(margin, &margin_out);

  // ---- phi ----------------------------------------------------------------
  struct PhiArgs {
    double alpha = 0.5;
    long m = 1;
    double theta = 0.0;
    bool degrees = false;
    std::string method = "both";
  };
  PhiArgs phi_args;
  OutputConfig phi_out;
  QuadConfig phi_quad;
  CLI::App* phi = app.add_subcommand(
      "phi", "Phi(theta) by the series route, the integral route, or both");
  phi->add_option("--alpha", phi_args.alpha, "Exponent alpha in (0,1)")->required();
  phi->add_option("--m", phi_args.m, "Odd coefficient index m = 2n-1")->required();
  phi->add_option("--theta", phi_args.theta, "Angle (radians unless --degrees)")
      ->capture_default_str();
  phi->add_flag("--degrees", phi_args.degrees, "Interpret angles in degrees");
  phi->add_option("--method", phi_args.method, "series | quadrature | both")
      ->check(CLI::IsMember({"series", "quadrature", "both"}))
      ->capture_default_str();
  add_quad_flags(phi, &phi_quad);
  add_output_flags(phi, &phi_out);

  // ---- lemmas ---------------------------------------------------------------
  struct LemmaArgs {
    std::string id;
    std::string variant = "stated";
    double alpha = 0.5;
    long n = 27;
    double theta = 0.0;
    double t = 0.0;
    bool degrees = false;
  };
  LemmaArgs lemma_args;
  OutputConfig lemma_out;
  QuadConfig lemma_quad;
  CLI::App* lemmas =
      app.add_subcommand("lemmas", "Margins of the lemma-level integral inequalities");
  lemmas->add_option("--id", lemma_args.id, "lemma3a | lemma3b | lemma4 | lemma5a | lemma5b")
      ->required()
      ->check(CLI::IsMember({"lemma3a", "lemma3b", "lemma4", "lemma5a", "lemma5b"}));
  lemmas->add_option("--variant", lemma_args.variant,
                     "stated | proof (constant pair for lemma5, denominator form for lemma3b)")
      ->check(CLI::IsMember({"stated", "proof"}))
      ->capture_default_str();
  lemmas->add_option("--alpha", lemma_args.alpha, "Exponent alpha in (0,1)")
      ->capture_default_str();
  lemmas->add_option("--n", lemma_args.n, "Index n (stated regime n >= 27)")
      ->capture_default_str();
  lemmas->add_option("--theta", lemma_args.theta, "Angle (radians unless --degrees)")
      ->required();
  lemmas->add_option("--t", lemma_args.t, "Point t in [0,1] (lemma4 only)")
      ->capture_default_str();
  lemmas->add_flag("--degrees", lemma_args.degrees, "Interpret angles in degrees");
  add_quad_flags(lemmas, &lemma_quad);
  add_output_flags(lemmas, &lemma_out);

  // ---- theorem3 / conjecture -------------------------------------------------
  struct TaylorArgs {
    double alpha = 0.5;
    long n = 27;
    double x = 1.0;
  };
  TaylorArgs th3_args;
  OutputConfig th3_out;
  QuadConfig th3_quad;
  CLI::App* th3 = app.add_subcommand(
      "theorem3", "Taylor-remainder margin for alpha in [1/3,1), x in [1/2,1]");
  th3->add_option("--alpha", th3_args.alpha, "Exponent alpha in (0,1)")->required();
  th3->add_option("--n", th3_args.n, "Index n (stated regime n >= 27)")
      ->capture_default_str();
  th3->add_option("--x", th3_args.x, "x = -cos(theta) in [1/2, 1]")->capture_default_str();
  add_quad_flags(th3, &th3_quad);
  add_output_flags(th3, &th3_out);

  TaylorArgs conj_args;
  conj_args.alpha = 0.2;
  OutputConfig conj_out;
  QuadConfig conj_quad;
  CLI::App* conj = app.add_subcommand(
      "conjecture", "Same margin restricted to the open range alpha in (0,1/3)");
  conj->add_option("--alpha", conj_args.alpha, "Exponent alpha in (0,1/3)")->required();
  conj->add_option("--n", conj_args.n, "Index n")->capture_default_str();
  conj->add_option("--x", conj_args.x, "x = -cos(theta) in [1/2, 1]")->capture_default_str();
  add_quad_flags(conj, &conj_quad);
  add_output_flags(conj, &conj_out);

  // ---- constants ---------------------------------------------------------------
  long constants_n = 27;
  OutputConfig constants_out;
  CLI::App* constants = app.add_subcommand(
      "constants", "The five scalar positivity constants used inside the proofs");
  constants->add_option("--n", constants_n, "Index n")->capture_default_str();
  add_output_flags(constants, &constants_out);

  // ---- scan ---------------------------------------------------------------------
  struct ScanArgs {
    std::string check;
    std::vector<long> n_list;
    std::vector<double> alpha_range;
    std::vector<double> theta_range;
    std::vector<double> x_range;
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double theta = std::numeric_limits<double>::quiet_NaN();
    double x = std::numeric_limits<double>::quiet_NaN();
    bool degrees = false;
    int threads = 0;
  };
  ScanArgs scan_args;
  OutputConfig scan_out;
  QuadConfig scan_quad;
  CLI::App* scan_cmd =
      app.add_subcommand("scan", "Grid sweep of a margin check over (alpha, angle/x, n)");
  {
    std::ostringstream checks;
    for (const auto& name : scan::known_checks()) checks << name << " ";
    scan_cmd->add_option("--check", scan_args.check, "One of: " + checks.str())->required();
  }
  scan_cmd->add_option("--n-list", scan_args.n_list, "Indices (comma separated)")
      ->required()
      ->delimiter(',');
  scan_cmd->add_option("--alpha-range", scan_args.alpha_range, "LO HI STEP")->expected(3);
  scan_cmd->add_option("--alpha", scan_args.alpha, "Single alpha (t for lemma4)");
  scan_cmd->add_option("--theta-range", scan_args.theta_range, "LO HI STEP")->expected(3);
  scan_cmd->add_option("--theta", scan_args.theta, "Single angle");
  scan_cmd->add_option("--x-range", scan_args.x_range, "LO HI STEP")->expected(3);
  scan_cmd->add_option("--x", scan_args.x, "Single x");
  scan_cmd->add_flag("--degrees", scan_args.degrees, "Interpret angles in degrees");
  scan_cmd->add_option("--threads", scan_args.threads,
                       "Worker thread cap (0 = hardware)")
      ->envname("BRANNAN_THREADS")
      ->capture_default_str();
  add_quad_flags(scan_cmd, &scan_quad);
  add_output_flags(scan_cmd, &scan_out);

  // ---- parse ----------------------------------------------------------------
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto to_radians = [&](double v, bool degrees) { return degrees ? v * pi / 180.0 : v; };

  try {
    if (*coeffs) {
      coeffs_args.theta = to_radians(coeffs_args.theta, coeffs_args.degrees);
      const series::SeriesQuery q{coeffs_args.alpha, coeffs_args.beta, coeffs_args.m,
                                  coeffs_args.theta};
      const series::ComplexValue v = series::partial_sum(q);
      scan::Cell c;
      c.check = "coeffs";
      c.n = q.m;
      c.alpha = q.alpha;
      c.angle_or_x = q.theta;
      c.lhs = v.re;
      c.rhs = v.im;
      c.margin = v.modulus();
      c.error_estimate = static_cast<double>(q.m) *
                         std::numeric_limits<double>::epsilon() *
                         series::abs_term_sum(q.alpha, q.beta, q.m);
      CommandOutput co{scan::assemble_report(point_grid("coeffs", coeffs_out),
                                             quad::QuadratureSpec{}, {c}),
                       {},
                       {}};
      co.human_headline = "A_" + std::to_string(q.m) + "(alpha=" + fmt17(q.alpha) +
                          ", beta=" + fmt17(q.beta) + ", theta=" + fmt17(q.theta) +
                          ") = " + fmt17(v.re) + (v.im < 0.0 ? " - " : " + ") +
                          fmt17(std::fabs(v.im)) + "i";
      if (coeffs_out.format == "human" && coeffs_out.out_path.empty()) {
        out << co.human_headline << '\n';
        return 0;
      }
      return finish(co, coeffs_out, out, err);
    }

    if (*margin) {
      margin_args.theta = to_radians(margin_args.theta, margin_args.degrees);
      const series::SeriesQuery q{margin_args.alpha, margin_args.beta, margin_args.m,
                                  margin_args.theta};
      const series::BrannanEval ev = series::brannan_eval(q);
      scan::Cell c;
      c.check = "brannan";
      c.n = q.m;
      c.alpha = q.alpha;
      c.angle_or_x = q.theta;
      c.lhs = ev.at_one;
      c.rhs = ev.abs_at_theta;
      c.margin = ev.margin;
      c.error_estimate = static_cast<double>(q.m) *
                         std::numeric_limits<double>::epsilon() *
                         series::abs_term_sum(q.alpha, q.beta, q.m);
      CommandOutput co{scan::assemble_report(point_grid("brannan", margin_out),
                                             quad::QuadratureSpec{}, {c}),
                       {},
                       {}};
      return finish(co, margin_out, out, err);
    }

    if (*phi) {
      phi_args.theta = to_radians(phi_args.theta, phi_args.degrees);
      std::vector<scan::Cell> cells;
      integral::PhiValue ps, pq;
      const bool want_series = phi_args.method != "quadrature";
      const bool want_quad = phi_args.method != "series";
      auto phi_cell = [&](const char* name, const integral::PhiValue& pv) {
        scan::Cell c;
        c.check = name;
        c.n = phi_args.m;
        c.alpha = phi_args.alpha;
        c.angle_or_x = phi_args.theta;
        c.lhs = pv.value.re;
        c.rhs = pv.value.im;
        c.margin = pv.value.modulus();
        c.error_estimate = pv.error_estimate;
        return c;
      };
      if (want_series) {
        ps = integral::phi_series(phi_args.alpha, phi_args.m, phi_args.theta);
        cells.push_back(phi_cell("phi_series", ps));
      }
      if (want_quad) {
        pq = integral::phi_quadrature(phi_args.alpha, phi_args.m, phi_args.theta,
                                      phi_quad.spec());
        cells.push_back(phi_cell("phi_quadrature", pq));
      }
      if (want_series && want_quad) {
        scan::Cell c;
        c.check = "phi_agreement";
        c.n = phi_args.m;
        c.alpha = phi_args.alpha;
        c.angle_or_x = phi_args.theta;
        c.lhs = std::hypot(pq.value.re - ps.value.re, pq.value.im - ps.value.im);
        c.rhs = std::max(1e-8 * ps.value.modulus(),
                         ps.error_estimate + pq.error_estimate);
        c.margin = c.rhs - c.lhs;  // nonnegative = the two routes agree
        c.error_estimate = ps.error_estimate + pq.error_estimate;
        cells.push_back(c);
      }
      CommandOutput co{scan::assemble_report(point_grid("phi", phi_out), phi_quad.spec(),
                                             std::move(cells)),
                       {},
                       {}};
      return finish(co, phi_out, out, err);
    }

    if (*lemmas) {
      lemma_args.theta = to_radians(lemma_args.theta, lemma_args.degrees);
      const bool proof = lemma_args.variant == "proof";
      ineq::MarginResult m;
      double first_axis = lemma_args.alpha;
      if (lemma_args.id == "lemma3a" || lemma_args.id == "lemma3b") {
        m = ineq::lemma3_margin(
            lemma_args.id == "lemma3a" ? ineq::LemmaPart::a : ineq::LemmaPart::b,
            lemma_args.alpha, lemma_args.n, lemma_args.theta, lemma_quad.spec(), proof);
      } else if (lemma_args.id == "lemma4") {
        m = ineq::lemma4_margin(lemma_args.t, lemma_args.theta);
        first_axis = lemma_args.t;
      } else {
        m = ineq::lemma5_margin(
            lemma_args.id == "lemma5a" ? ineq::LemmaPart::a : ineq::LemmaPart::b,
            proof ? ineq::Lemma5Variant::proof_12_25 : ineq::Lemma5Variant::stated_27_50,
            lemma_args.alpha, lemma_args.n, lemma_args.theta, lemma_quad.spec());
      }
      CommandOutput co{
          scan::assemble_report(point_grid(m.name, lemma_out), lemma_quad.spec(),
                                {margin_cell(m, lemma_args.n, first_axis, lemma_args.theta)}),
          {},
          {}};
      if (m.below_threshold)
        co.human_notes.push_back("note: n below the stated threshold of the result");
      return finish(co, lemma_out, out, err);
    }

    auto run_taylor = [&](const TaylorArgs& ta, const QuadConfig& qc,
                          const OutputConfig& oc, bool conjecture_range) {
      const ineq::MarginResult m =
          conjecture_range
              ? ineq::conjecture_margin(ta.alpha, ta.n, ta.x, qc.spec())
              : ineq::theorem3_margin(ta.alpha, ta.n, ta.x, qc.spec());
      std::vector<scan::Cell> cells{margin_cell(m, ta.n, ta.alpha, ta.x)};
      for (const auto& [name, sub] : m.sub_margins) {
        scan::Cell c;
        c.check = m.name + "_" + name;
        c.n = ta.n;
        c.alpha = ta.alpha;
        c.angle_or_x = ta.x;
        c.lhs = sub + m.lhs;  // the coefficient sum itself
        c.rhs = m.lhs;        // the Taylor lower bound
        c.margin = sub;
        c.error_estimate = 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(m.lhs);
        cells.push_back(c);
      }
      CommandOutput co{
          scan::assemble_report(point_grid(m.name, oc), qc.spec(), std::move(cells)),
          {},
          {}};
      if (m.below_threshold)
        co.human_notes.push_back("note: parameters below the stated regime of the result");
      return finish(co, oc, out, err);
    };
    if (*th3) return run_taylor(th3_args, th3_quad, th3_out, false);
    if (*conj) return run_taylor(conj_args, conj_quad, conj_out, true);

    if (*constants) {
      std::vector<scan::Cell> cells;
      for (const ineq::MarginResult& m : ineq::proof_constant_checks(constants_n))
        cells.push_back(margin_cell(m, constants_n, 0.0, 0.0));
      CommandOutput co{scan::assemble_report(point_grid("constants", constants_out),
                                             quad::QuadratureSpec{}, std::move(cells)),
                       {},
                       {}};
      return finish(co, constants_out, out, err);
    }

    if (*scan_cmd) {
      scan::GridSpec g;
      g.check = scan_args.check;
      g.n_list = scan_args.n_list;
      g.near_violation_threshold = scan_out.near_threshold;
      g.violation_threshold = scan_out.violation_tol;
      auto range_of = [&](const std::vector<double>& r, double single, bool angle) {
        scan::Range out_r;
        if (!r.empty()) {
          out_r.lo = angle ? to_radians(r[0], scan_args.degrees) : r[0];
          out_r.hi = angle ? to_radians(r[1], scan_args.degrees) : r[1];
          out_r.step = angle ? to_radians(r[2], scan_args.degrees) : r[2];
          out_r.active = true;
        } else if (!std::isnan(single)) {
          const double v = angle ? to_radians(single, scan_args.degrees) : single;
          out_r = {v, v, 1.0, true};
        }
        return out_r;
      };
      g.alpha_range = range_of(scan_args.alpha_range, scan_args.alpha, false);
      g.angle_range = range_of(scan_args.theta_range, scan_args.theta, true);
      g.x_range = range_of(scan_args.x_range, scan_args.x, false);
      const scan::CheckReport report = scan::scan(g, scan_quad.spec(), scan_args.threads);
      return finish({report, {}, {}}, scan_out, out, err);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnknownCheck& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace brannan::cli
