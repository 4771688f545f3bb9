#include "brannan/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "brannan/errors.hpp"
#include "brannan/inequalities.hpp"
#include "brannan/integral_rep.hpp"
#include "brannan/series.hpp"

namespace brannan::scan {

namespace {

using CellFn = std::function<void(Cell&, const quad::QuadratureSpec&)>;

struct CheckDesc {
  bool uses_x = false;     // second axis is x rather than an angle
  bool odd_n = false;      // n_list entries are odd indices m
  CellFn fn;
};

void fill_from_margin(Cell& c, const ineq::MarginResult& m) {
  c.lhs = m.lhs;
  c.rhs = m.rhs;
  c.margin = m.margin;
  c.error_estimate = m.error_estimate;
}

const std::map<std::string, CheckDesc>& check_registry() {
  static const std::map<std::string, CheckDesc> registry = [] {
    std::map<std::string, CheckDesc> r;
    r["brannan"] = {false, true, [](Cell& c, const quad::QuadratureSpec&) {
                      const series::SeriesQuery q{c.alpha, 1.0, c.n, c.angle_or_x};
                      const series::BrannanEval ev = series::brannan_eval(q);
                      c.lhs = ev.at_one;
                      c.rhs = ev.abs_at_theta;
                      c.margin = ev.margin;
                      c.error_estimate = static_cast<double>(c.n) *
                                         std::numeric_limits<double>::epsilon() *
                                         series::abs_term_sum(c.alpha, 1.0, c.n);
                    }};
    r["phi_sq_diff"] = {false, false, [](Cell& c, const quad::QuadratureSpec& qs) {
                          const integral::DiffResult d = integral::phi_sq_diff(
                              c.alpha, 2 * c.n - 1, c.angle_or_x, qs,
                              integral::DiffMethod::via_phi);
                          c.lhs = d.phi0_sq;
                          c.rhs = d.phi_theta_sq;
                          c.margin = d.value;
                          c.error_estimate = d.error_estimate;
                        }};
    r["lemma3a"] = {false, false, [](Cell& c, const quad::QuadratureSpec& qs) {
                      fill_from_margin(c, ineq::lemma3_margin(ineq::LemmaPart::a, c.alpha,
                                                              c.n, c.angle_or_x, qs));
                    }};
    r["lemma3b"] = {false, false, [](Cell& c, const quad::QuadratureSpec& qs) {
                      fill_from_margin(c, ineq::lemma3_margin(ineq::LemmaPart::b, c.alpha,
                                                              c.n, c.angle_or_x, qs));
                    }};
    r["lemma4"] = {false, false, [](Cell& c, const quad::QuadratureSpec&) {
                     // alpha axis carries t for this pointwise check
                     fill_from_margin(c, ineq::lemma4_margin(c.alpha, c.angle_or_x));
                   }};
    auto lemma5 = [](ineq::LemmaPart part, ineq::Lemma5Variant variant) {
      return [part, variant](Cell& c, const quad::QuadratureSpec& qs) {
        fill_from_margin(
            c, ineq::lemma5_margin(part, variant, c.alpha, c.n, c.angle_or_x, qs));
      };
    };
    r["lemma5a"] = {false, false,
                    lemma5(ineq::LemmaPart::a, ineq::Lemma5Variant::stated_27_50)};
    r["lemma5b"] = {false, false,
                    lemma5(ineq::LemmaPart::b, ineq::Lemma5Variant::stated_27_50)};
    r["lemma5a_proof"] = {false, false,
                          lemma5(ineq::LemmaPart::a, ineq::Lemma5Variant::proof_12_25)};
    r["lemma5b_proof"] = {false, false,
                          lemma5(ineq::LemmaPart::b, ineq::Lemma5Variant::proof_12_25)};
    r["theorem3"] = {true, false, [](Cell& c, const quad::QuadratureSpec& qs) {
                       fill_from_margin(c,
                                        ineq::theorem3_margin(c.alpha, c.n, c.angle_or_x, qs));
                     }};
    r["conjecture"] = {true, false, [](Cell& c, const quad::QuadratureSpec& qs) {
                         fill_from_margin(
                             c, ineq::conjecture_margin(c.alpha, c.n, c.angle_or_x, qs));
                       }};
    return r;
  }();
  return registry;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string json_num(double v) {
  if (!std::isfinite(v)) return "null";
  return fmt17(v);
}

void json_cell(std::ostream& os, const Cell& c) {
  os << "{\"check\":\"" << json_escape(c.check) << "\",\"n\":" << c.n
     << ",\"alpha\":" << json_num(c.alpha) << ",\"angle_or_x\":" << json_num(c.angle_or_x)
     << ",\"lhs\":" << json_num(c.lhs) << ",\"rhs\":" << json_num(c.rhs)
     << ",\"margin\":" << json_num(c.margin)
     << ",\"error_estimate\":" << json_num(c.error_estimate)
     << ",\"failed\":" << (c.failed ? "true" : "false") << ",\"reason\":\""
     << json_escape(c.reason) << "\"}";
}

void json_range(std::ostream& os, const Range& r) {
  if (!r.active) {
    os << "null";
    return;
  }
  os << "{\"lo\":" << json_num(r.lo) << ",\"hi\":" << json_num(r.hi)
     << ",\"step\":" << json_num(r.step) << "}";
}

}  // namespace

std::vector<double> axis_values(const Range& r) {
  if (!r.active) return {};
  if (!(r.step > 0.0) || !(r.lo <= r.hi))
    throw DomainError("axis range requires lo <= hi and step > 0");
  const double ratio = (r.hi - r.lo) / r.step;
  const double rounded = std::round(ratio);
  long kmax;
  if (std::fabs(ratio - rounded) <= 1e-12 * std::max(1.0, std::fabs(ratio)))
    kmax = static_cast<long>(rounded);
  else
    kmax = static_cast<long>(std::floor(ratio));
  std::vector<double> out;
  out.reserve(kmax + 1);
  for (long k = 0; k <= kmax; ++k) out.push_back(r.lo + static_cast<double>(k) * r.step);
  return out;
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, desc] : check_registry()) v.push_back(name);
    return v;
  }();
  return names;
}

CheckReport scan(const GridSpec& grid_in, const quad::QuadratureSpec& qspec, int threads) {
  qspec.validate();
  const auto it = check_registry().find(grid_in.check);
  if (it == check_registry().end())
    throw UnknownCheck("scan: unknown check '" + grid_in.check + "'");
  const CheckDesc& desc = it->second;

  GridSpec grid = grid_in;
  std::sort(grid.n_list.begin(), grid.n_list.end());
  grid.n_list.erase(std::unique(grid.n_list.begin(), grid.n_list.end()),
                    grid.n_list.end());
  if (grid.n_list.empty()) throw DomainError("scan: n_list must be non-empty");
  for (long n : grid.n_list) {
    if (n < 1) throw DomainError("scan: n_list entries must be positive");
    if (desc.odd_n && n % 2 == 0)
      throw DomainError("scan: check '" + grid.check + "' requires odd indices in n_list");
  }
  if (!(grid.near_violation_threshold > 0.0))
    throw DomainError("scan: near_violation_threshold must be positive");

  if (desc.uses_x) {
    if (!grid.x_range.active || grid.angle_range.active)
      throw DomainError("scan: check '" + grid.check + "' requires x_range (only)");
  } else {
    if (!grid.angle_range.active || grid.x_range.active)
      throw DomainError("scan: check '" + grid.check + "' requires angle_range (only)");
  }

  const std::vector<double> alphas = axis_values(grid.alpha_range);
  const std::vector<double> seconds =
      axis_values(desc.uses_x ? grid.x_range : grid.angle_range);
  if (alphas.empty() || seconds.empty()) throw DomainError("scan: grid must be non-empty");

  const size_t na = alphas.size(), ns = seconds.size(), nn = grid.n_list.size();
  const size_t total = nn * na * ns;

  CheckReport report;
  report.grid = grid;
  report.quadrature = qspec;
  report.cells.resize(total);
  report.cells_evaluated = static_cast<long>(total);

  const auto t0 = std::chrono::steady_clock::now();
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  size_t nworkers = threads > 0 ? static_cast<size_t>(threads) : hw;
  nworkers = std::min(nworkers, total);

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= total) return;
      const size_t in = i / (na * ns);
      const size_t ia = (i / ns) % na;
      const size_t is = i % ns;
      Cell& c = report.cells[i];
      c.check = grid.check;
      c.n = grid.n_list[in];
      c.alpha = alphas[ia];
      c.angle_or_x = seconds[is];
      try {
        desc.fn(c, qspec);
      } catch (const std::exception& e) {
        c.failed = true;
        c.reason = e.what();
        c.lhs = c.rhs = c.margin = c.error_estimate =
            std::numeric_limits<double>::quiet_NaN();
      }
    }
  };
  if (nworkers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return assemble_report(std::move(report.grid), qspec, std::move(report.cells),
                         report.wall_time_seconds);
}

CheckReport assemble_report(GridSpec grid_echo, const quad::QuadratureSpec& qspec,
                            std::vector<Cell> cells, double wall_time_seconds) {
  CheckReport report;
  report.grid = std::move(grid_echo);
  report.quadrature = qspec;
  report.cells = std::move(cells);
  report.cells_evaluated = static_cast<long>(report.cells.size());
  report.wall_time_seconds = wall_time_seconds;

  // Deterministic reduction over canonical cell order; ties keep the lowest index.
  double min_margin = std::numeric_limits<double>::quiet_NaN();
  size_t argmin_index = 0;
  bool have_min = false;
  for (size_t i = 0; i < report.cells.size(); ++i) {
    const Cell& c = report.cells[i];
    if (c.failed) {
      report.violations.push_back(i);
      report.near_violations.push_back(i);
      continue;
    }
    if (!have_min || c.margin < min_margin) {
      min_margin = c.margin;
      argmin_index = i;
      have_min = true;
    }
    if (c.margin < -report.grid.violation_threshold) report.violations.push_back(i);
    if (c.margin < report.grid.near_violation_threshold) report.near_violations.push_back(i);
  }
  report.min_margin = min_margin;
  report.argmin = report.cells.empty() ? Cell{} : report.cells[argmin_index];
  return report;
}

void emit(const CheckReport& report, Format format, std::ostream& os,
          const EmitOptions& options) {
  if (format == Format::csv) {
    os << "check,n,alpha,angle_or_x,lhs,rhs,margin,error_estimate\n";
    for (const Cell& c : report.cells) {
      os << c.check << ',' << c.n << ',' << fmt17(c.alpha) << ',' << fmt17(c.angle_or_x)
         << ',' << fmt17(c.lhs) << ',' << fmt17(c.rhs) << ',' << fmt17(c.margin) << ','
         << fmt17(c.error_estimate) << '\n';
    }
    return;
  }

  os << "{\"check\":\"" << json_escape(report.grid.check) << "\",";
  os << "\"grid\":{\"alpha_range\":";
  json_range(os, report.grid.alpha_range);
  os << ",\"angle_range\":";
  json_range(os, report.grid.angle_range);
  os << ",\"x_range\":";
  json_range(os, report.grid.x_range);
  os << ",\"n_list\":[";
  for (size_t i = 0; i < report.grid.n_list.size(); ++i)
    os << (i ? "," : "") << report.grid.n_list[i];
  os << "],\"near_violation_threshold\":" << json_num(report.grid.near_violation_threshold)
     << ",\"violation_threshold\":" << json_num(report.grid.violation_threshold) << "},";
  os << "\"quadrature\":{\"rule\":\""
     << (report.quadrature.rule == quad::Rule::double_exponential ? "double_exponential"
                                                                  : "adaptive_bisection")
     << "\",\"abs_tol\":" << json_num(report.quadrature.abs_tol)
     << ",\"rel_tol\":" << json_num(report.quadrature.rel_tol)
     << ",\"max_levels\":" << report.quadrature.max_levels << "},";
  os << "\"cells_evaluated\":" << report.cells_evaluated << ",";
  os << "\"min_margin\":" << json_num(report.min_margin) << ",";
  os << "\"argmin\":";
  json_cell(os, report.argmin);
  os << ",\"violations\":[";
  for (size_t i = 0; i < report.violations.size(); ++i) {
    if (i) os << ",";
    json_cell(os, report.cells[report.violations[i]]);
  }
  os << "],\"near_violations\":[";
  for (size_t i = 0; i < report.near_violations.size(); ++i) {
    if (i) os << ",";
    json_cell(os, report.cells[report.near_violations[i]]);
  }
  os << "]";
  if (options.include_timing)
    os << ",\"wall_time_seconds\":" << json_num(report.wall_time_seconds);
  os << "}\n";
}

void emit(const CheckReport& report, Format format, const std::string& path,
          const EmitOptions& options) {
  std::ostringstream buffer;
  emit(report, format, buffer, options);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("emit: cannot open '" + tmp + "' for writing");
    out << buffer.str();
    if (!out.flush()) throw IoError("emit: write to '" + tmp + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("emit: rename to '" + path + "' failed: " + ec.message());
}

}  // namespace brannan::scan
