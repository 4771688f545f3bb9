#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "brannan/quadrature.hpp"

namespace brannan::scan {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;
  bool active = false;
};

// A scan box. Exactly one of angle_range / x_range must be active, as the
// check requires. For the lemma4 check the alpha axis carries t. n_list is
// canonicalized (sorted, deduplicated) so cell ordering is permutation
// invariant; for the brannan check its entries are the odd indices m.
struct GridSpec {
  std::string check;
  Range alpha_range;
  Range angle_range;
  Range x_range;
  std::vector<long> n_list;
  double near_violation_threshold = 1e-6;
  double violation_threshold = 1e-12;  // margin < -this counts as a violation
};

struct Cell {
  std::string check;
  long n = 0;
  double alpha = 0.0;
  double angle_or_x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double error_estimate = 0.0;
  bool failed = false;
  std::string reason;
};

struct CheckReport {
  GridSpec grid;
  quad::QuadratureSpec quadrature;
  long cells_evaluated = 0;
  double min_margin = 0.0;
  Cell argmin;
  std::vector<Cell> cells;               // canonical order: n, alpha, angle/x
  std::vector<std::size_t> violations;   // indices into cells
  std::vector<std::size_t> near_violations;
  double wall_time_seconds = 0.0;
};

// Grid semantics: closed range; the last point is included when hi - lo is an
// integer multiple of step within 1e-12, otherwise the largest lo + k step <= hi.
std::vector<double> axis_values(const Range& r);

const std::vector<std::string>& known_checks();

// Evaluates every cell exactly once. Cells are independent work items spread
// over `threads` workers (0 = hardware concurrency); aggregation runs over
// canonical cell order so reports are identical for any worker count.
// Per-cell evaluation errors are recorded on the cell, never thrown.
CheckReport scan(const GridSpec& grid, const quad::QuadratureSpec& qspec, int threads = 0);

// Builds a report from already-evaluated cells (single-point evaluations use
// this); min/argmin/violation lists are derived the same way scan does.
CheckReport assemble_report(GridSpec grid_echo, const quad::QuadratureSpec& qspec,
                            std::vector<Cell> cells, double wall_time_seconds = 0.0);

enum class Format { csv, json };

struct EmitOptions {
  // Wall time varies run to run; it is emitted only on request so that
  // reports from repeated or differently-threaded runs are byte-identical.
  bool include_timing = false;
};

// CSV columns: check,n,alpha,angle_or_x,lhs,rhs,margin,error_estimate
// (one row per cell). JSON mirrors the CheckReport summary fields. Numbers
// carry 17 significant digits and round-trip bit-exactly.
void emit(const CheckReport& report, Format format, std::ostream& os,
          const EmitOptions& options = {});

// File output is atomic: written to a temporary and renamed into place.
void emit(const CheckReport& report, Format format, const std::string& path,
          const EmitOptions& options = {});

}  // namespace brannan::scan
