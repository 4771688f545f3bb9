#pragma once

namespace brannan {

// Compensated (Kahan) accumulator. Forward summation of the series terms in
// increasing k is stable because the coefficient magnitudes decay, and the
// compensation keeps the result independent of how partial rounding errors
// would otherwise pile up for large m.
struct KahanSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

}  // namespace brannan
