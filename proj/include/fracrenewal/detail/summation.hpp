#pragma once

#include <cmath>

namespace fracrenewal::detail {

/// Neumaier's variant of Kahan summation: the running compensation also
/// captures the low-order bits when an addend exceeds the partial sum, which
/// is the common case in alternating series with a large central term.
struct CompensatedSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum + compensation; }
};

}  // namespace fracrenewal::detail
