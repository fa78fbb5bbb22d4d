#pragma once

#include <cmath>
#include <cstddef>
#include <string>

namespace mixdom {

/// Compensated (Kahan-Neumaier) accumulator for long sums of doubles.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Format a double with 17 significant digits (round-trip safe), '.' decimal
/// separator regardless of locale.
std::string fmt17(double x);

/// Cap for dense n x n covariance construction. Default 8192; the
/// MIXDOM_DENSE_CAP environment variable overrides it.
std::size_t dense_cap();

/// Cap for the O(n^2) trace diagnostics. Same default and override as
/// dense_cap().
std::size_t quadratic_cap();

}  // namespace mixdom
