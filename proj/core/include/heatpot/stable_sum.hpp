#pragma once

#include <cmath>

namespace heatpot {

// Neumaier-compensated accumulator. All long reductions in the library go
// through this in a fixed iteration order so that reports are byte-stable
// across runs.
class StableSum {
 public:
  StableSum() = default;
  explicit StableSum(double init) : sum_(init) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  StableSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace heatpot
