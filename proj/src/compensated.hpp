#pragma once

#include <cmath>

namespace psfree::detail {

/// Neumaier-compensated running sum.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  T value() const { return sum_ + carry_; }

 private:
  T sum_{};
  T carry_{};
};

}  // namespace psfree::detail
