#pragma once

#include <cmath>

namespace mixwidth {

// Neumaier's variant of Kahan summation: also correct when the incoming
// term is larger in magnitude than the running sum.
template <typename T>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(T init) : sum_(init) {}

  CompensatedSum& operator+=(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  T value() const { return sum_ + comp_; }

 private:
  T sum_{0};
  T comp_{0};
};

}  // namespace mixwidth
