#ifndef CORESET_SUMMATION_HPP
#define CORESET_SUMMATION_HPP

#include <cmath>

namespace coreset {

// Neumaier compensated accumulator. Cost sums over many points are sensitive
// to cancellation when verifying tight multiplicative guarantees, so every
// aggregate cost in the library goes through this instead of naive +=.
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

}  // namespace coreset

#endif  // CORESET_SUMMATION_HPP
