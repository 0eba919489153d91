#pragma once

#include <cmath>
#include <complex>

namespace ohno {

// Neumaier's variant of Kahan summation; also tracks sum of |terms| so callers
// can attach a rounding bound to the result.
class compensated_sum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
    abs_ += std::fabs(x);
  }
  double value() const { return sum_ + comp_; }
  double abs_total() const { return abs_; }

 private:
  double sum_ = 0.0, comp_ = 0.0, abs_ = 0.0;
};

class compensated_csum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  compensated_csum& operator+=(std::complex<double> z) {
    add(z);
    return *this;
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }
  double abs_total() const { return re_.abs_total() + im_.abs_total(); }

 private:
  compensated_sum re_, im_;
};

}  // namespace ohno
