#pragma once

#include <cmath>
#include <complex>

namespace selmer {

// Neumaier (improved Kahan) summation. Merging two accumulators is itself
// a fixed sequence of floating-point operations, so a reduction is
// reproducible as long as the order of merges is fixed.
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  explicit constexpr CompensatedSum(double v) : sum_(v) {}

  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  void merge(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

  CompensatedSum& operator+=(double v) noexcept {
    add(v);
    return *this;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> v) noexcept {
    re_.add(v.real());
    im_.add(v.imag());
  }
  void merge(const ComplexCompensatedSum& other) noexcept {
    re_.merge(other.re_);
    im_.merge(other.im_);
  }
  std::complex<double> value() const noexcept {
    return {re_.value(), im_.value()};
  }
  double real() const noexcept { return re_.value(); }
  double imag() const noexcept { return im_.value(); }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace selmer
