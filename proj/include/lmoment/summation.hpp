#ifndef LMOMENT_SUMMATION_HPP
#define LMOMENT_SUMMATION_HPP

#include <cmath>
#include <complex>
#include <span>

namespace lmoment {

/// Neumaier-compensated running sum. Results depend only on the order of add() calls.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Componentwise compensated sum of complex values; conj of every input gives conj of the output.
class ComplexCompensatedSum {
 public:
  void add(std::complex<double> v) noexcept {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

inline double compensated_total(std::span<const double> values) noexcept {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

inline std::complex<double> compensated_total(std::span<const std::complex<double>> values) noexcept {
  ComplexCompensatedSum s;
  for (auto v : values) s.add(v);
  return s.value();
}

}  // namespace lmoment

#endif  // LMOMENT_SUMMATION_HPP
