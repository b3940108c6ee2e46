#ifndef LMOMENT_SERIES_HPP
#define LMOMENT_SERIES_HPP

#include <complex>
#include <vector>

namespace lmoment {

using Complex = std::complex<double>;

/// Truncated Taylor expansion Σ_{k<=R} c_k t^k with a uniform bound `err` on the
/// absolute error of every coefficient.
struct PowerSeries {
  std::vector<Complex> coeffs;
  double err = 0.0;

  PowerSeries() = default;
  explicit PowerSeries(std::vector<Complex> c, double e = 0.0) : coeffs(std::move(c)), err(e) {}

  int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  Complex operator[](int k) const { return coeffs.at(static_cast<std::size_t>(k)); }

  Complex evaluate(Complex t) const;
};

/// e^{c t} to the given order.
PowerSeries exp_series(Complex c, int order);

/// Product truncated to min(order(p), order(q)).
PowerSeries multiply(const PowerSeries& p, const PowerSeries& q);

/// d/dt, order drops by one (order 0 gives the zero series of order 0).
PowerSeries derivative(const PowerSeries& p);

/// p / q truncated to min(order(p), order(q)); throws SingularityError if |q_0| <= 10 err(q).
PowerSeries divide(const PowerSeries& p, const PowerSeries& q);

/// (dL/dt)/L truncated to order R-1, so that k! times coefficient k is the k-th derivative
/// of L'/L at t = 0. Throws SingularityError if |L_0| <= 10 err(L).
PowerSeries log_derivative_series(const PowerSeries& l);

}  // namespace lmoment

#endif  // LMOMENT_SERIES_HPP
