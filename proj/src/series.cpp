#include "lmoment/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lmoment/errors.hpp"

namespace lmoment {
namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;

}  // namespace

Complex PowerSeries::evaluate(Complex t) const {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

PowerSeries exp_series(Complex c, int order) {
  std::vector<Complex> out(static_cast<std::size_t>(order) + 1);
  Complex term = 1.0;
  for (int k = 0; k <= order; ++k) {
    out[static_cast<std::size_t>(k)] = term;
    term *= c / static_cast<double>(k + 1);
  }
  double mag = 0.0;
  for (auto v : out) mag = std::max(mag, std::abs(v));
  return PowerSeries(std::move(out), 4 * (order + 1) * kUnit * mag);
}

PowerSeries multiply(const PowerSeries& p, const PowerSeries& q) {
  const int order = std::min(p.order(), q.order());
  std::vector<Complex> out(static_cast<std::size_t>(order) + 1);
  double err = 0.0;
  for (int k = 0; k <= order; ++k) {
    Complex acc = 0.0;
    double abs_p = 0.0;
    double abs_q = 0.0;
    double abs_pq = 0.0;
    for (int i = 0; i <= k; ++i) {
      const Complex pi = p[i];
      const Complex qj = q[k - i];
      acc += pi * qj;
      abs_p += std::abs(pi);
      abs_q += std::abs(qj);
      abs_pq += std::abs(pi) * std::abs(qj);
    }
    out[static_cast<std::size_t>(k)] = acc;
    const double e = abs_p * q.err + p.err * abs_q + (k + 1) * p.err * q.err +
                     4 * (k + 2) * kUnit * abs_pq;
    err = std::max(err, e);
  }
  return PowerSeries(std::move(out), err);
}

PowerSeries derivative(const PowerSeries& p) {
  const int order = std::max(0, p.order() - 1);
  std::vector<Complex> out(static_cast<std::size_t>(order) + 1, Complex{});
  double err = 0.0;
  for (int k = 0; k + 1 <= p.order(); ++k) {
    out[static_cast<std::size_t>(k)] = static_cast<double>(k + 1) * p[k + 1];
    err = std::max(err, (k + 1) * p.err + (k + 1) * kUnit * std::abs(p[k + 1]));
  }
  return PowerSeries(std::move(out), err);
}

PowerSeries divide(const PowerSeries& p, const PowerSeries& q) {
  const Complex q0 = q[0];
  const double q0_abs = std::abs(q0);
  if (!(q0_abs > 10 * q.err) || q0_abs == 0.0) {
    throw SingularityError("series division: leading coefficient indistinguishable from zero");
  }
  const int order = std::min(p.order(), q.order());
  std::vector<Complex> out(static_cast<std::size_t>(order) + 1);
  std::vector<double> delta(static_cast<std::size_t>(order) + 1);
  const double q0_low = q0_abs - q.err;
  double err = 0.0;
  for (int k = 0; k <= order; ++k) {
    Complex acc = p[k];
    double prop = p.err;
    double mag = std::abs(p[k]);
    for (int i = 1; i <= k; ++i) {
      const Complex prev = out[static_cast<std::size_t>(k - i)];
      acc -= q[i] * prev;
      prop += std::abs(q[i]) * delta[static_cast<std::size_t>(k - i)] + q.err * std::abs(prev);
      mag += std::abs(q[i]) * std::abs(prev);
    }
    const Complex v = acc / q0;
    out[static_cast<std::size_t>(k)] = v;
    const double d = (prop + q.err * std::abs(v)) / q0_low + 4 * (k + 3) * kUnit * mag / q0_abs;
    delta[static_cast<std::size_t>(k)] = d;
    err = std::max(err, d);
  }
  return PowerSeries(std::move(out), err);
}

PowerSeries log_derivative_series(const PowerSeries& l) {
  if (l.order() < 1) {
    throw DomainError("log_derivative_series: need order >= 1");
  }
  if (!(std::abs(l[0]) > 10 * l.err) || l[0] == Complex{}) {
    throw SingularityError("log_derivative_series: L(t=0) indistinguishable from zero");
  }
  PowerSeries truncated(std::vector<Complex>(l.coeffs.begin(), l.coeffs.end() - 1), l.err);
  return divide(derivative(l), truncated);
}

}  // namespace lmoment
