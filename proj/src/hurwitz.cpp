#include "lmoment/hurwitz.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "lmoment/errors.hpp"
#include "lmoment/summation.hpp"

namespace lmoment {
namespace {

constexpr int kMaxBernoulliTerms = 80;

// B_{2k} / (2k)!
double scaled_bernoulli(int k) {
  return boost::math::bernoulli_b2n<double>(k) / boost::math::factorial<double>(2 * k);
}

}  // namespace

double euler_maclaurin_remainder_bound(const EulerMaclaurinPlan& plan, double alpha_min, double s0,
                                       double radius) {
  const int two_b = 2 * plan.bernoulli_terms;
  const double sigma_min = s0 - radius;
  const double s_max = std::abs(s0) + radius;
  const double denom = sigma_min + two_b - 1;
  const double base = plan.cutoff + alpha_min;
  if (denom <= 0 || base < 1) return std::numeric_limits<double>::infinity();
  double log_bound = std::log(4.0) - two_b * std::log(2 * std::numbers::pi) +
                     (1 - sigma_min - two_b) * std::log(base) - std::log(denom);
  for (int i = 0; i < two_b; ++i) log_bound += std::log(s_max + i);
  return std::exp(log_bound);
}

EulerMaclaurinPlan plan_euler_maclaurin(double alpha_min, double s0, double radius, double target,
                                        int max_cutoff) {
  double best = std::numeric_limits<double>::infinity();
  for (int cutoff = 8; cutoff <= max_cutoff; cutoff *= 2) {
    for (int terms = 1; terms <= kMaxBernoulliTerms; ++terms) {
      EulerMaclaurinPlan plan{cutoff, terms};
      const double bound = euler_maclaurin_remainder_bound(plan, alpha_min, s0, radius);
      best = std::min(best, bound);
      if (bound <= target) return plan;
    }
  }
  throw ResourceError("Euler-Maclaurin target unreachable under cutoff cap", best);
}

HurwitzExpansion hurwitz_taylor(double alpha, double s0, int order, const EulerMaclaurinPlan& plan) {
  const auto len = static_cast<std::size_t>(order) + 1;
  std::vector<CompensatedSum> acc(len);

  for (int n = 0; n < plan.cutoff; ++n) {
    const double v = n + alpha;
    const double log_v = std::log(v);
    double c = s0 == 1.0 ? 1.0 / v : std::pow(v, -s0);
    for (int k = 0; k <= order; ++k) {
      acc[static_cast<std::size_t>(k)].add(c);
      c *= -log_v / (k + 1);
    }
  }

  const double tail_base = plan.cutoff + alpha;
  const double log_tail = std::log(tail_base);
  std::vector<double> exp_tail(len);  // e^{-t log(N+α)}
  {
    double c = 1.0;
    for (int k = 0; k <= order; ++k) {
      exp_tail[static_cast<std::size_t>(k)] = c;
      c *= -log_tail / (k + 1);
    }
  }

  // (N+α)^{1-s} / (s-1)
  if (s0 == 1.0) {
    double c = -log_tail;
    for (int k = 0; k <= order; ++k) {
      acc[static_cast<std::size_t>(k)].add(c);
      c *= -log_tail / (k + 2);
    }
  } else {
    const double scale = std::pow(tail_base, 1 - s0);
    const double inv = 1.0 / (s0 - 1);
    for (int k = 0; k <= order; ++k) {
      double v = 0.0;
      double g = inv;  // coefficient i of 1/(s0-1+t)
      for (int i = 0; i <= k; ++i) {
        v += g * exp_tail[static_cast<std::size_t>(k - i)];
        g *= -inv;
      }
      acc[static_cast<std::size_t>(k)].add(scale * v);
    }
  }

  const double tail_pow = s0 == 1.0 ? 1.0 / tail_base : std::pow(tail_base, -s0);
  for (int k = 0; k <= order; ++k) {
    acc[static_cast<std::size_t>(k)].add(0.5 * tail_pow * exp_tail[static_cast<std::size_t>(k)]);
  }

  // Σ_k B_{2k}/(2k)! (s)_{2k-1} (N+α)^{-s-2k+1}, with (s)_{2k-1} kept as a polynomial in t.
  std::vector<double> rising(len, 0.0);
  rising[0] = s0;
  if (order >= 1) rising[1] = 1.0;
  std::vector<double> poly_acc(len, 0.0);
  double base_pow = tail_pow / tail_base;  // (N+α)^{-s0-2k+1}
  const double inv_sq = 1.0 / (tail_base * tail_base);
  for (int k = 1; k <= plan.bernoulli_terms; ++k) {
    const double scale = scaled_bernoulli(k) * base_pow;
    for (std::size_t i = 0; i < len; ++i) poly_acc[i] += scale * rising[i];
    for (double shift : {s0 + 2 * k - 1, s0 + 2 * k}) {
      for (std::size_t i = len; i-- > 0;) {
        rising[i] = shift * rising[i] + (i > 0 ? rising[i - 1] : 0.0);
      }
    }
    base_pow *= inv_sq;
  }
  for (int k = 0; k <= order; ++k) {
    double v = 0.0;
    for (int i = 0; i <= k; ++i) {
      v += poly_acc[static_cast<std::size_t>(i)] * exp_tail[static_cast<std::size_t>(k - i)];
    }
    acc[static_cast<std::size_t>(k)].add(v);
  }

  HurwitzExpansion out;
  out.coeffs.resize(len);
  for (std::size_t k = 0; k < len; ++k) out.coeffs[k] = acc[k].value();
  out.remainder_bound = euler_maclaurin_remainder_bound(plan, alpha, s0, 1.0);
  return out;
}

HurwitzExpansion riemann_zeta_taylor(double s0, int order, double target) {
  if (s0 == 1.0) throw DomainError("riemann_zeta_taylor: pole at s = 1");
  const EulerMaclaurinPlan plan = plan_euler_maclaurin(1.0, s0, 1.0, target);
  return hurwitz_taylor(1.0, s0, order, plan);
}

}  // namespace lmoment
