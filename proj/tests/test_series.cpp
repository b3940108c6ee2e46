#include <doctest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "lmoment/errors.hpp"
#include "lmoment/hurwitz.hpp"
#include "lmoment/series.hpp"

using namespace lmoment;

namespace {

PowerSeries random_series(std::mt19937_64& rng, int order, double lead) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
  for (auto& v : c) v = {u(rng), u(rng)};
  c[0] = std::polar(lead, 3.0 * u(rng));
  return PowerSeries(std::move(c));
}

}  // namespace

TEST_CASE("log derivative of simple series") {
  CHECK_THROWS_AS(log_derivative_series(PowerSeries({Complex(2.5, -1)})), DomainError);

  const auto c = log_derivative_series(PowerSeries({Complex(3, 0), 0, 0, 0}));
  CHECK(c.order() == 2);
  for (auto v : c.coeffs) CHECK(v == Complex(0, 0));

  auto e = exp_series(1.0, 8);
  for (auto& v : e.coeffs) v *= 1.7;
  const auto ones = log_derivative_series(e);
  CHECK(std::abs(ones[0] - 1.0) <= 1e-14);
  for (int k = 1; k <= 7; ++k) CHECK(std::abs(ones[k]) <= 1e-14);
}

TEST_CASE("log derivative matches finite differences") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_series(rng, 6, 1.5 + trial % 3);
    const auto q = log_derivative_series(p);
    const auto logp = [&](double t) { return std::log(p.evaluate(t)); };
    const double h = 1e-4;
    const Complex d1 = (logp(h) - logp(-h)) / (2 * h);
    const Complex d2 = (logp(h) - 2.0 * logp(0) + logp(-h)) / (h * h);
    CHECK(std::abs(q[0] - d1) <= 1e-6);
    CHECK(std::abs(q[1] - d2) <= 1e-5);
  }
}

TEST_CASE("log derivative of a product is the sum") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_series(rng, 5, 2.0);
    const auto q = random_series(rng, 5, 1.2);
    const auto lhs = log_derivative_series(multiply(p, q));
    const auto a = log_derivative_series(p);
    const auto b = log_derivative_series(q);
    for (int k = 0; k <= 4; ++k) CHECK(std::abs(lhs[k] - (a[k] + b[k])) <= 1e-10);
  }
}

TEST_CASE("division round trip and error tracking") {
  std::mt19937_64 rng(3);
  const auto p = random_series(rng, 6, 1.0);
  const auto q = random_series(rng, 6, 2.0);
  const auto back = multiply(divide(p, q), q);
  for (int k = 0; k <= 6; ++k) CHECK(std::abs(back[k] - p[k]) <= 1e-12);
  CHECK(divide(p, q).err > 0.0);

  CHECK_THROWS_AS(divide(p, PowerSeries({0.0, 1.0})), SingularityError);
  CHECK_THROWS_AS(log_derivative_series(PowerSeries({1e-12, 1.0, 0.0}, 1e-12)), SingularityError);

  PowerSeries noisy({1.0, 2.0, 3.0}, 1e-3);
  CHECK(multiply(noisy, noisy).err >= 2e-3);
}

TEST_CASE("derivative and evaluate") {
  const PowerSeries p({1.0, 2.0, 3.0, 4.0});
  const auto d = derivative(p);
  CHECK(d.order() == 2);
  CHECK(d[0] == Complex(2));
  CHECK(d[1] == Complex(6));
  CHECK(d[2] == Complex(12));
  CHECK(p.evaluate(2.0) == Complex(1 + 4 + 12 + 32));
}

TEST_CASE("hurwitz constant term is minus digamma") {
  for (double alpha : {0.01, 0.2, 0.5, 0.77, 1.0}) {
    const auto plan = plan_euler_maclaurin(alpha, 1.0, 1.0, 1e-15);
    const auto h = hurwitz_taylor(alpha, 1.0, 3, plan);
    const double expect = -boost::math::digamma(alpha);
    CHECK(std::abs(h.coeffs[0] - expect) <= 1e-14 * (1 + std::abs(expect)) + h.remainder_bound);
  }
}

TEST_CASE("riemann zeta expansions") {
  const auto at1 = hurwitz_taylor(1.0, 1.0, 2, plan_euler_maclaurin(1.0, 1.0, 1.0, 1e-15));
  CHECK(at1.coeffs[0] == doctest::Approx(0.57721566490153286).epsilon(1e-14));
  CHECK(at1.coeffs[1] == doctest::Approx(0.072815845483676725).epsilon(1e-13));
  CHECK(at1.coeffs[2] == doctest::Approx(-0.0096903631928723185 / 2).epsilon(1e-12));

  const auto z2 = riemann_zeta_taylor(2.0, 2, 1e-15);
  CHECK(z2.coeffs[0] == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-15));
  CHECK(z2.coeffs[1] == doctest::Approx(-0.93754825431584375).epsilon(1e-14));
  CHECK(z2.coeffs[2] == doctest::Approx(1.98928023429890102 / 2).epsilon(1e-14));
  for (double s : {1.5, 3.0, 4.5}) {
    CHECK(riemann_zeta_taylor(s, 0, 1e-15).coeffs[0] == doctest::Approx(boost::math::zeta(s)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(riemann_zeta_taylor(1.0, 2, 1e-10), DomainError);
}

TEST_CASE("euler maclaurin planning") {
  const auto plan = plan_euler_maclaurin(1e-3, 1.0, 1.0, 1e-12);
  CHECK(euler_maclaurin_remainder_bound(plan, 1e-3, 1.0, 1.0) <= 1e-12);
  const EulerMaclaurinPlan coarse{8, 2};
  const EulerMaclaurinPlan fine{64, 2};
  CHECK(euler_maclaurin_remainder_bound(fine, 0.5, 1.0, 1.0) <
        euler_maclaurin_remainder_bound(coarse, 0.5, 1.0, 1.0));
  CHECK_THROWS_AS(plan_euler_maclaurin(1.0, 1.0, 1.0, 1e-300, 16), ResourceError);

  // Plans of different size must agree within their bounds.
  const auto a = hurwitz_taylor(0.3, 1.0, 4, EulerMaclaurinPlan{16, 6});
  const auto b = hurwitz_taylor(0.3, 1.0, 4, EulerMaclaurinPlan{256, 12});
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(a.coeffs[k] - b.coeffs[k]) <= a.remainder_bound + 1e-14);
}
