#include <doctest.h>

#include <cmath>
#include <random>

#include "lmoment/arith.hpp"
#include "lmoment/errors.hpp"
#include "lmoment/moments.hpp"
#include "lmoment/series.hpp"

using namespace lmoment;

TEST_CASE("lambda_kjx examples") {
  const auto one = unit_weight();
  CHECK(lambda_kjx(0, 1, 6.0, 5, one) == 1.0);
  CHECK(lambda_kjx(0, 3, 6.0, 5, one) == 0.0);
  for (std::int64_t j = 1; j <= 4; ++j) {
    int count = 0;
    for (int a = 1; a < 6; ++a) {
      for (int b = 1; b < 6; ++b) count += (a * b) % 5 == j;
    }
    CHECK(lambda_kjx(2, j, 6.0, 5, one) == count);
  }

  const auto t = LambdaTable::build(100);
  const auto w = mangoldt_weight(t, 2);
  for (std::int64_t j = 1; j <= 6; ++j) {
    double expect = 0.0;
    for (std::int64_t n = 1; n < 50; ++n) {
      if (n % 7 == j) expect += (50.0 / n - 1) * t.mangoldt(n) * std::pow(std::log(n), 2) / 49.0;
    }
    CHECK(lambda_kjx(1, j, 50.0, 7, w) == doctest::Approx(expect).epsilon(1e-14));
  }
  CHECK_THROWS_AS(lambda_kjx(3, 1, 1000.0, 7, one, 1000), ResourceError);
  CHECK_THROWS_AS(lambda_kjx(1, 7, 10.0, 7, one), BoundsError);
}

TEST_CASE("orthogonality identity") {
  const auto t = LambdaTable::build(100);
  const auto one = unit_weight();
  const auto oc = ortho_check(5, 1, 0, 5.0, one);
  CHECK(std::abs(oc.lhs - oc.rhs) <= 1e-15);
  CHECK(oc.rhs == Complex(1));  // n = 1 is the only n < 5 with n ≡ 1

  std::mt19937_64 rng(5);
  std::vector<double> table(64);
  for (auto& v : table) v = std::uniform_real_distribution<double>(0, 1)(rng);
  const WeightFn random_g = [&](double, std::int64_t n) { return table[static_cast<std::size_t>(n)]; };
  const auto r = ortho_check(7, 2, 1, 20.0, random_g);
  CHECK(r.discrepancy <= 1e-10 * (1 + std::abs(r.lhs)));

  const auto w = ortho_check(11, 2, 2, 11.0, mangoldt_weight(t, 0));
  CHECK(w.discrepancy <= 1e-10 * (1 + std::abs(w.lhs)));

  for (std::int64_t m : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    for (int a = 0; a <= 2; ++a) {
      for (int b = 0; b <= 2; ++b) {
        for (int rr = 0; rr <= 1; ++rr) {
          const auto c = ortho_check(m, a, b, static_cast<double>(m), rr == 0 ? one : mangoldt_weight(t, 1));
          REQUIRE(c.discrepancy <= 1e-10 * (1 + std::abs(c.lhs)));
        }
      }
    }
  }
}

TEST_CASE("non-principal normalization misses the principal term") {
  const auto c = ortho_check(7, 1, 1, 7.0, unit_weight());
  // g_{χ0} = 6 and every other |g_χ|² vanishes, so only the full-group average balances.
  CHECK(c.discrepancy <= 1e-12);
  CHECK(c.discrepancy_nonprincipal >= 1.0);
}

TEST_CASE("pab") {
  const Complex z(1.5, -0.5);
  CHECK(pab(z, 0, 0) == Complex(1));
  CHECK(pab(z, 1, 1) == z * std::conj(z));
  CHECK(std::abs(pab(z, 3, 2) - std::pow(z, 3) * std::pow(std::conj(z), 2)) <= 1e-12);
}

TEST_CASE("perturbation inequality") {
  std::vector<PerturbationSample> edge = {
      {Complex(0), Complex(2, 1), 1, 1},
      {Complex(3, -4), Complex(0), 2, 3},
      {Complex(10, 0), Complex(-1e-9, 0), 6, 0},
  };
  CHECK(pab_perturbation_check(edge).violations == 0);
  const auto random = pab_perturbation_check(random_perturbation_samples(10'000, 42));
  CHECK(random.samples == 10'000);
  CHECK(random.violations == 0);
  CHECK(random.worst_ratio <= 1.0 + 1e-12);

  const auto a = random_perturbation_samples(100, 9);
  const auto b = random_perturbation_samples(100, 9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].z == b[i].z);
    CHECK(a[i].a + a[i].b <= 6);
  }
}

TEST_CASE("moment reports") {
  MomentOptions opts;
  opts.mu_truncation = 100'000;
  const auto trivial = empirical_moment(101, 0, 0, 2, MomentMethod::taylor, opts);
  CHECK(trivial.empirical == Complex(1));
  CHECK(trivial.abs_error == 0.0);

  const auto r20 = empirical_moment(101, 2, 0, 1, MomentMethod::taylor, opts);
  CHECK(r20.prediction == 0.0);
  CHECK(r20.limit == 0.0);

  const auto r11 = empirical_moment(211, 1, 1, 1, MomentMethod::taylor, opts);
  CHECK(r11.empirical.imag() == 0.0);
  CHECK(r11.empirical.real() >= 0.0);
  CHECK(r11.limit == mu_diagonal_reference(1).value);
  CHECK(r11.abs_error == std::abs(r11.empirical - r11.prediction));
  CHECK(r11.normalized_error == doctest::Approx(r11.abs_error * 211 / std::pow(std::log(211.0), 6)));

  const auto x = empirical_moment(101, 2, 1, 1, MomentMethod::taylor, opts);
  const auto y = empirical_moment(101, 1, 2, 1, MomentMethod::taylor, opts);
  CHECK(x.empirical == std::conj(y.empirical));
  CHECK(x.prediction == y.prediction);

  CHECK_THROWS_AS(empirical_moment(9, 1, 1, 0, MomentMethod::taylor, opts), DomainError);
  CHECK_THROWS_AS(empirical_moment(3, 1, 1, 0, MomentMethod::taylor, opts), DomainError);
}

TEST_CASE("methods agree at small modulus") {
  MomentOptions opts;
  opts.mu_truncation = 100'000;
  for (int r = 0; r <= 1; ++r) {
    const auto t = empirical_moment(101, 1, 1, r, MomentMethod::taylor, opts);
    const auto p = empirical_moment(101, 1, 1, r, MomentMethod::phi, opts);
    CHECK(p.x_used == 101.0 * 101.0);
    CHECK(std::abs(t.empirical - p.empirical) <= 1e-2 * std::abs(t.empirical));
  }
  opts.phi_max_modulus = 100;
  CHECK_THROWS_AS(empirical_moment(101, 1, 1, 0, MomentMethod::phi, opts), BoundsError);
}

TEST_CASE("slope fit and convergence study") {
  CHECK(least_squares_slope({0, 1, 2, 3}, {1, -1, -3, -5}) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(least_squares_slope({1}, {1}), DomainError);

  const auto zero = convergence_study({101, 211}, 0, 0, 0, MomentMethod::taylor);
  CHECK(zero.reports[0].abs_error == 0.0);
  CHECK(std::isnan(zero.slope));

  const auto s = convergence_study({101, 211, 401}, 1, 1, 0, MomentMethod::taylor);
  REQUIRE(s.reports.size() == 3);
  std::vector<double> lx, ly;
  for (const auto& rep : s.reports) {
    lx.push_back(std::log(static_cast<double>(rep.m)));
    ly.push_back(std::log(rep.abs_error));
  }
  CHECK(s.slope == least_squares_slope(lx, ly));
  CHECK(s.reports[2].abs_error < s.reports[0].abs_error);
  CHECK_THROWS_AS(convergence_study({211, 101}, 1, 1, 0, MomentMethod::taylor), DomainError);
  CHECK_THROWS_AS(convergence_study({101, 221}, 1, 1, 0, MomentMethod::taylor), DomainError);
}

TEST_CASE("moment json") {
  MomentReport rep;
  rep.m = 101;
  rep.a = 1;
  rep.b = 2;
  rep.r = 0;
  rep.empirical = Complex(0.1, -0.2);
  const std::string s = to_json(rep);
  CHECK(s.find("\"method\": \"taylor\"") != std::string::npos);
  CHECK(s.find("\"empirical_im\": -0.20000000000000001") != std::string::npos);
}
