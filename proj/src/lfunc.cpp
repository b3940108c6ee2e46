#include "lmoment/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lmoment/errors.hpp"
#include "lmoment/parallel.hpp"
#include "lmoment/summation.hpp"

namespace lmoment {
namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;

double ipow(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

std::int64_t last_index_below(double x) {
  // Largest integer n with n < x.
  return static_cast<std::int64_t>(std::ceil(x)) - 1;
}

}  // namespace

HurwitzBank::HurwitzBank(std::int64_t m, int order, double target)
    : m_(m), order_(order), plan_(plan_euler_maclaurin(1.0 / static_cast<double>(m), 1.0, 1.0, target)) {
  if (m < 2) throw DomainError("HurwitzBank: modulus must be >= 2");
  if (order < 0) throw DomainError("HurwitzBank: negative order");
  const auto width = static_cast<std::size_t>(order) + 1;
  coeffs_.resize(static_cast<std::size_t>(m - 1) * width);
  abs_sums_.assign(width, 0.0);
  for (std::int64_t a = 1; a < m; ++a) {
    const double alpha = static_cast<double>(a) / static_cast<double>(m);
    const HurwitzExpansion h = hurwitz_taylor(alpha, 1.0, order, plan_);
    remainder_bound_ = std::max(remainder_bound_, h.remainder_bound);
    for (std::size_t k = 0; k < width; ++k) {
      coeffs_[static_cast<std::size_t>(a - 1) * width + k] = h.coeffs[k];
      abs_sums_[k] += std::abs(h.coeffs[k]);
    }
  }
}

PowerSeries l_taylor(const HurwitzBank& bank, const CharacterGroup& group, CharacterId id,
                     int order, double eps) {
  if (group.is_principal(id)) throw DomainError("l_taylor: principal character has a pole at s = 1");
  if (bank.modulus() != group.modulus()) throw DomainError("l_taylor: bank built for another modulus");
  if (order < 0 || order > bank.order()) throw BoundsError("l_taylor: order exceeds bank order");
  if (!(eps > 0)) throw DomainError("l_taylor: eps must be positive");
  const std::int64_t m = group.modulus();
  const auto len = static_cast<std::size_t>(order) + 1;

  std::vector<ComplexCompensatedSum> acc(len);
  for (std::int64_t a = 1; a < m; ++a) {
    const std::complex<double> chi = group.eval(id, a);
    for (std::size_t k = 0; k < len; ++k) acc[k].add(chi * bank.coeff(a, static_cast<int>(k)));
  }
  std::vector<Complex> z(len);
  double z_err = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    z[k] = acc[k].value();
    z_err = std::max(z_err, static_cast<double>(m - 1) * bank.remainder_bound() +
                                8 * kUnit * bank.abs_sum(static_cast<int>(k)));
  }

  // L(1+t) = m^{-1} e^{-t log m} Z(t)
  PowerSeries scale = exp_series(-std::log(static_cast<double>(m)), order);
  for (auto& c : scale.coeffs) c /= static_cast<double>(m);
  scale.err /= static_cast<double>(m);
  PowerSeries l = multiply(scale, PowerSeries(std::move(z), z_err));
  if (l.err > eps) throw ResourceError("l_taylor: requested accuracy unreachable", l.err);
  return l;
}

PowerSeries l_taylor(const CharacterGroup& group, CharacterId id, int order, double eps) {
  if (group.is_principal(id)) throw DomainError("l_taylor: principal character has a pole at s = 1");
  if (!(eps > 0)) throw DomainError("l_taylor: eps must be positive");
  const HurwitzBank bank(group.modulus(), order, eps / (4.0 * static_cast<double>(group.modulus())));
  return l_taylor(bank, group, id, order, eps);
}

namespace {

// Tightens the Hurwitz target until every requested character meets eps.
std::vector<CurlyL> curly_l_all_impl(const CharacterGroup& group, int r, double eps, int width,
                                     const CharacterId* only) {
  if (r < 0) throw DomainError("curly_l: negative derivative order");
  if (!(eps > 0)) throw DomainError("curly_l: eps must be positive");
  if (only && group.is_principal(*only)) throw DomainError("curly_l: principal character has a pole at s = 1");
  const int order = r + kGuardOrder;
  const std::int64_t m = group.modulus();
  const std::size_t count = only ? 1 : static_cast<std::size_t>(m - 2);
  std::vector<CurlyL> out(count);
  std::vector<double> worst(count, 0.0);
  double target = eps / (4.0 * static_cast<double>(m));
  for (int attempt = 0;; ++attempt) {
    const HurwitzBank bank(m, order, target);
    parallel_for(count, width, [&](std::size_t i) {
      const CharacterId id = only ? *only : CharacterId{static_cast<std::int64_t>(i) + 1};
      const PowerSeries l = l_taylor(bank, group, id, order, std::numeric_limits<double>::infinity());
      double fact = 1.0;
      for (int f = 2; f <= r; ++f) fact *= f;
      const PowerSeries q = log_derivative_series(l);
      out[i] = CurlyL{id, r, fact * q[r], fact * q.err};
      worst[i] = out[i].err;
    });
    const double err = *std::max_element(worst.begin(), worst.end());
    if (err <= eps) return out;
    if (attempt == 3 || bank.remainder_bound() * static_cast<double>(m) < 1e-3 * err) {
      throw ResourceError("curly_l: requested accuracy unreachable", err);
    }
    target *= 1e-3;
  }
}

}  // namespace

CurlyL curly_l(const CharacterGroup& group, CharacterId id, int r, double eps) {
  return curly_l_all_impl(group, r, eps, 1, &id).front();
}

std::vector<CurlyL> curly_l_all(const CharacterGroup& group, int r, double eps, int width) {
  return curly_l_all_impl(group, r, eps, width, nullptr);
}

PhiEvaluation phi_explicit(const CharacterGroup& group, CharacterId id, int r, double x,
                           const LambdaTable& table) {
  if (!(x > 1)) throw DomainError("phi_explicit: x must exceed 1");
  if (r < 0) throw DomainError("phi_explicit: negative r");
  const std::int64_t last = last_index_below(x);
  if (last > table.limit()) throw BoundsError("phi_explicit: table does not cover n < x");
  ComplexCompensatedSum sum;
  std::int64_t terms = 0;
  for (std::uint32_t n : table.prime_powers()) {
    if (n > last) break;
    const double nd = static_cast<double>(n);
    const double w = (x / nd - 1.0) * table.mangoldt(n) * ipow(std::log(nd), r);
    sum.add(group.eval(id, n) * w);
    ++terms;
  }
  return PhiEvaluation{id, r, x, sum.value() / (x - 1.0), terms};
}

std::vector<PhiEvaluation> phi_explicit_all(const CharacterGroup& group, int r, double x,
                                            const LambdaTable& table, int width) {
  if (!(x > 1)) throw DomainError("phi_explicit_all: x must exceed 1");
  if (r < 0) throw DomainError("phi_explicit_all: negative r");
  const std::int64_t last = last_index_below(x);
  if (last > table.limit()) throw BoundsError("phi_explicit_all: table does not cover n < x");
  const std::int64_t m = group.modulus();
  std::vector<CompensatedSum> buckets(static_cast<std::size_t>(m));
  std::int64_t terms = 0;
  for (std::uint32_t n : table.prime_powers()) {
    if (n > last) break;
    const double nd = static_cast<double>(n);
    buckets[static_cast<std::size_t>(n % m)].add((x / nd - 1.0) * table.mangoldt(n) *
                                                 ipow(std::log(nd), r));
    ++terms;
  }
  // Weights indexed by discrete log, so Φ_j = Σ_i root(j·i mod (m-1)) W(g^i).
  const std::int64_t q = m - 1;
  std::vector<double> by_index(static_cast<std::size_t>(q));
  for (std::int64_t c = 1; c < m; ++c) {
    by_index[static_cast<std::size_t>(group.dlog(c))] = buckets[static_cast<std::size_t>(c)].value();
  }
  std::vector<PhiEvaluation> out(static_cast<std::size_t>(q));
  parallel_for(out.size(), width, [&](std::size_t j) {
    ComplexCompensatedSum sum;
    std::int64_t t = 0;
    for (std::int64_t i = 0; i < q; ++i) {
      sum.add(group.root(t) * by_index[static_cast<std::size_t>(i)]);
      t += static_cast<std::int64_t>(j);
      if (t >= q) t -= q;
    }
    out[j] = PhiEvaluation{CharacterId{static_cast<std::int64_t>(j)}, r, x, sum.value() / (x - 1.0), terms};
  });
  return out;
}

}  // namespace lmoment
