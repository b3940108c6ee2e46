#include "lmoment/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <utility>

#include "lmoment/errors.hpp"
#include "lmoment/format.hpp"
#include "lmoment/hurwitz.hpp"
#include "lmoment/series.hpp"
#include "lmoment/summation.hpp"

namespace lmoment {
namespace {

double ipow(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// e^{-x} Σ_{i<=e} e!/i! x^i, the upper incomplete gamma Γ(e+1, x) for integer e.
double upper_gamma_int(int e, double x) {
  double sum = 0.0;
  double coeff = 1.0;  // e!/i! for i = e, e-1, ...
  for (int i = e; i >= 0; --i) {
    sum += coeff * ipow(x, i);
    coeff *= i;
  }
  return std::exp(-x) * sum;
}

std::vector<std::pair<std::int64_t, int>> factorize(const LambdaTable& table, std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  while (n > 1) {
    const std::int64_t p = table.smallest_prime_factor(n);
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

class RkEvaluator {
 public:
  RkEvaluator(const LambdaTable& table, int r) : table_(table), r_(r) {}

  double value(int k, std::int64_t n) {
    if (k == 0) return n == 1 ? 1.0 : 0.0;
    if (n == 1) return 0.0;
    const auto key = std::make_pair(k, n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<std::int64_t> divisors;
    for (auto [p, e] : factorize(table_, n)) {
      std::int64_t d = 1;
      for (int i = 1; i <= e; ++i) {
        d *= p;
        divisors.push_back(d);
      }
    }
    std::sort(divisors.begin(), divisors.end());
    double acc = 0.0;
    for (std::int64_t d : divisors) {
      const double f = table_.mangoldt(d) * ipow(std::log(static_cast<double>(d)), r_);
      const double rest = value(k - 1, n / d);
      if (rest != 0.0) acc += f * rest;
    }
    memo_.emplace(key, acc);
    return acc;
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<int, std::int64_t>& k) const noexcept {
      return std::hash<std::int64_t>{}(k.second * 64 + k.first);
    }
  };
  const LambdaTable& table_;
  int r_;
  std::unordered_map<std::pair<int, std::int64_t>, double, KeyHash> memo_;
};

}  // namespace

LambdaTable LambdaTable::build(std::int64_t limit, std::int64_t cap) {
  if (limit < 1) throw BoundsError("LambdaTable: limit must be >= 1");
  if (limit > cap) throw BoundsError("LambdaTable: limit exceeds table cap");
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw BoundsError("LambdaTable: limit exceeds 32-bit factor storage");
  }
  LambdaTable t;
  t.limit_ = limit;
  const auto size = static_cast<std::size_t>(limit) + 1;
  t.spf_.assign(size, 0);
  t.mangoldt_.assign(size, 0.0);
  std::vector<std::uint32_t> primes;
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (t.spf_[static_cast<std::size_t>(i)] == 0) {
      t.spf_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t spf_i = t.spf_[static_cast<std::size_t>(i)];
    for (std::uint32_t p : primes) {
      if (p > spf_i || i * p > limit) break;
      t.spf_[static_cast<std::size_t>(i * p)] = p;
    }
  }
  // n = p·q is a prime power iff q = 1 or q is a power of the same p.
  for (std::int64_t n = 2; n <= limit; ++n) {
    const std::uint32_t p = t.spf_[static_cast<std::size_t>(n)];
    const std::int64_t q = n / p;
    if (q == 1 || (t.spf_[static_cast<std::size_t>(q)] == p && t.mangoldt_[static_cast<std::size_t>(q)] > 0)) {
      t.mangoldt_[static_cast<std::size_t>(n)] = std::log(static_cast<double>(p));
      t.prime_powers_.push_back(static_cast<std::uint32_t>(n));
    }
  }
  return t;
}

double LambdaTable::mangoldt(std::int64_t n) const {
  if (n < 1 || n > limit_) throw BoundsError("LambdaTable: index out of range");
  return mangoldt_[static_cast<std::size_t>(n)];
}

std::int64_t LambdaTable::smallest_prime_factor(std::int64_t n) const {
  if (n < 2 || n > limit_) throw BoundsError("LambdaTable: factor query out of range");
  return spf_[static_cast<std::size_t>(n)];
}

double LambdaTable::chebyshev_psi(std::int64_t x) const {
  if (x > limit_) throw BoundsError("LambdaTable: psi argument beyond table");
  CompensatedSum s;
  for (std::uint32_t n : prime_powers_) {
    if (n > x) break;
    s.add(mangoldt_[n]);
  }
  return s.value();
}

double lambda_rk(const LambdaTable& table, const ConvolutionKey& key) {
  if (key.r < 0 || key.k < 0 || key.n < 1) throw DomainError("lambda_rk: negative index");
  if (key.n > table.limit()) throw BoundsError("lambda_rk: n beyond table limit");
  RkEvaluator eval(table, key.r);
  return eval.value(key.k, key.n);
}

ConvolutionTable::ConvolutionTable(const LambdaTable& table, int r, int k_max, std::int64_t limit)
    : r_(r), limit_(limit) {
  if (r < 0 || k_max < 0) throw DomainError("ConvolutionTable: negative order");
  if (limit < 1 || limit > table.limit()) throw BoundsError("ConvolutionTable: limit beyond table");
  const auto size = static_cast<std::size_t>(limit) + 1;
  levels_.resize(static_cast<std::size_t>(k_max) + 1);
  levels_[0].assign(size, 0.0);
  levels_[0][1] = 1.0;

  std::vector<std::pair<std::uint32_t, double>> weights;
  for (std::uint32_t d : table.prime_powers()) {
    if (d > limit) break;
    weights.emplace_back(d, table.mangoldt(d) * ipow(std::log(static_cast<double>(d)), r));
  }
  for (int k = 1; k <= k_max; ++k) {
    const auto& prev = levels_[static_cast<std::size_t>(k - 1)];
    auto& cur = levels_[static_cast<std::size_t>(k)];
    cur.assign(size, 0.0);
    // h(dq) += f(d) g(q) with d ascending reproduces the order used by lambda_rk().
    for (auto [d, f] : weights) {
      const std::int64_t qmax = limit / d;
      for (std::int64_t q = 1; q <= qmax; ++q) {
        const double g = prev[static_cast<std::size_t>(q)];
        if (g != 0.0) cur[static_cast<std::size_t>(d * q)] += f * g;
      }
    }
  }
}

double ConvolutionTable::value(int k, std::int64_t n) const {
  if (k < 0 || k > k_max()) throw BoundsError("ConvolutionTable: k out of range");
  if (n < 1 || n > limit_) throw BoundsError("ConvolutionTable: n out of range");
  return levels_[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
}

std::span<const double> ConvolutionTable::level(int k) const {
  if (k < 0 || k > k_max()) throw BoundsError("ConvolutionTable: k out of range");
  return levels_[static_cast<std::size_t>(k)];
}

double mu_tail_bound(int a, int b, int r, std::int64_t truncation_point) {
  if (a < 0 || b < 0 || r < 0) throw DomainError("mu_tail_bound: negative index");
  if (truncation_point < 1) throw DomainError("mu_tail_bound: truncation point must be >= 1");
  if (a == 0 || b == 0) return 0.0;
  const int e = (r + 1) * (a + b);
  // (log t)^e / t² decreases for t >= e^{e/2}; terms below that are summed explicitly.
  const auto monotone_from = static_cast<std::int64_t>(std::ceil(std::exp(e / 2.0)));
  double explicit_part = 0.0;
  std::int64_t start = truncation_point;
  if (start < monotone_from) {
    for (std::int64_t j = truncation_point + 1; j <= monotone_from; ++j) {
      explicit_part += ipow(std::log(static_cast<double>(j)), e) / (static_cast<double>(j) * j);
    }
    start = monotone_from;
  }
  const double integral = upper_gamma_int(e, std::log(static_cast<double>(start)));
  const double normalizer = ipow(a, r * a) * ipow(b, r * b);  // 0^0 = 1
  return (explicit_part + integral) / normalizer;
}

std::int64_t mu_truncation_for(int a, int b, int r, double target_tail) {
  if (!(target_tail > 0)) throw DomainError("mu_truncation_for: target must be positive");
  if (a == 0 || b == 0) return 1;
  if (mu_tail_bound(a, b, r, 1) <= target_tail) return 1;
  std::int64_t lo = 1;
  std::int64_t hi = 2;
  constexpr std::int64_t kMax = std::int64_t{1} << 62;
  while (mu_tail_bound(a, b, r, hi) > target_tail) {
    lo = hi;
    if (hi >= kMax / 2) return kMax;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (mu_tail_bound(a, b, r, mid) <= target_tail) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

MuConstant mu_partial_sum(int a, int b, int r, std::int64_t truncation_point, std::int64_t cap) {
  if (a < 0 || b < 0 || r < 0) throw DomainError("mu_partial_sum: negative index");
  if (truncation_point < 1) throw DomainError("mu_partial_sum: truncation point must be >= 1");
  MuConstant mu{a, b, r, 0.0, truncation_point, mu_tail_bound(a, b, r, truncation_point)};
  if (a == 0 || b == 0) {
    // Λ_{r,0} is supported on j = 1, where Λ_{r,k}(1) = [k = 0].
    mu.value = (a == 0 && b == 0) ? 1.0 : 0.0;
    return mu;
  }
  if (truncation_point > cap) throw BoundsError("mu_partial_sum: truncation point exceeds cap");
  const LambdaTable table = LambdaTable::build(std::max<std::int64_t>(truncation_point, 2), cap);
  const ConvolutionTable conv(table, r, std::max(a, b), truncation_point);
  const auto la = conv.level(a);
  const auto lb = conv.level(b);
  CompensatedSum sum;
  for (std::int64_t j = 2; j <= truncation_point; ++j) {
    const double x = la[static_cast<std::size_t>(j)] * lb[static_cast<std::size_t>(j)];
    if (x != 0.0) sum.add(x / (static_cast<double>(j) * static_cast<double>(j)));
  }
  mu.value = sum.value();
  return mu;
}

MuConstant mu_constant(int a, int b, int r, double target_tail, std::int64_t cap) {
  if (a < 0 || b < 0 || r < 0) throw DomainError("mu_constant: negative index");
  if (!(target_tail > 0)) throw DomainError("mu_constant: target_tail must be positive");
  const std::int64_t j = mu_truncation_for(a, b, r, target_tail);
  if (j > cap && a == 1 && b == 1) {
    // Diagonal case: closed form through zeta'/zeta at 2; truncation_point 0 marks it.
    const DiagonalMu d = mu_diagonal_reference(r);
    if (d.error_bound <= target_tail) return MuConstant{a, b, r, d.value, 0, d.error_bound};
  }
  if (j > cap) {
    throw ResourceError("mu_constant: target tail unreachable under table cap",
                        mu_tail_bound(a, b, r, cap));
  }
  return mu_partial_sum(a, b, r, j, cap);
}

DiagonalMu mu_diagonal_reference(int r) {
  if (r < 0) throw DomainError("mu_diagonal_reference: negative r");
  const int order = 2 * r + 1;

  // Σ Λ(n)(log n)^order / n² = (ζ'/ζ)^{(order)}(2).
  const HurwitzExpansion zeta = riemann_zeta_taylor(2.0, order + 1, 1e-30);
  std::vector<Complex> zc(zeta.coeffs.begin(), zeta.coeffs.end());
  double mag = 0.0;
  for (double c : zeta.coeffs) mag = std::max(mag, std::abs(c));
  const double zeta_err = zeta.remainder_bound + 64 * std::numeric_limits<double>::epsilon() * mag;
  const PowerSeries logd = log_derivative_series(PowerSeries(std::move(zc), zeta_err));
  double fact = 1.0;
  for (int i = 2; i <= order; ++i) fact *= i;
  const double main_value = fact * logd[order].real();
  const double main_err = fact * logd.err;

  // Σ_p (log p)^{2r+2} Σ_{k>=2} (k-1) k^{2r} p^{-2k}, primes up to kPrimeLimit.
  constexpr std::int64_t kPrimeLimit = 1'000'000;
  std::vector<bool> composite(kPrimeLimit + 1, false);
  CompensatedSum correction;
  const int e = 2 * r + 2;
  for (std::int64_t p = 2; p <= kPrimeLimit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    for (std::int64_t q = p * p; q <= kPrimeLimit; q += p) composite[static_cast<std::size_t>(q)] = true;
    const double inv_sq = 1.0 / (static_cast<double>(p) * static_cast<double>(p));
    double pk = inv_sq * inv_sq;  // p^{-2k} at k = 2
    double inner = 0.0;
    for (int k = 2; k < 200; ++k) {
      const double term = (k - 1) * ipow(k, 2 * r) * pk;
      inner += term;
      if (term < 1e-20 * inner) break;
      pk *= inv_sq;
    }
    correction.add(ipow(std::log(static_cast<double>(p)), e) * inner);
  }
  // Tail over p > P: each inner sum is <= C n^{-4} with C = Σ_{k>=2} (k-1)k^{2r} P^{-2(k-2)},
  // and Σ_{n>P} (log n)^e n^{-4} <= Γ(e+1, 3 log P) / 3^{e+1}.
  double c_const = 0.0;
  {
    const double inv_sq = 1.0 / (static_cast<double>(kPrimeLimit) * kPrimeLimit);
    double w = 1.0;
    for (int k = 2; k < 200; ++k) {
      c_const += (k - 1) * ipow(k, 2 * r) * w;
      w *= inv_sq;
    }
  }
  const double log_p = std::log(static_cast<double>(kPrimeLimit));
  const double tail = c_const * upper_gamma_int(e, 3 * log_p) / ipow(3.0, e + 1);

  DiagonalMu out;
  out.r = r;
  out.value = main_value - correction.value();
  out.error_bound = main_err + tail + 16 * std::numeric_limits<double>::epsilon() *
                                          (std::abs(main_value) + correction.value());
  return out;
}

std::string to_json(const MuConstant& mu) {
  return JsonObject()
      .add("a", mu.a)
      .add("b", mu.b)
      .add("r", mu.r)
      .add("value", mu.value)
      .add("truncation_point", mu.truncation_point)
      .add("tail_bound", mu.tail_bound)
      .str();
}

}  // namespace lmoment
