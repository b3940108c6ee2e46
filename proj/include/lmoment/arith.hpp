#ifndef LMOMENT_ARITH_HPP
#define LMOMENT_ARITH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lmoment {

/// Largest sieve limit accepted by default (about 120 MB of tables).
inline constexpr std::int64_t kDefaultTableCap = 20'000'000;

/// Sieved von Mangoldt values Λ(n) and smallest prime factors for 1 <= n <= limit.
class LambdaTable {
 public:
  /// Linear sieve up to `limit`. Throws BoundsError unless 1 <= limit <= cap.
  static LambdaTable build(std::int64_t limit, std::int64_t cap = kDefaultTableCap);

  std::int64_t limit() const noexcept { return limit_; }

  /// Λ(n) in natural-log units; n must lie in [1, limit].
  double mangoldt(std::int64_t n) const;
  std::int64_t smallest_prime_factor(std::int64_t n) const;

  /// Index 0 is unused (0.0); index n holds Λ(n).
  std::span<const double> mangoldt_values() const noexcept { return mangoldt_; }

  /// Prime powers p^k <= limit in ascending order.
  const std::vector<std::uint32_t>& prime_powers() const noexcept { return prime_powers_; }

  /// Chebyshev ψ(x) = Σ_{n <= x} Λ(n) for x <= limit, compensated.
  double chebyshev_psi(std::int64_t x) const;

 private:
  std::int64_t limit_ = 0;
  std::vector<double> mangoldt_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> prime_powers_;
};

/// (r, k, n) addressing Λ_{r,k}(n): derivative order, convolution length, argument.
struct ConvolutionKey {
  int r = 0;
  int k = 0;
  std::int64_t n = 1;
};

/// Λ_{r,k}(n): sum over ordered k-tuples with product n of Π Λ(n_i)(log n_i)^r.
/// Evaluated by recursion over prime-power divisors with a local memo; k = 0 gives [n = 1].
/// Throws BoundsError when n > table.limit().
double lambda_rk(const LambdaTable& table, const ConvolutionKey& key);

/// Immutable table of the convolution powers Λ_{r,0}, ..., Λ_{r,k_max} on [1, limit],
/// each level obtained from the previous by one Dirichlet convolution with Λ(n)(log n)^r.
class ConvolutionTable {
 public:
  ConvolutionTable(const LambdaTable& table, int r, int k_max, std::int64_t limit);

  int r() const noexcept { return r_; }
  int k_max() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  std::int64_t limit() const noexcept { return limit_; }
  double value(int k, std::int64_t n) const;
  std::span<const double> level(int k) const;

 private:
  int r_;
  std::int64_t limit_;
  std::vector<std::vector<double>> levels_;
};

/// Partial sum of μ^{(a,b)}(r) = Σ_j Λ_{r,a}(j)Λ_{r,b}(j)/j² with a rigorous tail bound.
struct MuConstant {
  int a = 0;
  int b = 0;
  int r = 0;
  double value = 0.0;
  std::int64_t truncation_point = 1;  // 0: diagonal closed form, no explicit truncation
  double tail_bound = 0.0;
};

/// Bound on Σ_{j > J} Λ_{r,a}(j)Λ_{r,b}(j)/j² from Λ_{r,k}(n) <= (log n)^{(r+1)k}/k^{rk}:
/// Γ(E+1, log J)/(a^{ra} b^{rb}) with E = (r+1)(a+b) and 0^0 = 1. Zero when a or b is 0.
/// Terms below e^{E/2}, where the integrand is not yet decreasing, are bounded one by one.
double mu_tail_bound(int a, int b, int r, std::int64_t truncation_point);

/// Smallest truncation point at which mu_tail_bound() is <= target (may exceed any cap).
std::int64_t mu_truncation_for(int a, int b, int r, double target_tail);

/// μ^{(a,b)}(r) summed exactly to j <= truncation_point.
MuConstant mu_partial_sum(int a, int b, int r, std::int64_t truncation_point,
                          std::int64_t cap = kDefaultTableCap);

/// μ^{(a,b)}(r) with tail_bound <= target_tail. Throws ResourceError (carrying the bound
/// reached at the cap) when the required truncation point exceeds `cap`.
MuConstant mu_constant(int a, int b, int r, double target_tail,
                       std::int64_t cap = kDefaultTableCap);

/// High-accuracy value of the diagonal constant μ^{(1,1)}(r) = Σ Λ(n)²(log n)^{2r}/n².
/// Uses Σ Λ(n)(log n)^{2r+1}/n² = (ζ'/ζ)^{(2r+1)}(2) minus the explicit prime-power correction
/// Σ_p Σ_{k>=2} (k-1)k^{2r}(log p)^{2r+2}p^{-2k}. `error_bound` covers both truncations.
struct DiagonalMu {
  int r = 0;
  double value = 0.0;
  double error_bound = 0.0;
};
DiagonalMu mu_diagonal_reference(int r);

/// JSON object with fields a, b, r, value, truncation_point, tail_bound (17 significant digits).
std::string to_json(const MuConstant& mu);

}  // namespace lmoment

#endif  // LMOMENT_ARITH_HPP
