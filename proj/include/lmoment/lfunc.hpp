#ifndef LMOMENT_LFUNC_HPP
#define LMOMENT_LFUNC_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "lmoment/arith.hpp"
#include "lmoment/characters.hpp"
#include "lmoment/hurwitz.hpp"
#include "lmoment/series.hpp"

namespace lmoment {

/// Regular parts of ζ(1 + t, a/m) for every a in [1, m-1], expanded to a common order with a
/// single Euler–Maclaurin plan. Shared by all characters of one modulus.
class HurwitzBank {
 public:
  /// `target` bounds the remainder contribution of each expansion coefficient.
  HurwitzBank(std::int64_t m, int order, double target);

  std::int64_t modulus() const noexcept { return m_; }
  int order() const noexcept { return order_; }
  const EulerMaclaurinPlan& plan() const noexcept { return plan_; }
  double remainder_bound() const noexcept { return remainder_bound_; }

  /// Coefficient k of ζ(1 + t, a/m) - 1/t.
  double coeff(std::int64_t a, int k) const {
    return coeffs_[static_cast<std::size_t>((a - 1) * (order_ + 1) + k)];
  }
  /// Σ_a |coefficient k|, used in rounding estimates.
  double abs_sum(int k) const { return abs_sums_.at(static_cast<std::size_t>(k)); }

 private:
  std::int64_t m_;
  int order_;
  EulerMaclaurinPlan plan_;
  double remainder_bound_ = 0.0;
  std::vector<double> coeffs_;
  std::vector<double> abs_sums_;
};

/// Taylor expansion of L(1 + t, χ) to `order` with coefficient error <= eps.
/// L(s, χ) = m^{-s} Σ_a χ(a) ζ(s, a/m); the pole terms cancel because Σ_a χ(a) = 0.
/// Throws DomainError for the principal character, ResourceError if eps is unreachable.
PowerSeries l_taylor(const CharacterGroup& group, CharacterId id, int order, double eps);

/// Same, reusing a precomputed bank (bank.order() >= order); `eps` is checked against the
/// propagated error.
PowerSeries l_taylor(const HurwitzBank& bank, const CharacterGroup& group, CharacterId id,
                     int order, double eps);

/// 𝓛^{(r)}(1, χ) = (L'/L)^{(r)}(1, χ) with its propagated error estimate.
struct CurlyL {
  CharacterId id;
  int r = 0;
  std::complex<double> value;
  double err = 0.0;
};

/// Number of extra Taylor orders requested beyond r before taking the log derivative.
inline constexpr int kGuardOrder = 2;

CurlyL curly_l(const CharacterGroup& group, CharacterId id, int r, double eps);

/// 𝓛^{(r)}(1, χ_j) for j = 1, ..., m-2 (index 0 of the result is j = 1). One Hurwitz bank is
/// shared; characters are distributed over `width` threads, results identical for any width.
std::vector<CurlyL> curly_l_all(const CharacterGroup& group, int r, double eps, int width = 1);

/// Φ(χ, r, x) = (1/(x-1)) Σ_{n<x} (x/n - 1) χ(n) Λ(n) (log n)^r.
struct PhiEvaluation {
  CharacterId chi;
  int r = 0;
  double x = 0.0;
  std::complex<double> value;
  /// Number of prime powers n < x.
  std::int64_t terms = 0;
};

/// Direct evaluation in ascending n. Throws DomainError for x <= 1, BoundsError if the table
/// does not cover every n < x.
PhiEvaluation phi_explicit(const CharacterGroup& group, CharacterId id, int r, double x,
                           const LambdaTable& table);

/// Φ(χ_j, r, x) for j = 0, ..., m-2 via residue-class buckets W(c) = Σ_{n<x, n≡c} (x/n-1)Λ(n)(log n)^r
/// followed by Φ_j = Σ_c χ_j(c) W(c)/(x-1). Agrees with phi_explicit up to rounding.
std::vector<PhiEvaluation> phi_explicit_all(const CharacterGroup& group, int r, double x,
                                            const LambdaTable& table, int width = 1);

}  // namespace lmoment

#endif  // LMOMENT_LFUNC_HPP
