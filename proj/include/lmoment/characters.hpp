#ifndef LMOMENT_CHARACTERS_HPP
#define LMOMENT_CHARACTERS_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace lmoment {

inline constexpr std::int64_t kDefaultModulusCap = 1'000'003;

/// Frequency index of a character mod m: χ_j(g) = e^{2πi j/(m-1)} for the least primitive
/// root g. j = 0 is the principal character.
struct CharacterId {
  std::int64_t j = 0;
  friend bool operator==(CharacterId, CharacterId) = default;
};

/// All Dirichlet characters modulo a prime m, tabulated through the discrete logarithm
/// with respect to the least primitive root.
class CharacterGroup {
 public:
  /// Throws DomainError unless m is prime with 3 <= m; BoundsError if m > cap.
  static CharacterGroup build(std::int64_t m, std::int64_t cap = kDefaultModulusCap);

  std::int64_t modulus() const noexcept { return m_; }
  std::int64_t generator() const noexcept { return g_; }
  /// Group order m - 1 (also the number of characters).
  std::int64_t order() const noexcept { return m_ - 1; }

  /// ind(n) for n in [1, m-1], with g^{ind(n)} ≡ n (mod m).
  std::int64_t dlog(std::int64_t n) const;

  /// χ_j(n): 0 when m | n, otherwise e^{2πi (j ind(n) mod (m-1))/(m-1)}.
  std::complex<double> eval(CharacterId id, std::int64_t n) const;

  /// e^{2πi t/(m-1)} for t in [0, m-2]. root(m-1-t) is the exact conjugate of root(t).
  std::complex<double> root(std::int64_t t) const { return roots_.at(static_cast<std::size_t>(t)); }

  /// Index of χ̄: (m-1-j) mod (m-1).
  CharacterId conjugate(CharacterId id) const;

  bool is_principal(CharacterId id) const noexcept { return id.j == 0; }

  /// The quadratic (Legendre) character, j = (m-1)/2.
  CharacterId quadratic() const noexcept { return CharacterId{(m_ - 1) / 2}; }

  /// Character table as CSV: header "j,1,...,m-1", then one row per j with "re,im" cells.
  std::string dump_csv() const;

 private:
  CharacterGroup() = default;
  void check_id(CharacterId id) const;

  std::int64_t m_ = 0;
  std::int64_t g_ = 0;
  std::vector<std::int32_t> dlog_;
  std::vector<std::complex<double>> roots_;
};

bool is_prime(std::int64_t n) noexcept;

/// Least primitive root of a prime m >= 3.
std::int64_t least_primitive_root(std::int64_t m);

}  // namespace lmoment

#endif  // LMOMENT_CHARACTERS_HPP
