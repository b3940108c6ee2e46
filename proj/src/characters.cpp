#include "lmoment/characters.hpp"

#include <cmath>
#include <numbers>

#include "lmoment/errors.hpp"
#include "lmoment/format.hpp"

namespace lmoment {
namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  std::int64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// e^{2πi t/q} for 0 <= 2t <= q, reduced to an angle in [0, π/4] before the transcendental call.
std::complex<double> half_turn_root(std::int64_t t, std::int64_t q) {
  const double pi = std::numbers::pi;
  const double qd = static_cast<double>(q);
  if (8 * t <= q) {
    const double theta = 2 * pi * static_cast<double>(t) / qd;
    return {std::cos(theta), std::sin(theta)};
  }
  if (4 * t <= q) {
    const double psi = pi * static_cast<double>(q - 4 * t) / (2 * qd);
    return {std::sin(psi), std::cos(psi)};
  }
  if (8 * t <= 3 * q) {
    const double psi = pi * static_cast<double>(4 * t - q) / (2 * qd);
    return {-std::sin(psi), std::cos(psi)};
  }
  const double phi = pi * static_cast<double>(q - 2 * t) / qd;
  return {-std::cos(phi), std::sin(phi)};
}

}  // namespace

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t least_primitive_root(std::int64_t m) {
  if (m < 3 || !is_prime(m)) throw DomainError("least_primitive_root: modulus must be an odd prime");
  std::vector<std::int64_t> factors;
  std::int64_t n = m - 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      factors.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  for (std::int64_t g = 2; g < m; ++g) {
    bool primitive = true;
    for (std::int64_t q : factors) {
      if (powmod(g, (m - 1) / q, m) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw DomainError("least_primitive_root: none found");
}

CharacterGroup CharacterGroup::build(std::int64_t m, std::int64_t cap) {
  if (m < 3 || !is_prime(m)) throw DomainError("CharacterGroup: modulus must be a prime >= 3");
  if (m > cap) throw BoundsError("CharacterGroup: modulus exceeds cap");
  CharacterGroup group;
  group.m_ = m;
  group.g_ = least_primitive_root(m);
  const std::int64_t q = m - 1;
  group.dlog_.assign(static_cast<std::size_t>(m), -1);
  std::int64_t power = 1;
  for (std::int64_t i = 0; i < q; ++i) {
    group.dlog_[static_cast<std::size_t>(power)] = static_cast<std::int32_t>(i);
    power = mulmod(power, group.g_, m);
  }
  group.roots_.resize(static_cast<std::size_t>(q));
  for (std::int64_t t = 0; 2 * t <= q; ++t) {
    group.roots_[static_cast<std::size_t>(t)] = half_turn_root(t, q);
  }
  for (std::int64_t t = q / 2 + 1; t < q; ++t) {
    group.roots_[static_cast<std::size_t>(t)] = std::conj(group.roots_[static_cast<std::size_t>(q - t)]);
  }
  if (q % 2 == 0) group.roots_[static_cast<std::size_t>(q / 2)] = {-1.0, 0.0};
  return group;
}

std::int64_t CharacterGroup::dlog(std::int64_t n) const {
  if (n < 1 || n >= m_) throw BoundsError("CharacterGroup::dlog: argument outside [1, m-1]");
  return dlog_[static_cast<std::size_t>(n)];
}

void CharacterGroup::check_id(CharacterId id) const {
  if (id.j < 0 || id.j >= m_ - 1) throw BoundsError("CharacterGroup: character index out of range");
}

std::complex<double> CharacterGroup::eval(CharacterId id, std::int64_t n) const {
  check_id(id);
  if (n < 0) throw DomainError("CharacterGroup::eval: negative argument");
  const std::int64_t r = n % m_;
  if (r == 0) return {0.0, 0.0};
  const std::int64_t t = (id.j * dlog_[static_cast<std::size_t>(r)]) % (m_ - 1);
  return roots_[static_cast<std::size_t>(t)];
}

CharacterId CharacterGroup::conjugate(CharacterId id) const {
  check_id(id);
  return CharacterId{(m_ - 1 - id.j) % (m_ - 1)};
}

std::string CharacterGroup::dump_csv() const {
  std::string out = "j";
  for (std::int64_t n = 1; n < m_; ++n) out += "," + std::to_string(n);
  out += "\n";
  for (std::int64_t j = 0; j < m_ - 1; ++j) {
    out += std::to_string(j);
    for (std::int64_t n = 1; n < m_; ++n) {
      const auto v = eval(CharacterId{j}, n);
      out += ",\"" + format_double(v.real()) + "," + format_double(v.imag()) + "\"";
    }
    out += "\n";
  }
  return out;
}

}  // namespace lmoment
