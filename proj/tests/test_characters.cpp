#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lmoment/characters.hpp"
#include "lmoment/errors.hpp"

using namespace lmoment;

TEST_CASE("group construction") {
  const auto g5 = CharacterGroup::build(5);
  CHECK(g5.generator() == 2);
  CHECK(g5.dlog(1) == 0);
  CHECK(g5.dlog(2) == 1);
  CHECK(g5.dlog(4) == 2);
  CHECK(g5.dlog(3) == 3);
  CHECK(CharacterGroup::build(7).generator() == 3);
  CHECK_THROWS_AS(CharacterGroup::build(9), DomainError);
  CHECK_THROWS_AS(CharacterGroup::build(2), DomainError);
  CHECK_THROWS_AS(CharacterGroup::build(101, 100), BoundsError);
}

TEST_CASE("least primitive roots") {
  CHECK(least_primitive_root(3) == 2);
  CHECK(least_primitive_root(23) == 5);
  CHECK(least_primitive_root(41) == 6);
  CHECK(least_primitive_root(191) == 19);
}

TEST_CASE("dlog is a bijection") {
  for (std::int64_t m : {3, 5, 7, 11, 101, 1009}) {
    const auto g = CharacterGroup::build(m);
    std::vector<int> seen(static_cast<std::size_t>(m - 1), 0);
    std::int64_t power = 1;
    for (std::int64_t i = 0; i < m - 1; ++i) {
      CHECK(g.dlog(power) == i);
      power = power * g.generator() % m;
    }
    for (std::int64_t n = 1; n < m; ++n) ++seen[static_cast<std::size_t>(g.dlog(n))];
    for (int c : seen) CHECK(c == 1);
  }
}

TEST_CASE("evaluation examples") {
  const auto g = CharacterGroup::build(5);
  CHECK(g.eval(CharacterId{0}, 3) == std::complex<double>(1, 0));
  CHECK(g.eval(CharacterId{2}, 2) == std::complex<double>(-1, 0));
  CHECK(g.eval(CharacterId{1}, 10) == std::complex<double>(0, 0));
  CHECK(g.quadratic().j == 2);
  CHECK_THROWS_AS(g.eval(CharacterId{4}, 1), BoundsError);
}

TEST_CASE("conjugation") {
  const auto g7 = CharacterGroup::build(7);
  CHECK(g7.conjugate(CharacterId{2}).j == 4);
  CHECK(g7.conjugate(CharacterId{0}).j == 0);
  CHECK(CharacterGroup::build(5).conjugate(CharacterId{2}).j == 2);
  for (std::int64_t m : {5, 7, 11, 13, 1601}) {
    const auto g = CharacterGroup::build(m);
    for (std::int64_t j = 0; j < m - 1; ++j) {
      const CharacterId id{j};
      CHECK(g.conjugate(g.conjugate(id)) == id);
      for (std::int64_t n = 1; n < m; n += (m > 100 ? 37 : 1)) {
        REQUIRE(g.eval(g.conjugate(id), n) == std::conj(g.eval(id, n)));
      }
    }
  }
}

TEST_CASE("multiplicativity and unit modulus") {
  for (std::int64_t m : {5, 7, 11}) {
    const auto g = CharacterGroup::build(m);
    for (std::int64_t j = 0; j < m - 1; ++j) {
      for (std::int64_t a = 1; a < m; ++a) {
        CHECK(std::abs(std::abs(g.eval(CharacterId{j}, a)) - 1.0) <= 1e-15);
        for (std::int64_t b = 1; b < m; ++b) {
          const auto lhs = g.eval(CharacterId{j}, a * b);
          const auto rhs = g.eval(CharacterId{j}, a) * g.eval(CharacterId{j}, b);
          REQUIRE(std::abs(lhs - rhs) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("orthogonality of rows and columns") {
  for (std::int64_t m : {3, 5, 7, 31, 101}) {
    const auto g = CharacterGroup::build(m);
    const double order = static_cast<double>(m - 1);
    for (std::int64_t n = 1; n < m; ++n) {
      std::complex<double> col = 0;
      for (std::int64_t j = 0; j < m - 1; ++j) col += g.eval(CharacterId{j}, n);
      REQUIRE(std::abs(col - (n == 1 ? order : 0.0)) <= 1e-9);
    }
    for (std::int64_t j = 0; j < m - 1; ++j) {
      std::complex<double> row = 0;
      for (std::int64_t n = 1; n < m; ++n) row += g.eval(CharacterId{j}, n);
      REQUIRE(std::abs(row - (j == 0 ? order : 0.0)) <= 1e-9);
    }
  }
}

TEST_CASE("roots avoid phase drift") {
  const auto g = CharacterGroup::build(4999);
  for (std::int64_t t = 0; t < 4998; t += 17) {
    const double theta = 2 * 3.14159265358979323846 * static_cast<double>(t) / 4998.0;
    CHECK(std::abs(g.root(t) - std::polar(1.0, theta)) <= 4e-15);
  }
  CHECK(g.root(2499) == std::complex<double>(-1, 0));
}

TEST_CASE("csv dump") {
  const std::string csv = CharacterGroup::build(5).dump_csv();
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "j,1,2,3,4");
  std::getline(in, line);
  CHECK(line == "0,\"1,0\",\"1,0\",\"1,0\",\"1,0\"");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}
