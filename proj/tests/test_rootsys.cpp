#include "doctest.h"
#include "support.hpp"

using namespace flagacs;

TEST_SUITE("rootsys") {

TEST_CASE("root counts") {
  auto count = [](char f, int l) { return RootSystem(LieType{f, l}).roots().size(); };
  for (int l = 1; l <= 6; ++l) CHECK(count('A', l) == static_cast<std::size_t>(l * (l + 1)));
  for (int l = 2; l <= 6; ++l) {
    CHECK(count('B', l) == static_cast<std::size_t>(2 * l * l));
    CHECK(count('C', l) == static_cast<std::size_t>(2 * l * l));
  }
  for (int l = 4; l <= 6; ++l) CHECK(count('D', l) == static_cast<std::size_t>(2 * l * (l - 1)));
  CHECK(count('G', 2) == 12);
  CHECK_THROWS_AS((LieType{'D', 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((LieType{'B', 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((LieType{'G', 3}.validate()), std::invalid_argument);
}

TEST_CASE("pairings are integral and simple roots give the Cartan matrix") {
  for (const auto& t : parse_families("A:3,B:3,C:3,D:4,G:2")) {
    RootSystem rs(t);
    for (const auto& a : rs.roots())
      for (const auto& b : rs.roots()) {
        int p = rs.pairing(a, b);
        CHECK(Rational(p) == Rational(2) * rs.inner(a, b) / rs.inner(b, b));
      }
    for (std::size_t i = 0; i < rs.rank(); ++i) CHECK(rs.pairing(rs.simple()[i], rs.simple()[i]) == 2);
  }
  RootSystem g2(LieType{'G', 2});
  CHECK(std::abs(g2.pairing(g2.simple()[1], g2.simple()[0]) * g2.pairing(g2.simple()[0], g2.simple()[1])) == 3);
}

TEST_CASE("positive roots are nonnegative combinations of simple roots") {
  for (const auto& t : parse_families("A:4,B:4,C:4,D:5,G:2")) {
    RootSystem rs(t);
    for (const auto& r : rs.positive()) {
      int h = 0;
      for (int c : rs.simple_coeffs(r)) {
        CHECK(c >= 0);
        h += c;
      }
      CHECK(h == rs.height(r));
    }
  }
}

TEST_CASE("text notation round trips") {
  for (const auto& t : parse_families("A:3,B:3,C:3,D:4,G:2")) {
    RootSystem rs(t);
    for (const auto& r : rs.roots()) CHECK(rs.parse(rs.format(r)) == r);
  }
  RootSystem c4(LieType{'C', 4});
  CHECK(parse_theta(c4, "l3-l4, 2l4") == std::vector<std::size_t>{2, 3});
  CHECK(format_theta(c4, {2, 3}) == "l3-l4,2l4");
  CHECK(parse_theta(c4, "").empty());
  CHECK_THROWS_AS(parse_theta(c4, "l1-l3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_theta(c4, "bogus"), std::invalid_argument);
}

TEST_CASE("family lists") {
  auto ts = parse_families("A:1-3,G:2");
  REQUIRE(ts.size() == 4);
  CHECK(ts[0].str() == "A1");
  CHECK(ts[3].str() == "G2");
  CHECK_THROWS(parse_families("A:3-1"));
  CHECK_THROWS(parse_families("Q:2"));
}

TEST_CASE("theta closure") {
  RootSystem a3(LieType{'A', 3});
  auto th = theta_closure(a3, {0, 1});
  CHECK(th.closure_plus.size() == 3);
  CHECK(th.complement_minus.size() == 3);
  CHECK(theta_closure(a3, {}).complement_minus.size() == 6);
}

}  // TEST_SUITE
