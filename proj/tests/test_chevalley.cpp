#include "doctest.h"
#include "support.hpp"

using namespace flagacs;

TEST_SUITE("chevalley") {

TEST_CASE("Jacobi identity, exhaustive for small ranks") {
  for (const auto& t : parse_families("A:1-4,B:2-4,C:2-4,D:4,G:2")) {
    StructureConstants sc{RootSystem(t)};
    CHECK_MESSAGE(jacobi_violations(sc) == 0, t.str());
  }
}

TEST_CASE("|N_ab| = p + 1 and antisymmetry") {
  for (const auto& t : parse_families("A:4,B:3,C:3,D:4,G:2")) {
    StructureConstants sc{RootSystem(t)};
    const auto& rs = sc.roots();
    for (std::size_t a = 0; a < sc.num_roots(); ++a)
      for (std::size_t b = 0; b < sc.num_roots(); ++b) {
        CHECK(sc.n(a, b) == -sc.n(b, a));
        if (sc.sum_index(a, b)) {
          int p = rs.chain_down(rs.roots()[a], rs.roots()[b]);
          CHECK(std::abs(sc.n(a, b)) == p + 1);
        } else {
          CHECK(sc.n(a, b) == 0);
        }
      }
  }
}

TEST_CASE("extraspecial pairs are positive") {
  for (const auto& t : parse_families("A:3,B:3,C:3,D:4,G:2")) {
    StructureConstants sc{RootSystem(t)};
    const std::size_t nonsimple = sc.roots().positive().size() - sc.rank();
    CHECK(sc.extraspecial().size() == nonsimple);
    for (const auto& [a, b] : sc.extraspecial()) CHECK(sc.n(a, b) > 0);
  }
}

TEST_CASE("a flipped extraspecial sign still gives a Lie algebra") {
  for (const auto& t : parse_families("B:3,C:3,G:2")) {
    ChevalleyOptions o;
    o.flip_extraspecial = 0;
    StructureConstants sc(RootSystem(t), o);
    CHECK(jacobi_violations(sc) == 0);
    const auto [a, b] = sc.extraspecial().front();
    CHECK(sc.n(a, b) < 0);
    CHECK(sc.convention_id() != StructureConstants(RootSystem(t)).convention_id());
  }
  ChevalleyOptions bad;
  bad.flip_extraspecial = 99;
  CHECK_THROWS(StructureConstants(RootSystem(LieType{'A', 2}), bad));
}

TEST_CASE("matrix realizations preserve brackets") {
  for (const auto& t : parse_families("A:1-5,B:2-5,C:2-5,D:4-5")) {
    StructureConstants sc{RootSystem(t)};
    auto mr = build_realization(sc);
    CHECK_MESSAGE(mr.bracket_failures(sc) == 0, t.str());
    for (const auto& k : mr.kappa) CHECK_FALSE(k.is_zero());
  }
  CHECK_THROWS_AS(build_realization(StructureConstants(RootSystem(LieType{'G', 2}))), std::invalid_argument);
}

TEST_CASE("abstract bracket is bilinear on random elements") {
  testsupport::Gen g(21);
  StructureConstants sc{RootSystem(LieType{'C', 3})};
  auto rnd = [&] {
    QVector v(sc.dim());
    for (auto& x : v)
      if (g.range(0, 2) == 0) x = g.rational(4);
    return sc.from_coords(v);
  };
  for (int i = 0; i < 30; ++i) {
    auto x = rnd(), y = rnd(), z = rnd();
    Rational s = g.rational();
    CHECK(sc.bracket(x + s * y, z) == sc.bracket(x, z) + s * sc.bracket(y, z));
    CHECK(sc.bracket(x, y) == Rational(-1) * sc.bracket(y, x));
  }
}

}  // TEST_SUITE
