#include "doctest.h"
#include "support.hpp"

using namespace flagacs;

namespace {

// Variables are declared up front; polynomials are formed afterwards.
struct Vars {
  std::shared_ptr<VarSet> vs = std::make_shared<VarSet>();
  explicit Vars(const std::vector<std::pair<std::string, VarKind>>& decl) {
    for (const auto& [name, kind] : decl) vs->add(name, kind);
  }
  PolyQ operator[](const std::string& name) const { return PolyQ::variable(vs, *vs->find(name)); }
  PolyQ c(const Rational& r) const { return PolyQ(vs, r); }
};

bool all_leaves(const CaseNode& n, const std::string& outcome) {
  if (n.children.empty()) return n.outcome == outcome;
  for (const auto& c : n.children)
    if (!all_leaves(c, outcome)) return false;
  return true;
}

}  // namespace

TEST_SUITE("elimination") {

TEST_CASE("sum of squares plus one has no real zero") {
  Vars v({{"x", VarKind::free}});
  PolyQ x = v["x"];
  auto r = eliminate(EliminationProblem{v.vs, {x * x + v.c(1)}, {}, {}});
  CHECK(r.status == EliminationResult::Status::infeasible);
  CHECK(all_leaves(r.tree, "contradiction"));
}

TEST_CASE("a nonvanishing monomial cannot vanish") {
  Vars v({{"c", VarKind::nonvanishing}, {"x", VarKind::free}});
  PolyQ c = v["c"], x = v["x"];
  auto r = eliminate(EliminationProblem{v.vs, {c * c * Rational(3), x - c}, {}, {}});
  CHECK(r.status == EliminationResult::Status::infeasible);
}

TEST_CASE("linear systems are solved exactly") {
  Vars v({{"x", VarKind::free}, {"y", VarKind::free}});
  PolyQ x = v["x"], y = v["y"];
  auto r = eliminate(EliminationProblem{v.vs, {x + y - v.c(3), x - y - v.c(1)}, {}, {}});
  REQUIRE(r.status == EliminationResult::Status::solution);
  REQUIRE(r.point);
  CHECK((*r.point)[0] == Rational(2));
  CHECK((*r.point)[1] == Rational(1));
}

TEST_CASE("side conditions are respected") {
  Vars v({{"x", VarKind::free}});
  PolyQ x = v["x"];
  // x(x-1) = 0 with x != 0 forces x = 1
  auto r = eliminate(EliminationProblem{v.vs, {x * (x - v.c(1))}, {x}, {}});
  REQUIRE(r.status == EliminationResult::Status::solution);
  CHECK((*r.point)[0] == Rational(1));
  auto none = eliminate(EliminationProblem{v.vs, {x * x}, {x}, {}});
  CHECK(none.status == EliminationResult::Status::infeasible);
  auto naz = eliminate(EliminationProblem{v.vs, {x}, {}, {{x, x * x}}});
  CHECK(naz.status == EliminationResult::Status::infeasible);
}

TEST_CASE("sign variables take only the values 1 and -1") {
  Vars v({{"e", VarKind::sign}, {"f", VarKind::sign}});
  PolyQ e = v["e"], f = v["f"];
  auto r = eliminate(EliminationProblem{v.vs, {e + f, e - v.c(1)}, {}, {}});
  REQUIRE(r.status == EliminationResult::Status::solution);
  CHECK((*r.point)[0] == Rational(1));
  CHECK((*r.point)[1] == Rational(-1));
  auto bad = eliminate(EliminationProblem{v.vs, {e * Rational(2) - v.c(1)}, {}, {}});
  CHECK(bad.status == EliminationResult::Status::infeasible);
}

TEST_CASE("acceptance callback can reject candidates") {
  Vars v({{"x", VarKind::free}});
  PolyQ x = v["x"];
  EliminationOptions o;
  o.accept = [](const std::vector<Rational>&) { return false; };
  auto r = eliminate(EliminationProblem{v.vs, {x - v.c(2)}, {}, {}}, o);
  CHECK(r.status != EliminationResult::Status::solution);
}

TEST_CASE("node budget stops the search") {
  std::vector<std::pair<std::string, VarKind>> decl;
  for (int i = 0; i < 6; ++i) decl.push_back({"x" + std::to_string(i), VarKind::free});
  Vars v(decl);
  std::vector<PolyQ> xs;
  for (const auto& d : decl) xs.push_back(v[d.first]);
  std::vector<PolyQ> eqs;
  for (int i = 0; i < 6; ++i) eqs.push_back(xs[i] * xs[(i + 1) % 6] * xs[(i + 2) % 6] + v.c(1));
  EliminationOptions o;
  o.max_nodes = 2;
  auto r = eliminate(EliminationProblem{v.vs, eqs, {}, {}}, o);
  CHECK(r.nodes <= 3);
  CHECK(r.status == EliminationResult::Status::unresolved);
}

}  // TEST_SUITE
