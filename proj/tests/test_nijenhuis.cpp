#include "doctest.h"
#include "support.hpp"

#include <functional>

using namespace flagacs;
using testsupport::Gen;

namespace {

QVector n_of(const NijenhuisTable& t, const QVector& x, const QVector& y) {
  QVector out(t.n);
  for (std::size_t i = 0; i < t.n; ++i)
    for (std::size_t j = 0; j < t.n; ++j) {
      if (i == j || x[i].is_zero() || y[j].is_zero()) continue;
      Rational s = x[i] * y[j];
      out = i < j ? add(out, scale(t.at(i, j), s)) : sub(out, scale(t.at(j, i), s));
    }
  return out;
}

QVector random_vector(Gen& g, std::size_t n) {
  QVector v(n);
  for (auto& e : v) e = g.rational(5);
  return v;
}

QMatrix sample_j(const IsotropyModel& im, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto fam = param_family(im);
  return fam.j.eval(fam.sample(rng));
}

bool any_leaf(const CaseNode& n, const std::function<bool(const CaseNode&)>& pred) {
  if (n.children.empty()) return pred(n);
  for (const auto& c : n.children)
    if (any_leaf(c, pred)) return true;
  return false;
}

}  // namespace

TEST_SUITE("nijenhuis") {

TEST_CASE("N(JX,Y) = -J N(X,Y) and N(Y,X) = -N(X,Y)") {
  Gen g(51);
  for (const auto& im : {testsupport::model('B', 3, "l1-l2,l2-l3"), testsupport::model('A', 3),
                         testsupport::model('C', 3, "2l3", ModuleModel::m_theta)}) {
    QMatrix j = sample_j(im, 7);
    auto t = nijenhuis_table(im, j);
    for (int s = 0; s < 10; ++s) {
      QVector x = random_vector(g, im.dim()), y = random_vector(g, im.dim());
      CHECK(n_of(t, j * x, y) == scale(j * n_of(t, x, y), Rational(-1)));
      CHECK(n_of(t, y, x) == scale(n_of(t, x, y), Rational(-1)));
    }
  }
}

TEST_CASE("table is tensorial under basis permutations") {
  Gen g(52);
  auto im = testsupport::model('B', 3, "l1-l2,l2-l3");
  QMatrix j = sample_j(im, 3);
  auto t = nijenhuis_table(im, j);
  auto p = g.permutation(im.dim());
  auto pm = permute_basis(im, p);
  QMatrix pj(im.dim(), im.dim());
  for (std::size_t a = 0; a < im.dim(); ++a)
    for (std::size_t b = 0; b < im.dim(); ++b) pj(a, b) = j(p[a], p[b]);
  auto pt = nijenhuis_table(pm, pj);
  for (std::size_t a = 0; a < im.dim(); ++a)
    for (std::size_t b = a + 1; b < im.dim(); ++b) {
      QVector orig = p[a] < p[b] ? t.at(p[a], p[b]) : scale(t.at(p[b], p[a]), Rational(-1));
      for (std::size_t k = 0; k < im.dim(); ++k) CHECK(pt.at(a, b)[k] == orig[p[k]]);
    }
  CHECK(pt.nonzero_pairs() == t.nonzero_pairs());
}

TEST_CASE("symbolic coefficients evaluate to the numeric table") {
  std::mt19937_64 rng(53);
  for (const auto& im : {testsupport::model('B', 2), testsupport::model('B', 3, "l1-l2,l2-l3")}) {
    auto fam = param_family(im);
    auto sym = nijenhuis_symbolic(im, fam.j);
    for (int s = 0; s < 3; ++s) {
      auto v = fam.sample(rng);
      auto t = nijenhuis_table(im, fam.j.eval(v));
      for (std::size_t a = 0; a < im.dim(); ++a)
        for (std::size_t b = a + 1; b < im.dim(); ++b)
          for (std::size_t k = 0; k < im.dim(); ++k) CHECK(sym.coefficient(a, b, k).eval(v) == t.at(a, b)[k]);
    }
  }
}

TEST_CASE("the C3 flag with Theta = {2l3} carries an integrable structure") {
  auto im = testsupport::model('C', 3, "2l3", ModuleModel::m_theta);
  auto v = integrability_verdict(im);
  REQUIRE(v.status == IntegrabilityStatus::integrable_witness);
  REQUIRE(v.j);
  CHECK(ACSWitness{*v.j, false, {}}.verify(im));
  CHECK(nijenhuis_table(im, *v.j).is_zero());
}

TEST_CASE("small maximal flags are certified non-integrable") {
  for (const auto& im : {testsupport::model('A', 3), testsupport::model('B', 2), testsupport::model('G', 2)}) {
    auto v = integrability_verdict(im);
    CHECK_MESSAGE(v.status == IntegrabilityStatus::not_integrable_certified, im.spec.lie_type.str());
    REQUIRE(v.tree);
    CHECK(any_leaf(*v.tree, [](const CaseNode& n) { return n.outcome == "contradiction"; }));
    CHECK_FALSE(any_leaf(*v.tree, [](const CaseNode& n) { return n.outcome != "contradiction"; }));
  }
}

TEST_CASE("D5 maximal flag fails through the ratio of the c parameters") {
  auto im = testsupport::model('D', 5);
  auto v = integrability_verdict(im);
  REQUIRE(v.status == IntegrabilityStatus::not_integrable_certified);
  REQUIRE(v.tree);
  std::function<bool(const CaseNode&)> mentions_c = [&](const CaseNode& n) {
    if (n.step.find("solve c") != std::string::npos) return true;
    for (const auto& c : n.children)
      if (mentions_c(c)) return true;
    return false;
  };
  CHECK(mentions_c(*v.tree));
  CHECK(any_leaf(*v.tree, [](const CaseNode& n) {
    return n.outcome == "contradiction" && n.detail.find("c5") != std::string::npos;
  }));
}

TEST_CASE("odd classes give no structure to test") {
  auto v = integrability_verdict(testsupport::model('A', 2));
  CHECK(v.status == IntegrabilityStatus::family_infeasible);
  CHECK(v.existence.status == ExistenceResult::Status::obstruction);
}

}  // TEST_SUITE
