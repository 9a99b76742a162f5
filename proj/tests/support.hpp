#pragma once

#include "flagacs/nijenhuis.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport {

using namespace flagacs;

// splitmix64; every property test draws from one of these with a fixed seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Rational rational(long bound = 9) {
    long d = range(1, bound);
    return Rational(range(-bound, bound), d);
  }
  Rational nonzero(long bound = 9) {
    for (;;) {
      Rational r = rational(bound);
      if (!r.is_zero()) return r;
    }
  }
  QMatrix matrix(std::size_t r, std::size_t c, long bound = 5) {
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rational(bound);
    return m;
  }
  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[static_cast<std::size_t>(next() % i)]);
    return p;
  }

 private:
  std::uint64_t s_;
};

inline IsotropyModel model(char family, int rank, const std::string& theta = "",
                           ModuleModel m = ModuleModel::n_minus, ChevalleyOptions opts = {}) {
  LieType t{family, rank};
  RootSystem rs(t);
  return build_isotropy(FlagSpec{t, parse_theta(rs, theta), m, opts});
}

inline std::size_t slot(const IsotropyModel& im, const std::string& label) {
  for (std::size_t i = 0; i < im.dim(); ++i)
    if (im.basis[i].label == label) return i;
  throw std::invalid_argument("no basis element " + label);
}

// Coefficient of e_k in N(e_i, e_j), any order of i and j.
inline PolyQ n_coeff(const SymbolicNijenhuis& s, std::size_t i, std::size_t j, std::size_t k) {
  return i < j ? s.coefficient(i, j, k) : -s.coefficient(j, i, k);
}

inline Rational bracket_coeff(const IsotropyModel& im, std::size_t i, std::size_t j, std::size_t k) {
  auto it = im.bracket(i, j).find(k);
  return it == im.bracket(i, j).end() ? Rational(0) : it->second;
}

// Builder for J given column by column in named variables. All
// variables must be declared before any polynomial is formed.
struct SymbolicJ {
  std::shared_ptr<VarSet> vs = std::make_shared<VarSet>();
  std::vector<std::pair<std::size_t, std::vector<std::pair<std::size_t, PolyQ>>>> cols;

  void declare(const std::string& name, VarKind kind = VarKind::free) { vs->add(name, kind); }
  PolyQ var(const std::string& name) {
    auto idx = vs->find(name);
    if (!idx) throw std::invalid_argument("undeclared variable " + name);
    return PolyQ::variable(vs, *idx);
  }
  PolyQ inv(const std::string& name) { return PolyQ::variable(vs, *vs->find(name), -1); }
  PolyQ constant(const Rational& c) { return PolyQ(vs, c); }

  // Block [[a, -(1+a^2)/c], [c, -a]] on (u, v).
  void laurent(std::size_t u, std::size_t v, const std::string& a, const std::string& c) {
    PolyQ pa = var(a), pc = var(c);
    PolyQ one = constant(1);
    cols.push_back({u, {{u, pa}, {v, pc}}});
    cols.push_back({v, {{u, -(one + pa * pa) * inv(c)}, {v, -pa}}});
  }
  // J u = s v, J v = -s u with a rational s.
  void rotate(std::size_t u, std::size_t v, const Rational& s) {
    cols.push_back({u, {{v, constant(s)}}});
    cols.push_back({v, {{u, constant(-s)}}});
  }

  PolyMatrix build(std::size_t n) const {
    PolyMatrix j(vs, n, n);
    for (const auto& [c, entries] : cols)
      for (const auto& [r, p] : entries) j(r, c) += PolyQ(vs) + p;
    return j;
  }
};

}  // namespace testsupport
