#include "flagacs/chevalley.hpp"

#include <random>
#include <stdexcept>

namespace flagacs {

bool AbstractElement::is_zero() const {
  if (!flagacs::is_zero(h)) return false;
  for (const auto& [k, c] : x)
    if (!c.is_zero()) return false;
  return true;
}

AbstractElement& AbstractElement::operator+=(const AbstractElement& o) {
  if (h.size() < o.h.size()) h.resize(o.h.size());
  for (std::size_t i = 0; i < o.h.size(); ++i) h[i] += o.h[i];
  for (const auto& [k, c] : o.x) {
    Rational& slot = x[k];
    slot += c;
    if (slot.is_zero()) x.erase(k);
  }
  return *this;
}

AbstractElement& AbstractElement::operator-=(const AbstractElement& o) {
  AbstractElement n = o;
  n *= Rational(-1);
  return *this += n;
}

AbstractElement& AbstractElement::operator*=(const Rational& s) {
  for (auto& c : h) c *= s;
  if (s.is_zero()) x.clear();
  for (auto& [k, c] : x) c *= s;
  return *this;
}

bool operator==(const AbstractElement& a, const AbstractElement& b) { return (a - b).is_zero(); }

StructureConstants::StructureConstants(RootSystem rs, ChevalleyOptions opts)
    : rs_(std::move(rs)), opts_(opts) {
  const std::size_t nr = num_roots();
  const std::size_t np = rs_.positive().size();
  const auto& roots = rs_.roots();

  sum_.assign(nr * nr, -1);
  for (std::size_t a = 0; a < nr; ++a)
    for (std::size_t b = 0; b < nr; ++b)
      if (auto s = rs_.index(add(roots[a], roots[b]))) sum_[a * nr + b] = static_cast<int>(*s);

  coroots_.resize(nr);
  for (std::size_t a = 0; a < nr; ++a) {
    const auto& c = rs_.simple_coeffs(roots[a]);
    Rational norm = rs_.inner(roots[a], roots[a]);
    QVector v(rank());
    for (std::size_t i = 0; i < rank(); ++i)
      v[i] = Rational(c[i]) * rs_.inner(rs_.simple()[i], rs_.simple()[i]) / norm;
    coroots_[a] = v;
  }
  cartan_.resize(nr * rank());
  for (std::size_t a = 0; a < nr; ++a)
    for (std::size_t i = 0; i < rank(); ++i) cartan_[a * rank() + i] = rs_.pairing(roots[a], rs_.simple()[i]);

  extraspecial_of_.assign(np, -1);
  for (std::size_t xi = 0; xi < np; ++xi) {
    if (rs_.height(roots[xi]) == 1) continue;
    for (std::size_t a = 0; a < np; ++a) {
      int s = -1;
      Root diff = add(roots[xi], negate(roots[a]));
      if (auto d = rs_.index(diff); d && *d < np) s = static_cast<int>(*d);
      if (s < 0) continue;
      extraspecial_of_[xi] = static_cast<int>(extraspecial_.size());
      extraspecial_.emplace_back(a, static_cast<std::size_t>(s));
      break;
    }
  }
  if (opts_.flip_extraspecial && *opts_.flip_extraspecial >= extraspecial_.size())
    throw std::invalid_argument("flip_extraspecial out of range");

  table_.assign(nr * nr, 0);
  known_.assign(nr * nr, 0);
  for (std::size_t a = 0; a < nr; ++a)
    for (std::size_t b = 0; b < nr; ++b) table_[a * nr + b] = compute(a, b);

  for (std::size_t a = 0; a < nr; ++a)
    for (std::size_t b = 0; b < nr; ++b) {
      if (sum_[a * nr + b] < 0) continue;
      int p = rs_.chain_down(roots[a], roots[b]);
      if (std::abs(table_[a * nr + b]) != p + 1)
        throw std::logic_error("structure constants: |N| != p+1 for " + rs_.format(roots[a]) + ", " +
                               rs_.format(roots[b]));
    }
}

std::optional<std::size_t> StructureConstants::sum_index(std::size_t a, std::size_t b) const {
  int s = sum_[a * num_roots() + b];
  if (s < 0) return std::nullopt;
  return static_cast<std::size_t>(s);
}

int StructureConstants::n(const Root& a, const Root& b) const {
  auto ia = rs_.index(a), ib = rs_.index(b);
  if (!ia || !ib) throw std::invalid_argument("StructureConstants::n: not a root");
  return n(*ia, *ib);
}

int StructureConstants::compute(std::size_t a, std::size_t b) {
  const std::size_t nr = num_roots();
  const std::size_t np = nr / 2;
  std::size_t key = a * nr + b;
  if (known_[key]) return table_[key];
  int s = sum_[key];
  int result = 0;
  auto neg = [np](std::size_t i) { return i < np ? i + np : i - np; };
  if (s >= 0) {
    bool pa = a < np, pb = b < np;
    if (pa && pb) {
      result = a < b ? special(a, b) : -special(b, a);
    } else if (!pa && !pb) {
      result = -compute(neg(a), neg(b));
    } else if (!pa) {
      result = -compute(b, a);
    } else {
      // a positive, b negative; c = -(a+b) completes a zero-sum triple.
      const auto& roots = rs_.roots();
      std::size_t c = neg(static_cast<std::size_t>(s));
      Rational cc = rs_.inner(roots[c], roots[c]);
      Rational v;
      if (c < np) v = cc / rs_.inner(roots[b], roots[b]) * Rational(compute(c, a));
      else v = cc / rs_.inner(roots[a], roots[a]) * Rational(compute(b, c));
      if (!v.is_integer()) throw std::logic_error("structure constants: non-integral value");
      result = static_cast<int>(v.numerator().get_si());
    }
  }
  table_[key] = result;
  known_[key] = 1;
  return result;
}

int StructureConstants::special(std::size_t a, std::size_t b) {
  const auto& roots = rs_.roots();
  const std::size_t nr = num_roots();
  const std::size_t np = nr / 2;
  std::size_t xi = static_cast<std::size_t>(sum_[a * nr + b]);
  int es = extraspecial_of_[xi];
  auto [g, d] = extraspecial_[static_cast<std::size_t>(es)];
  if (g == a && d == b) {
    int p = rs_.chain_down(roots[a], roots[b]);
    bool flip = opts_.flip_extraspecial && *opts_.flip_extraspecial == static_cast<std::size_t>(es);
    return flip ? -(p + 1) : p + 1;
  }
  auto neg = [np](std::size_t i) { return i < np ? i + np : i - np; };
  int ngd = compute(g, d);
  Rational bracket_sum;
  if (sum_[b * nr + neg(g)] >= 0) {
    Root bg = add(roots[b], negate(roots[g]));
    bracket_sum += Rational(compute(b, neg(g)) * compute(a, neg(d))) / rs_.inner(bg, bg);
  }
  if (sum_[a * nr + neg(g)] >= 0) {
    Root ag = add(roots[a], negate(roots[g]));
    bracket_sum += Rational(compute(neg(g), a) * compute(b, neg(d))) / rs_.inner(ag, ag);
  }
  Rational v = rs_.inner(roots[xi], roots[xi]) / Rational(ngd) * bracket_sum;
  if (!v.is_integer()) throw std::logic_error("structure constants: non-integral special value");
  return static_cast<int>(v.numerator().get_si());
}

std::string StructureConstants::convention_id() const {
  std::string id = "chevalley-extraspecial-height-order-v1";
  if (opts_.flip_extraspecial) id += "-flip" + std::to_string(*opts_.flip_extraspecial);
  return id;
}

AbstractElement StructureConstants::zero() const {
  AbstractElement e;
  e.h.assign(rank(), Rational(0));
  return e;
}

AbstractElement StructureConstants::x(std::size_t root_index, const Rational& c) const {
  AbstractElement e = zero();
  if (!c.is_zero()) e.x[root_index] = c;
  return e;
}

AbstractElement StructureConstants::x(const Root& r, const Rational& c) const {
  auto i = rs_.index(r);
  if (!i) throw std::invalid_argument("StructureConstants::x: not a root");
  return x(*i, c);
}

AbstractElement StructureConstants::h(std::size_t i) const {
  AbstractElement e = zero();
  e.h.at(i) = 1;
  return e;
}

AbstractElement StructureConstants::basis(std::size_t k) const {
  return k < rank() ? h(k) : x(k - rank());
}

AbstractElement StructureConstants::compact(const Root& positive_root) const {
  return x(positive_root) - x(negate(positive_root));
}

AbstractElement StructureConstants::bracket(const AbstractElement& a, const AbstractElement& b) const {
  AbstractElement out = zero();
  const std::size_t nr = num_roots();
  const std::size_t np = nr / 2;
  // [h, X_beta] terms.
  for (const auto& [rb, cb] : b.x) {
    Rational s;
    for (std::size_t i = 0; i < a.h.size(); ++i)
      if (!a.h[i].is_zero()) s += a.h[i] * Rational(cartan(rb, i));
    if (!s.is_zero()) out += x(rb, s * cb);
  }
  for (const auto& [ra, ca] : a.x) {
    Rational s;
    for (std::size_t i = 0; i < b.h.size(); ++i)
      if (!b.h[i].is_zero()) s += b.h[i] * Rational(cartan(ra, i));
    if (!s.is_zero()) out -= x(ra, s * ca);
  }
  for (const auto& [ra, ca] : a.x)
    for (const auto& [rb, cb] : b.x) {
      std::size_t opp = ra < np ? ra + np : ra - np;
      if (rb == opp) {
        AbstractElement hv = zero();
        hv.h = coroot(ra);
        hv *= ca * cb;
        out += hv;
        continue;
      }
      int nab = n(ra, rb);
      if (nab != 0) out += x(static_cast<std::size_t>(sum_[ra * nr + rb]), ca * cb * Rational(nab));
    }
  return out;
}

QVector StructureConstants::coords(const AbstractElement& e) const {
  QVector v(dim());
  for (std::size_t i = 0; i < e.h.size(); ++i) v[i] = e.h[i];
  for (const auto& [k, c] : e.x) v[rank() + k] = c;
  return v;
}

AbstractElement StructureConstants::from_coords(const QVector& v) const {
  AbstractElement e = zero();
  for (std::size_t i = 0; i < rank(); ++i) e.h[i] = v[i];
  for (std::size_t k = 0; k < num_roots(); ++k)
    if (!v[rank() + k].is_zero()) e.x[k] = v[rank() + k];
  return e;
}

StructureConstants generate_constants(const RootSystem& rs, ChevalleyOptions opts) {
  return StructureConstants(rs, opts);
}

AbstractElement bracket_abstract(const StructureConstants& sc, const AbstractElement& x,
                                 const AbstractElement& y) {
  return sc.bracket(x, y);
}

std::size_t jacobi_violations(const StructureConstants& sc, std::size_t sample_triples, std::uint64_t seed) {
  const std::size_t n = sc.dim();
  std::vector<AbstractElement> basis;
  for (std::size_t k = 0; k < n; ++k) basis.push_back(sc.basis(k));
  auto jac = [&](std::size_t i, std::size_t j, std::size_t k) {
    const auto &x = basis[i], &y = basis[j], &z = basis[k];
    AbstractElement s = sc.bracket(sc.bracket(x, y), z);
    s += sc.bracket(sc.bracket(y, z), x);
    s += sc.bracket(sc.bracket(z, x), y);
    return s.is_zero();
  };
  std::size_t bad = 0;
  if (sample_triples == 0) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          if (!jac(i, j, k)) ++bad;
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t t = 0; t < sample_triples; ++t)
      if (!jac(pick(rng), pick(rng), pick(rng))) ++bad;
  }
  return bad;
}

}  // namespace flagacs
