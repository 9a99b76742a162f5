#include "flagacs/invariants.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace flagacs {

namespace {

std::vector<const QMatrix*> all_gens(const IsotropyModel& im) {
  std::vector<const QMatrix*> g;
  for (const auto& m : im.m_gens) g.push_back(&m);
  for (const auto& k : im.ktheta_gens) g.push_back(&k);
  return g;
}

Rational small_random(std::mt19937_64& rng, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  return Rational(d(rng));
}

// Monic polynomial (low degree first, leading 1 omitted) annihilating v
// under s, from the Krylov sequence.
std::vector<Rational> krylov_poly(const QMatrix& s, const QVector& v) {
  std::vector<QVector> seq{v};
  for (;;) {
    QVector next = s * seq.back();
    QMatrix k = QMatrix::from_columns(seq, v.size());
    if (auto c = solve_linear(k, next)) {
      std::vector<Rational> p;
      for (const auto& x : *c) p.push_back(-x);
      return p;
    }
    seq.push_back(next);
  }
}

// Subspace of W (in W coordinates) on which s acts as lambda.
std::vector<QVector> eigen_kernel(const QMatrix& s, const Rational& lambda) {
  QMatrix t = s - lambda * QMatrix::identity(s.rows());
  return nullspace(t);
}

Subspace lift(const Subspace& w, const std::vector<QVector>& local) {
  std::vector<QVector> vs;
  for (const auto& c : local) {
    QVector v(w.ambient());
    for (std::size_t k = 0; k < c.size(); ++k)
      if (!c[k].is_zero()) v = add(v, scale(w.basis()[k], c[k]));
    vs.push_back(v);
  }
  return Subspace(w.ambient(), vs);
}

// Weights w with w_i g_ij = -w_j g_ji for all k_Theta generators.
std::vector<Rational> invariant_weights(const IsotropyModel& im) {
  const std::size_t n = im.dim();
  std::vector<std::optional<Rational>> w(n);
  std::vector<std::vector<std::pair<std::size_t, Rational>>> adj(n);  // w_j = r * w_i
  for (const auto& g : im.ktheta_gens)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || g(i, j).is_zero()) continue;
        if (g(j, i).is_zero()) throw std::logic_error("invariant_weights: generator is not skew for any diagonal form");
        adj[i].push_back({j, -g(i, j) / g(j, i)});
      }
  for (std::size_t s = 0; s < n; ++s) {
    if (w[s]) continue;
    w[s] = Rational(1);
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (const auto& [j, r] : adj[i]) {
        Rational v = r * *w[i];
        if (!w[j]) {
          w[j] = v;
          stack.push_back(j);
        } else if (*w[j] != v) {
          throw std::logic_error("invariant_weights: inconsistent weights");
        }
      }
    }
  }
  std::vector<Rational> out;
  for (auto& x : w) {
    if (x->sign() <= 0) throw std::logic_error("invariant_weights: weight not positive");
    out.push_back(*x);
  }
  return out;
}

Subspace orth_complement_in(const Subspace& w, const Subspace& u, const std::vector<Rational>& wt) {
  // {x in w : <x, u_k> = 0}, solved in w coordinates.
  QMatrix m(u.dim(), w.dim());
  for (std::size_t r = 0; r < u.dim(); ++r)
    for (std::size_t c = 0; c < w.dim(); ++c) {
      Rational s(0);
      for (std::size_t i = 0; i < w.ambient(); ++i)
        if (!u.basis()[r][i].is_zero() && !w.basis()[c][i].is_zero()) s += wt[i] * u.basis()[r][i] * w.basis()[c][i];
      m(r, c) = s;
    }
  return lift(w, nullspace(m));
}

QMatrix projection_coords(const Subspace& w, const std::vector<Rational>& wt) {
  const std::size_t d = w.dim(), n = w.ambient();
  QMatrix bt_d(d, n);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < n; ++i) bt_d(k, i) = wt[i] * w.basis()[k][i];
  QMatrix gram = bt_d * w.matrix();
  auto gi = inverse(gram);
  if (!gi) throw std::logic_error("projection_coords: degenerate form");
  return *gi * bt_d;
}

Subspace cyclic_closure(const std::vector<const QMatrix*>& gens, const QVector& v, std::size_t n) {
  Subspace s(n, {v});
  std::vector<QVector> frontier{v};
  while (!frontier.empty()) {
    std::vector<QVector> next;
    for (const auto& f : frontier)
      for (const auto* g : gens) {
        QVector u = *g * f;
        if (!s.contains(u)) {
          s = s.sum(Subspace(n, {u}));
          next.push_back(u);
        }
      }
    frontier = std::move(next);
  }
  return s;
}

QMatrix assemble(const Decomposition& dec, const std::vector<std::tuple<std::size_t, std::size_t, QMatrix>>& pieces,
                 std::size_t n) {
  QMatrix j(n, n);
  for (const auto& [from, to, m] : pieces) j += dec.components[to].space.matrix() * m * dec.coords[from];
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------

Commutant commutant(const IsotropyModel& im) {
  const std::size_t n = im.dim();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> unk;
  std::vector<std::pair<std::size_t, std::size_t>> where;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (im.basis[i].m_class == im.basis[j].m_class) {
        unk[{i, j}] = where.size();
        where.push_back({i, j});
      }
  SparseEliminator el(where.size());
  for (const auto& k : im.ktheta_gens) {
    std::vector<std::vector<std::size_t>> nz_col(n), nz_row(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (!k(a, b).is_zero()) {
          nz_col[b].push_back(a);
          nz_row[a].push_back(b);
        }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // (T K - K T)_{ij}
        SparseEliminator::Row row;
        for (std::size_t l : nz_col[j]) {
          auto it = unk.find({i, l});
          if (it != unk.end()) row[it->second] += k(l, j);
        }
        for (std::size_t l : nz_row[i]) {
          auto it = unk.find({l, j});
          if (it != unk.end()) row[it->second] -= k(i, l);
        }
        for (auto it = row.begin(); it != row.end();) it = it->second.is_zero() ? row.erase(it) : std::next(it);
        if (!row.empty()) el.add_row(std::move(row));
      }
  }
  Commutant c;
  for (const auto& v : el.nullspace()) {
    QMatrix t(n, n);
    for (std::size_t u = 0; u < v.size(); ++u) t(where[u].first, where[u].second) = v[u];
    c.basis.push_back(std::move(t));
  }
  return c;
}

Commutant commutant_dense(const IsotropyModel& im) {
  const std::size_t n = im.dim();
  auto gens = all_gens(im);
  QMatrix sys(gens.size() * n * n, n * n);
  std::size_t r = 0;
  for (const auto* g : gens)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++r)
        for (std::size_t l = 0; l < n; ++l) {
          sys(r, i * n + l) += (*g)(l, j);
          sys(r, l * n + j) -= (*g)(i, l);
        }
  Commutant c;
  for (const auto& v : nullspace(sys)) {
    QMatrix t(n, n);
    for (std::size_t u = 0; u < v.size(); ++u) t(u / n, u % n) = v[u];
    c.basis.push_back(std::move(t));
  }
  return c;
}

QMatrix restrict_to(const QMatrix& g, const Subspace& w) {
  QMatrix m(w.dim(), w.dim());
  for (std::size_t k = 0; k < w.dim(); ++k) {
    QVector img = g * w.basis()[k];
    if (!w.contains(img)) throw std::invalid_argument("restrict_to: subspace is not invariant");
    QVector c = w.coordinates(img);
    for (std::size_t r = 0; r < w.dim(); ++r) m(r, k) = c[r];
  }
  return m;
}

std::vector<QMatrix> intertwiners(const IsotropyModel& im, const Subspace& w1, const Subspace& w2) {
  const std::size_t d1 = w1.dim(), d2 = w2.dim();
  SparseEliminator el(d1 * d2);
  for (const auto* g : all_gens(im)) {
    QMatrix a = restrict_to(*g, w1), b = restrict_to(*g, w2);
    // X a - b X = 0, X is d2 x d1 with unknown (r,c) at r*d1+c.
    for (std::size_t r = 0; r < d2; ++r)
      for (std::size_t c = 0; c < d1; ++c) {
        SparseEliminator::Row row;
        for (std::size_t l = 0; l < d1; ++l)
          if (!a(l, c).is_zero()) row[r * d1 + l] += a(l, c);
        for (std::size_t l = 0; l < d2; ++l)
          if (!b(r, l).is_zero()) row[l * d1 + c] -= b(r, l);
        for (auto it = row.begin(); it != row.end();) it = it->second.is_zero() ? row.erase(it) : std::next(it);
        if (!row.empty()) el.add_row(std::move(row));
      }
  }
  std::vector<QMatrix> out;
  for (const auto& v : el.nullspace()) {
    QMatrix x(d2, d1);
    for (std::size_t u = 0; u < v.size(); ++u) x(u / d1, u % d1) = v[u];
    out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------------------

Subspace Decomposition::isotypic(std::size_t cls) const {
  Subspace s(components.empty() ? 0 : components[0].space.ambient(), {});
  for (std::size_t c : classes.at(cls)) s = s.sum(components[c].space);
  return s;
}

QMatrix Decomposition::compress(const QMatrix& t, std::size_t from, std::size_t to) const {
  return coords[to] * t * components[from].space.matrix();
}

std::optional<QMatrix> Decomposition::iso(std::size_t from, std::size_t to) const {
  for (const auto& t : comm.basis) {
    QMatrix s = compress(t, from, to);
    if (s.is_zero()) continue;
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j)
        if (!s(i, j).is_zero()) return s * s(i, j).inverse();
  }
  return std::nullopt;
}

std::optional<QMatrix> Decomposition::complex_unit(std::size_t comp) const {
  const std::size_t d = components[comp].space.dim();
  std::vector<QMatrix> pure;
  for (const auto& t : comm.basis) {
    QMatrix s = compress(t, comp, comp);
    Rational tr(0);
    for (std::size_t i = 0; i < d; ++i) tr += s(i, i);
    s -= (tr / Rational(static_cast<long>(d))) * QMatrix::identity(d);
    if (!s.is_zero()) pure.push_back(s);
  }
  auto try_one = [&](const QMatrix& k) -> std::optional<QMatrix> {
    QMatrix sq = k * k;
    Rational c = -sq(0, 0);
    if (c.sign() <= 0 || sq != Rational(-1) * c * QMatrix::identity(d) || !c.is_square()) return std::nullopt;
    return k * c.sqrt_exact().inverse();
  };
  for (const auto& k : pure)
    if (auto r = try_one(k)) return r;
  // Small integer combinations of the first few pure parts.
  const std::size_t m = std::min<std::size_t>(pure.size(), 4);
  std::vector<int> coef(m, -2);
  for (;;) {
    std::size_t i = 0;
    while (i < m && coef[i] == 2) coef[i++] = -2;
    if (i == m) break;
    ++coef[i];
    QMatrix k(d, d);
    for (std::size_t a = 0; a < m; ++a)
      if (coef[a] != 0) k += Rational(coef[a]) * pure[a];
    if (k.is_zero()) continue;
    if (auto r = try_one(k)) return r;
  }
  return std::nullopt;
}

Decomposition decompose(const IsotropyModel& im, std::uint64_t seed) {
  const std::size_t n = im.dim();
  Decomposition dec;
  dec.comm = commutant(im);
  dec.inner_weights = invariant_weights(im);
  const auto& wt = dec.inner_weights;
  std::mt19937_64 rng(seed);

  std::vector<Subspace> work;
  if (n > 0) work.push_back(Subspace::full(n));
  std::vector<Subspace> done;
  while (!work.empty()) {
    Subspace w = work.back();
    work.pop_back();
    if (w.dim() == 0) continue;
    if (w.dim() == 1) {
      done.push_back(w);
      continue;
    }
    QMatrix pc = projection_coords(w, wt);
    QMatrix bm = w.matrix();
    std::vector<QMatrix> cands;
    for (const auto& t : dec.comm.basis) cands.push_back(pc * t * bm);
    const std::size_t nb = cands.size();
    for (std::size_t a = 0; a < nb && a < 6; ++a)
      for (std::size_t b = a + 1; b < nb && b < 6; ++b) cands.push_back(cands[a] + cands[b]);
    for (int r = 0; r < 6 && nb > 1; ++r) {
      QMatrix s(w.dim(), w.dim());
      for (std::size_t k = 0; k < nb; ++k) s += small_random(rng) * cands[k];
      cands.push_back(s);
    }
    std::optional<Subspace> split;
    for (const auto& s : cands) {
      for (const QMatrix& op : {s, s * s}) {
        QVector v(w.dim());
        for (auto& x : v) x = small_random(rng);
        if (is_zero(v)) v[0] = 1;
        auto kp = krylov_poly(op, v);
        kp.push_back(Rational(1));
        for (const auto& lam : rational_roots(kp)) {
          auto ker = eigen_kernel(op, lam);
          if (!ker.empty() && ker.size() < w.dim()) {
            split = lift(w, ker);
            break;
          }
        }
        if (split) break;
      }
      if (split) break;
    }
    if (!split) {
      done.push_back(w);
      continue;
    }
    work.push_back(orth_complement_in(w, *split, wt));
    work.push_back(*split);
  }
  // Deterministic order: by the smallest pivot of each component.
  auto lead = [](const Subspace& s) {
    std::size_t best = s.ambient();
    for (const auto& v : s.basis())
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) {
          best = std::min(best, i);
          break;
        }
    return best;
  };
  std::sort(done.begin(), done.end(), [&](const Subspace& a, const Subspace& b) { return lead(a) < lead(b); });

  auto gens = all_gens(im);
  for (auto& s : done) {
    IrredComponent c;
    c.space = s;
    dec.coords.push_back(projection_coords(s, wt));
    dec.components.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < dec.components.size(); ++i) {
    auto& c = dec.components[i];
    const std::size_t d = c.space.dim();
    std::vector<QVector> flat;
    for (const auto& t : dec.comm.basis) {
      QMatrix s = dec.compress(t, i, i);
      QVector f;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) f.push_back(s(a, b));
      flat.push_back(f);
    }
    c.endo_dim = flat.empty() ? 0 : rank(QMatrix::from_columns(flat, d * d));
    c.cyclic_certified = true;
    for (int r = 0; r < 3; ++r) {
      QVector v(n);
      for (std::size_t k = 0; k < d; ++k) v = add(v, scale(c.space.basis()[k], small_random(rng)));
      if (is_zero(v)) v = c.space.basis()[0];
      if (!(cyclic_closure(gens, v, n) == c.space)) c.cyclic_certified = false;
    }
  }
  std::vector<long> cls(dec.components.size(), -1);
  for (std::size_t i = 0; i < dec.components.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = static_cast<long>(dec.classes.size());
    dec.classes.push_back({i});
    for (std::size_t j = i + 1; j < dec.components.size(); ++j)
      if (cls[j] < 0 && dec.components[j].space.dim() == dec.components[i].space.dim() && dec.iso(i, j)) {
        cls[j] = cls[i];
        dec.classes.back().push_back(j);
      }
  }
  for (std::size_t i = 0; i < dec.components.size(); ++i)
    dec.components[i].equivalence_class = static_cast<std::size_t>(cls[i]);
  return dec;
}

// ---------------------------------------------------------------------------

QMatrix ACSWitness::square_residual() const { return j * j + QMatrix::identity(j.rows()); }

std::vector<QMatrix> ACSWitness::commutation_residuals(const IsotropyModel& im) const {
  std::vector<QMatrix> out;
  for (const auto* g : all_gens(im)) out.push_back(QMatrix::commutator(j, *g));
  return out;
}

bool ACSWitness::verify(const IsotropyModel& im) const {
  if (j.rows() != im.dim() || j.cols() != im.dim()) return false;
  if (!square_residual().is_zero()) return false;
  for (const auto& r : commutation_residuals(im))
    if (!r.is_zero()) return false;
  return true;
}

bool Obstruction::verify(const IsotropyModel& im, const Commutant& c) const {
  if (subspace.ambient() != im.dim() || subspace.dim() % 2 == 0 || subspace.dim() != dim) return false;
  for (const auto& t : c.basis)
    for (const auto& v : subspace.basis())
      if (!subspace.contains(t * v)) return false;
  return true;
}

std::string to_string(ExistenceResult::Status s) {
  switch (s) {
    case ExistenceResult::Status::witness: return "witness";
    case ExistenceResult::Status::obstruction: return "obstruction";
    case ExistenceResult::Status::inconclusive: return "inconclusive";
  }
  return "?";
}

ExistenceResult acs_exists(const IsotropyModel& im, const Decomposition& dec) {
  const std::size_t n = im.dim();
  ExistenceResult res;
  if (n == 0) {
    res.status = ExistenceResult::Status::witness;
    res.witness = ACSWitness{QMatrix(0, 0), true, "empty module"};
    return res;
  }
  const RootSystem& rs = im.sc->roots();
  std::vector<std::pair<Subspace, std::vector<std::string>>> lattice;
  for (std::size_t c = 0; c < im.classes.classes.size(); ++c) {
    std::vector<QVector> vs;
    for (std::size_t i : im.class_members(c)) {
      QVector v(n);
      v[i] = 1;
      vs.push_back(v);
    }
    std::string label = "V[" + rs.format(im.classes.classes[c].roots.front()) + "]";
    Subspace s(n, vs);
    if (s.dim() % 2 == 1) {
      res.status = ExistenceResult::Status::obstruction;
      res.obstruction = Obstruction{"odd_m_class", s, s.dim(), {label + " is an M-character class of odd size"}};
      return res;
    }
    lattice.push_back({s, {label}});
  }
  for (std::size_t k = 0; k < dec.classes.size(); ++k)
    lattice.push_back({dec.isotypic(k), {"isotypic[" + std::to_string(k) + "]"}});

  auto known = [&](const Subspace& s) {
    return std::any_of(lattice.begin(), lattice.end(), [&](const auto& e) { return e.first == s; });
  };
  auto found_odd = [&](const std::pair<Subspace, std::vector<std::string>>& e) {
    if (e.first.dim() % 2 == 0) return false;
    res.status = ExistenceResult::Status::obstruction;
    res.obstruction = Obstruction{"odd_forced_subspace", e.first, e.first.dim(), e.second};
    return true;
  };
  for (const auto& e : lattice)
    if (found_odd(e)) return res;
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t sz = lattice.size();
    for (std::size_t a = 0; a < sz; ++a)
      for (std::size_t b = a + 1; b < sz; ++b) {
        Subspace s = lattice[a].first.intersect(lattice[b].first);
        if (s.dim() == 0 || known(s)) continue;
        std::vector<std::string> d = lattice[a].second;
        d.insert(d.end(), lattice[b].second.begin(), lattice[b].second.end());
        d.push_back("intersection of the two above");
        lattice.push_back({s, d});
        if (found_odd(lattice.back())) return res;
        grew = true;
      }
  }
  // Orbits of single vectors under the commutant algebra.
  std::vector<std::pair<QVector, std::string>> seeds;
  for (std::size_t i = 0; i < n; ++i) {
    QVector v(n);
    v[i] = 1;
    seeds.push_back({v, im.basis[i].label});
  }
  for (std::size_t c = 0; c < dec.components.size(); ++c)
    for (std::size_t k = 0; k < dec.components[c].space.dim(); ++k)
      seeds.push_back({dec.components[c].space.basis()[k],
                       "basis vector " + std::to_string(k) + " of component " + std::to_string(c)});
  for (const auto& [v, what] : seeds) {
    std::vector<QVector> img{v};
    for (const auto& t : dec.comm.basis) img.push_back(t * v);
    Subspace s(n, img);
    if (found_odd({s, {"commutant orbit of " + what}})) return res;
  }

  // Witness: pair equivalent copies, then complex units on leftovers.
  std::vector<std::tuple<std::size_t, std::size_t, QMatrix>> pieces;
  std::vector<std::string> how;
  for (std::size_t k = 0; k < dec.classes.size(); ++k) {
    const auto& comps = dec.classes[k];
    std::size_t i = 0;
    for (; i + 1 < comps.size(); i += 2) {
      auto t = dec.iso(comps[i], comps[i + 1]);
      auto ti = t ? inverse(*t) : std::nullopt;
      if (!ti) throw std::logic_error("acs_exists: equivalent components without an isomorphism");
      pieces.push_back({comps[i], comps[i + 1], *t});
      pieces.push_back({comps[i + 1], comps[i], Rational(-1) * *ti});
    }
    if (i < comps.size()) {
      auto kk = dec.complex_unit(comps[i]);
      if (!kk) {
        res.status = ExistenceResult::Status::inconclusive;
        res.note = "no rational complex unit on component " + std::to_string(comps[i]);
        return res;
      }
      pieces.push_back({comps[i], comps[i], *kk});
      how.push_back("complex unit on component " + std::to_string(comps[i]));
    }
  }
  ACSWitness w;
  w.j = assemble(dec, pieces, n);
  w.construction = how.empty() ? "paired equivalent components" : "paired equivalent components; " + how.front();
  if (!w.verify(im)) throw std::logic_error("acs_exists: constructed witness fails verification");
  res.status = ExistenceResult::Status::witness;
  res.witness = std::move(w);
  return res;
}

ExistenceResult acs_exists(const IsotropyModel& im) { return acs_exists(im, decompose(im)); }

std::size_t moduli_dimension(const IsotropyModel& im) { return commutant(im).dim(); }

}  // namespace flagacs
