#include "flagacs/nijenhuis.hpp"

#include <algorithm>
#include <stdexcept>

namespace flagacs {

namespace {

std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  // Pairs (0,1),(0,2),...,(0,n-1),(1,2),...
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

template <class T>
using Sparse = std::map<std::size_t, T>;

template <class T>
Sparse<T> bracket_sparse(const IsotropyModel& im, const Sparse<T>& u, const Sparse<T>& v) {
  Sparse<T> out;
  for (const auto& [a, x] : u)
    for (const auto& [b, y] : v) {
      if (a == b) continue;
      const auto& br = im.bracket(a, b);
      if (br.empty()) continue;
      T xy = x * y;
      for (const auto& [k, c] : br) {
        auto it = out.find(k);
        if (it == out.end()) out.emplace(k, xy * c);
        else it->second += xy * c;
      }
    }
  return out;
}

template <class T>
void add_into(Sparse<T>& acc, const Sparse<T>& v, const Rational& s) {
  for (const auto& [k, c] : v) {
    auto it = acc.find(k);
    if (it == acc.end()) acc.emplace(k, c * s);
    else it->second += c * s;
  }
}

template <class T>
Sparse<T> apply_cols(const std::vector<Sparse<T>>& cols, const Sparse<T>& v) {
  Sparse<T> out;
  for (const auto& [k, c] : v)
    for (const auto& [r, x] : cols[k]) {
      auto it = out.find(r);
      if (it == out.end()) out.emplace(r, x * c);
      else it->second += x * c;
    }
  return out;
}

// Shared evaluation of N over any coefficient ring.
template <class T>
std::vector<Sparse<T>> nijenhuis_generic(const IsotropyModel& im, const std::vector<Sparse<T>>& cols, const T& one) {
  const std::size_t n = im.dim();
  std::vector<Sparse<T>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Sparse<T> ei{{i, one}}, ej{{j, one}};
      Sparse<T> t = bracket_sparse(im, cols[i], cols[j]);
      Sparse<T> mixed = bracket_sparse(im, cols[i], ej);
      add_into(mixed, bracket_sparse(im, ei, cols[j]), Rational(1));
      add_into(t, apply_cols(cols, mixed), Rational(-1));
      for (const auto& [k, c] : im.bracket(i, j)) add_into(t, Sparse<T>{{k, one}}, -c);
      for (auto it = t.begin(); it != t.end();) it = it->second.is_zero() ? t.erase(it) : std::next(it);
      out.push_back(std::move(t));
    }
  return out;
}

}  // namespace

const QVector& NijenhuisTable::at(std::size_t i, std::size_t j) const {
  if (i >= j || j >= n) throw std::out_of_range("NijenhuisTable::at: need i < j < n");
  return values[pair_index(n, i, j)];
}

bool NijenhuisTable::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const QVector& v) { return flagacs::is_zero(v); });
}

std::size_t NijenhuisTable::nonzero_pairs() const {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [](const QVector& v) { return !flagacs::is_zero(v); }));
}

NijenhuisTable nijenhuis_table(const IsotropyModel& im, const QMatrix& j) {
  const std::size_t n = im.dim();
  if (j.rows() != n || j.cols() != n) throw std::invalid_argument("nijenhuis_table: J has the wrong size");
  std::vector<Sparse<Rational>> cols(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r)
      if (!j(r, c).is_zero()) cols[c][r] = j(r, c);
  NijenhuisTable t;
  t.n = n;
  for (const auto& s : nijenhuis_generic(im, cols, Rational(1))) {
    QVector v(n);
    for (const auto& [k, c] : s) v[k] = c;
    t.values.push_back(std::move(v));
  }
  return t;
}

PolyQ SymbolicNijenhuis::coefficient(std::size_t i, std::size_t j, std::size_t k) const {
  auto it = entries.find({i, j, k});
  return it == entries.end() ? PolyQ(vars) : it->second;
}

std::vector<PolyQ> SymbolicNijenhuis::equations() const {
  std::vector<PolyQ> out;
  for (const auto& [key, p] : entries) {
    PolyQ q = p.primitive();
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  }
  return out;
}

SymbolicNijenhuis nijenhuis_symbolic(const IsotropyModel& im, const PolyMatrix& j) {
  const std::size_t n = im.dim();
  if (j.rows() != n || j.cols() != n) throw std::invalid_argument("nijenhuis_symbolic: J has the wrong size");
  std::vector<Sparse<PolyQ>> cols(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r)
      if (!j(r, c).is_zero()) cols[c][r] = j(r, c);
  SymbolicNijenhuis s;
  s.vars = j.vars();
  s.n = n;
  auto vals = nijenhuis_generic(im, cols, PolyQ(j.vars(), Rational(1)));
  std::size_t idx = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b, ++idx)
      for (const auto& [k, p] : vals[idx]) s.entries.emplace(std::make_tuple(a, b, k), p);
  return s;
}

std::string to_string(IntegrabilityStatus s) {
  switch (s) {
    case IntegrabilityStatus::integrable_witness: return "integrable_witness";
    case IntegrabilityStatus::not_integrable_certified: return "not_integrable_certified";
    case IntegrabilityStatus::not_integrable_sampled: return "not_integrable_sampled";
    case IntegrabilityStatus::family_infeasible: return "family_infeasible";
    case IntegrabilityStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

IntegrabilityVerdict integrability_verdict(const IsotropyModel& im, const VerdictOptions& opts) {
  return integrability_verdict(im, decompose(im, opts.seed), opts);
}

IntegrabilityVerdict integrability_verdict(const IsotropyModel& im, const Decomposition& dec, const VerdictOptions& opts) {
  IntegrabilityVerdict v;
  v.existence = acs_exists(im, dec);
  if (v.existence.status == ExistenceResult::Status::obstruction) {
    v.status = IntegrabilityStatus::family_infeasible;
    v.note = "no invariant almost complex structure";
    return v;
  }
  if (im.dim() == 0) {
    v.status = IntegrabilityStatus::integrable_witness;
    v.j = QMatrix(0, 0);
    v.note = "zero-dimensional module";
    return v;
  }
  if (v.existence.status == ExistenceResult::Status::inconclusive) {
    v.status = IntegrabilityStatus::inconclusive;
    v.note = v.existence.note;
    return v;
  }
  v.family = param_family(im, dec);
  const ParamACS& fam = *v.family;
  SymbolicNijenhuis sym = nijenhuis_symbolic(im, fam.j);

  auto integrable_at = [&](const std::vector<Rational>& x) {
    if (!fam.admissible(x)) return false;
    QMatrix j = fam.j.eval(x);
    ACSWitness w{j, false, {}};
    return w.verify(im) && nijenhuis_table(im, j).is_zero();
  };

  EliminationProblem prob;
  prob.vars = fam.vars;
  prob.equations = fam.constraints;
  for (auto& e : sym.equations()) prob.equations.push_back(std::move(e));
  prob.nonvanishing = fam.nonvanishing;
  prob.not_all_zero = fam.not_all_zero;
  EliminationOptions eo;
  eo.max_nodes = opts.max_nodes;
  eo.accept = integrable_at;
  EliminationResult er = eliminate(prob, eo);
  v.nodes = er.nodes;
  v.tree = std::move(er.tree);

  if (er.status == EliminationResult::Status::solution) {
    v.status = IntegrabilityStatus::integrable_witness;
    v.point = er.point;
    v.j = fam.j.eval(*er.point);
    return v;
  }
  if (er.status == EliminationResult::Status::infeasible) {
    v.status = IntegrabilityStatus::not_integrable_certified;
    return v;
  }
  std::mt19937_64 rng(opts.seed);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    auto x = fam.sample(rng);
    ++v.samples_tested;
    if (integrable_at(x)) {
      v.status = IntegrabilityStatus::integrable_witness;
      v.point = x;
      v.j = fam.j.eval(x);
      v.note = "found by sampling";
      return v;
    }
  }
  v.status = IntegrabilityStatus::not_integrable_sampled;
  v.note = "case analysis unresolved; every sampled structure has nonzero torsion";
  return v;
}

}  // namespace flagacs
