#include "flagacs/elimination.hpp"

#include <algorithm>
#include <stdexcept>

namespace flagacs {

std::size_t CaseNode::leaves() const {
  if (children.empty()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaves();
  return n;
}

std::string to_string(EliminationResult::Status s) {
  switch (s) {
    case EliminationResult::Status::solution: return "solution";
    case EliminationResult::Status::infeasible: return "infeasible";
    case EliminationResult::Status::unresolved: return "unresolved";
  }
  return "?";
}

namespace {

struct State {
  std::vector<PolyQ> eqs;
  std::vector<PolyQ> nonvan;
  std::vector<std::vector<PolyQ>> naz;
  std::vector<VarKind> kind;
  std::vector<std::pair<std::size_t, PolyQ>> subs;
};

enum class Outcome { solution, infeasible, unresolved };

class Engine {
 public:
  Engine(const EliminationProblem& p, const EliminationOptions& o) : prob_(p), opts_(o) {}

  Outcome run(State s, CaseNode& node) {
    if (++nodes_ > opts_.max_nodes) {
      node.outcome = "unresolved";
      node.detail = "node budget exhausted";
      budget_hit_ = true;
      return Outcome::unresolved;
    }
    std::string why;
    if (!simplify(s, why)) {
      node.outcome = "contradiction";
      node.detail = why;
      return Outcome::infeasible;
    }
    if (s.eqs.empty()) return finish(s, node);
    return branch(s, node);
  }

  std::size_t nodes() const { return nodes_; }
  const std::optional<std::vector<Rational>>& point() const { return point_; }

 private:
  const VarSetPtr& vars() const { return prob_.vars; }
  std::string name(std::size_t v) const { return (*prob_.vars)[v].name; }

  bool fixed_kind(const State& s, std::size_t v) const { return s.kind[v] != VarKind::free; }

  // Divide out monomial content in non-free variables and make primitive.
  PolyQ normalize(const State& s, const PolyQ& p) const {
    if (p.is_zero()) return p;
    Exponent lo = p.min_exponent();
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (!fixed_kind(s, i)) lo[i] = std::min(lo[i], 0);
    PolyQ q = p.shift(lo);
    // Factors 1 + v^2 never vanish.
    for (bool again = true; again;) {
      again = false;
      for (std::size_t v : q.variables_used())
        if (q.max_degree(v) >= 2)
          if (auto d = q.divide_one_plus_square(v)) {
            q = *d;
            again = true;
            break;
          }
    }
    return q.primitive();
  }

  // Negative powers of v survive only a nonzero monomial value.
  bool can_substitute(const State& s, std::size_t v, const PolyQ& value) const {
    if (value.is_monomial()) return true;
    auto neg = [&](const PolyQ& p) { return p.uses(v) && p.min_degree(v) < 0; };
    for (const auto& p : s.eqs)
      if (neg(p)) return false;
    for (const auto& p : s.nonvan)
      if (neg(p)) return false;
    for (const auto& l : s.naz)
      for (const auto& p : l)
        if (neg(p)) return false;
    return true;
  }

  static void substitute(State& s, std::size_t v, const PolyQ& value) {
    if (s.kind[v] == VarKind::nonvanishing) s.nonvan.push_back(value);
    if (s.kind[v] == VarKind::sign) {
      PolyQ one(value.vars(), Rational(1));
      s.eqs.push_back(value * value - one);
    }
    for (auto& p : s.eqs) p = p.substitute(v, value);
    for (auto& p : s.nonvan) p = p.substitute(v, value);
    for (auto& l : s.naz)
      for (auto& p : l) p = p.substitute(v, value);
    s.subs.push_back({v, value});
    s.kind[v] = VarKind::free;
  }

  // Returns false on a contradiction.
  bool simplify(State& s, std::string& why) {
    for (bool changed = true; changed;) {
      changed = false;
      for (auto& l : s.naz) {
        std::vector<PolyQ> kept;
        bool done = false;
        for (auto& p : l) {
          if (p.is_zero()) continue;
          if (p.is_constant()) done = true;
          kept.push_back(p);
        }
        if (kept.empty()) {
          why = "every member of a not-all-zero set vanishes";
          return false;
        }
        if (done) kept.clear();
        if (kept.size() == 1) {
          s.nonvan.push_back(kept[0]);
          kept.clear();
          changed = true;
        }
        l = std::move(kept);
      }
      s.naz.erase(std::remove_if(s.naz.begin(), s.naz.end(), [](const auto& l) { return l.empty(); }), s.naz.end());

      std::vector<PolyQ> nv;
      for (auto& p : s.nonvan) {
        if (p.is_zero()) {
          why = "a nonvanishing quantity became zero";
          return false;
        }
        if (p.is_constant()) continue;
        if (p.is_monomial()) {
          for (std::size_t v : p.variables_used())
            if (s.kind[v] == VarKind::free) {
              s.kind[v] = VarKind::nonvanishing;
              changed = true;
            }
          continue;
        }
        PolyQ q = normalize(s, p);
        if (std::find(nv.begin(), nv.end(), q) == nv.end()) nv.push_back(q);
      }
      s.nonvan = std::move(nv);

      std::vector<PolyQ> eqs;
      for (const auto& raw : s.eqs) {
        PolyQ p = normalize(s, raw);
        if (p.is_zero()) continue;
        if (p.is_constant()) {
          why = raw.str() + " = 0 reduces to the nonzero constant " + p.str();
          return false;
        }
        if (std::find(s.nonvan.begin(), s.nonvan.end(), p) != s.nonvan.end()) {
          why = p.str() + " must vanish and must not vanish";
          return false;
        }
        if (std::find(eqs.begin(), eqs.end(), p) == eqs.end()) eqs.push_back(p);
      }
      s.eqs = std::move(eqs);

      for (const auto& p : s.eqs) {
        if (p.is_monomial()) {
          std::vector<std::size_t> fv;
          for (std::size_t v : p.variables_used())
            if (s.kind[v] == VarKind::free) fv.push_back(v);
          if (fv.empty()) {
            why = "monomial " + p.str() + " in nonvanishing variables must vanish";
            return false;
          }
          if (fv.size() == 1) {
            substitute(s, fv[0], PolyQ(vars(), Rational(0)));
            changed = true;
            break;
          }
          continue;
        }
        // Sum of even monomials with one sign: every term must vanish.
        bool even = true;
        int sg = 0;
        bool mixed = false;
        for (const auto& [e, c] : p.terms()) {
          for (int x : e)
            if (x % 2 != 0) even = false;
          if (sg == 0) sg = c.sign();
          else if (c.sign() != sg) mixed = true;
        }
        if (!even || mixed) continue;
        std::vector<std::size_t> zero;
        for (const auto& [e, c] : p.terms()) {
          std::vector<std::size_t> fv;
          for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && s.kind[i] == VarKind::free) fv.push_back(i);
          if (fv.empty()) {
            why = "definite equation " + p.str() + " = 0";
            return false;
          }
          if (fv.size() == 1) zero.push_back(fv[0]);
        }
        if (zero.size() == p.terms().size()) {
          for (std::size_t v : zero) substitute(s, v, PolyQ(vars(), Rational(0)));
          changed = true;
          break;
        }
      }
    }
    return true;
  }

  Outcome child(const State& s, CaseNode& node, const std::string& label) {
    node.cases.push_back(label);
    node.children.emplace_back();
    return run(s, node.children.back());
  }

  Outcome combine(std::vector<Outcome> parts) {
    if (std::find(parts.begin(), parts.end(), Outcome::solution) != parts.end()) return Outcome::solution;
    if (std::find(parts.begin(), parts.end(), Outcome::unresolved) != parts.end()) return Outcome::unresolved;
    return Outcome::infeasible;
  }

  Outcome split(const State& s, CaseNode& node, std::size_t v, const std::vector<Rational>& values,
                bool nonzero_case) {
    std::vector<Outcome> outs;
    for (const auto& val : values) {
      State t = s;
      PolyQ pv(vars(), val);
      if (!can_substitute(t, v, pv)) {
        node.cases.push_back(name(v) + " = " + val.str());
        node.children.emplace_back();
        node.children.back().outcome = "contradiction";
        node.children.back().detail = name(v) + " appears inverted";
        outs.push_back(Outcome::infeasible);
        continue;
      }
      substitute(t, v, pv);
      outs.push_back(child(t, node, name(v) + " = " + val.str()));
      if (outs.back() == Outcome::solution) return Outcome::solution;
    }
    if (nonzero_case) {
      State t = s;
      t.kind[v] = VarKind::nonvanishing;
      outs.push_back(child(t, node, name(v) + " != 0"));
    }
    return combine(outs);
  }

  Outcome branch(State& s, CaseNode& node) {
    // Univariate equations.
    for (const auto& p : s.eqs) {
      auto used = p.variables_used();
      if (used.size() != 1) continue;
      std::size_t v = used[0];
      int lo = p.min_degree(v), hi = p.max_degree(v);
      std::vector<Rational> coeffs;
      std::vector<Rational> roots;
      if (s.kind[v] == VarKind::sign) {
        for (int r : {1, -1})
          if (p.substitute(v, Rational(r)).is_zero()) roots.push_back(Rational(r));
        node.step = "sign values solving " + p.str() + " = 0";
        if (roots.empty()) {
          node.outcome = "contradiction";
          node.detail = "no sign solves " + p.str() + " = 0";
          return Outcome::infeasible;
        }
        return split(s, node, v, roots, false);
      }
      if (lo < 0) continue;
      coeffs.assign(static_cast<std::size_t>(lo), Rational(0));
      for (int k = lo; k <= hi; ++k) coeffs.push_back(p.coefficient(v, k).constant_value());
      if (hi == 1 && lo == 0) {
        node.step = "solve " + p.str() + " = 0 for " + name(v);
        return split(s, node, v, {-coeffs[0] / coeffs[1]}, false);
      }
      std::size_t real = real_root_count(coeffs);
      roots = rational_roots(coeffs);
      bool zero_root = coeffs[0].is_zero();
      if (s.kind[v] != VarKind::free && zero_root) {
        roots.erase(std::remove_if(roots.begin(), roots.end(), [](const Rational& r) { return r.is_zero(); }), roots.end());
        --real;
      }
      if (real == 0) {
        node.step = "real roots of " + p.str();
        node.outcome = "contradiction";
        node.detail = p.str() + " = 0 has no admissible real solution";
        return Outcome::infeasible;
      }
      if (roots.size() == real) {
        node.step = "real roots of " + p.str() + " = 0 in " + name(v);
        return split(s, node, v, roots, false);
      }
    }
    // Linear with constant coefficient.
    {
      const PolyQ* best = nullptr;
      std::size_t bv = 0;
      for (const auto& p : s.eqs)
        for (std::size_t v : p.variables_used()) {
          if (s.kind[v] == VarKind::sign || p.max_degree(v) != 1 || p.min_degree(v) != 0) continue;
          if (!p.coefficient(v, 1).is_constant()) continue;
          PolyQ val = p.coefficient(v, 0) * p.coefficient(v, 1).constant_value().inverse() * Rational(-1);
          if (!can_substitute(s, v, val)) continue;
          if (!best || p.terms().size() < best->terms().size()) {
            best = &p;
            bv = v;
          }
        }
      if (best) {
        PolyQ val = best->coefficient(bv, 0) * best->coefficient(bv, 1).constant_value().inverse() * Rational(-1);
        node.step = "solve " + best->str() + " = 0 for " + name(bv);
        State t = s;
        substitute(t, bv, val);
        return Outcome(child(t, node, name(bv) + " = " + val.str()));
      }
    }
    // Sign variables.
    for (const auto& p : s.eqs)
      for (std::size_t v : p.variables_used())
        if (s.kind[v] == VarKind::sign) {
          node.step = "sign split on " + name(v);
          return split(s, node, v, {Rational(1), Rational(-1)}, false);
        }
    // Free variable dividing an equation.
    for (const auto& p : s.eqs)
      for (std::size_t v : p.variables_used())
        if (s.kind[v] == VarKind::free && p.min_degree(v) >= 1) {
          node.step = name(v) + " divides " + p.str();
          return split(s, node, v, {Rational(0)}, true);
        }
    // Linear with a monomial coefficient in nonvanishing variables.
    for (const auto& p : s.eqs)
      for (std::size_t v : p.variables_used()) {
        if (s.kind[v] == VarKind::sign || p.max_degree(v) != 1 || p.min_degree(v) != 0) continue;
        PolyQ a = p.coefficient(v, 1);
        if (!a.is_monomial()) continue;
        bool ok = true;
        for (std::size_t u : a.variables_used())
          if (s.kind[u] == VarKind::free) ok = false;
        if (!ok) continue;
        PolyQ val = p.coefficient(v, 0) * a.monomial_inverse() * Rational(-1);
        if (!can_substitute(s, v, val)) continue;
        node.step = "solve " + p.str() + " = 0 for " + name(v);
        State t = s;
        substitute(t, v, val);
        return child(t, node, name(v) + " = " + val.str());
      }
    // A free variable in a monomial coefficient of a linear variable.
    for (const auto& p : s.eqs)
      for (std::size_t v : p.variables_used()) {
        if (p.max_degree(v) != 1 || p.min_degree(v) != 0) continue;
        PolyQ a = p.coefficient(v, 1);
        if (!a.is_monomial()) continue;
        for (std::size_t u : a.variables_used())
          if (s.kind[u] == VarKind::free) {
            node.step = "coefficient of " + name(v) + " in " + p.str();
            return split(s, node, u, {Rational(0)}, true);
          }
      }
    // Any free variable of a shortest equation.
    const PolyQ* shortest = nullptr;
    for (const auto& p : s.eqs) {
      bool has_free = false;
      for (std::size_t v : p.variables_used())
        if (s.kind[v] == VarKind::free) has_free = true;
      if (has_free && (!shortest || p.terms().size() < shortest->terms().size())) shortest = &p;
    }
    if (shortest) {
      for (std::size_t v : shortest->variables_used())
        if (s.kind[v] == VarKind::free) {
          node.step = "zero split in " + shortest->str();
          return split(s, node, v, {Rational(0)}, true);
        }
    }
    node.outcome = "unresolved";
    node.detail = std::to_string(s.eqs.size()) + " equations left, first: " + s.eqs.front().str();
    return Outcome::unresolved;
  }

  bool conditions_hold(const State& s, const std::vector<std::optional<Rational>>& val) const {
    auto ready = [&](const PolyQ& p) {
      for (std::size_t v : p.variables_used())
        if (!val[v]) return false;
      return true;
    };
    auto eval = [&](const PolyQ& p) {
      std::vector<Rational> x(val.size(), Rational(0));
      for (std::size_t i = 0; i < val.size(); ++i)
        if (val[i]) x[i] = *val[i];
      return p.eval(x);
    };
    for (const auto& p : s.nonvan)
      if (ready(p) && eval(p).is_zero()) return false;
    for (const auto& l : s.naz) {
      bool all_ready = true, any = false;
      for (const auto& p : l) {
        if (!ready(p)) all_ready = false;
        else if (!eval(p).is_zero()) any = true;
      }
      if (all_ready && !any) return false;
    }
    return true;
  }

  bool assign(const State& s, const std::vector<std::size_t>& order, std::size_t k,
              std::vector<std::optional<Rational>>& val, std::size_t& budget) const {
    if (k == order.size()) return true;
    std::size_t v = order[k];
    std::vector<Rational> cand;
    if (s.kind[v] == VarKind::sign) cand = {Rational(1), Rational(-1)};
    else if (s.kind[v] == VarKind::nonvanishing) cand = {Rational(1), Rational(-1), Rational(2), Rational(1, 2), Rational(-2), Rational(3)};
    else cand = {Rational(0), Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(3)};
    for (const auto& c : cand) {
      if (budget-- == 0) return false;
      val[v] = c;
      if (conditions_hold(s, val) && assign(s, order, k + 1, val, budget)) return true;
    }
    val[v].reset();
    return false;
  }

  Outcome finish(const State& s, CaseNode& node) {
    const std::size_t n = vars()->size();
    std::vector<bool> substituted(n, false);
    for (const auto& [v, _] : s.subs) substituted[v] = true;
    std::vector<std::size_t> order;
    for (std::size_t v = 0; v < n; ++v)
      if (!substituted[v]) order.push_back(v);
    std::vector<std::optional<Rational>> val(n);
    std::size_t budget = 100000;
    if (!assign(s, order, 0, val, budget)) {
      node.outcome = "unresolved";
      node.detail = "no small values meet the side conditions";
      return Outcome::unresolved;
    }
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      if (val[i]) x[i] = *val[i];
    for (auto it = s.subs.rbegin(); it != s.subs.rend(); ++it) {
      try {
        x[it->first] = it->second.eval(x);
      } catch (const std::exception&) {
        node.outcome = "unresolved";
        node.detail = "back substitution divides by zero";
        return Outcome::unresolved;
      }
    }
    if (!admissible(x) || (opts_.accept && !opts_.accept(x))) {
      node.outcome = "unresolved";
      node.detail = "candidate point rejected by exact check";
      return Outcome::unresolved;
    }
    node.outcome = "solution";
    std::string d;
    for (std::size_t i = 0; i < n; ++i) d += (i ? ", " : "") + name(i) + " = " + x[i].str();
    node.detail = d;
    point_ = x;
    return Outcome::solution;
  }

  bool admissible(const std::vector<Rational>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto k = (*vars())[i].kind;
      if (k == VarKind::nonvanishing && x[i].is_zero()) return false;
      if (k == VarKind::sign && x[i] != Rational(1) && x[i] != Rational(-1)) return false;
    }
    for (const auto& p : prob_.equations)
      if (!p.eval(x).is_zero()) return false;
    for (const auto& p : prob_.nonvanishing)
      if (p.eval(x).is_zero()) return false;
    for (const auto& l : prob_.not_all_zero)
      if (std::all_of(l.begin(), l.end(), [&](const PolyQ& p) { return p.eval(x).is_zero(); })) return false;
    return true;
  }

  const EliminationProblem& prob_;
  const EliminationOptions& opts_;
  std::size_t nodes_ = 0;
  bool budget_hit_ = false;
  std::optional<std::vector<Rational>> point_;
};

}  // namespace

EliminationResult eliminate(const EliminationProblem& p, const EliminationOptions& opts) {
  if (!p.vars) throw std::invalid_argument("eliminate: missing variable set");
  State s;
  s.eqs = p.equations;
  s.nonvan = p.nonvanishing;
  s.naz = p.not_all_zero;
  for (const auto& v : p.vars->all()) s.kind.push_back(v.kind);
  Engine eng(p, opts);
  EliminationResult r;
  Outcome o = eng.run(std::move(s), r.tree);
  r.nodes = eng.nodes();
  r.status = o == Outcome::solution     ? EliminationResult::Status::solution
             : o == Outcome::infeasible ? EliminationResult::Status::infeasible
                                        : EliminationResult::Status::unresolved;
  r.point = eng.point();
  return r;
}

}  // namespace flagacs
