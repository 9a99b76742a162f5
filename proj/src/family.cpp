#include "flagacs/invariants.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace flagacs {

namespace {

QMatrix standard_pairing(std::size_t m) {
  QMatrix g(m, m);
  for (std::size_t i = 0; i + 1 < m; i += 2) {
    g(i + 1, i) = 1;
    g(i, i + 1) = -1;
  }
  return g;
}

QMatrix random_invertible(std::mt19937_64& rng, std::size_t m) {
  std::uniform_int_distribution<int> d(-2, 2);
  for (;;) {
    QMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) g(i, j) = Rational(d(rng));
    if (rank(g) == m) return g;
  }
}

QVector flatten(const QMatrix& m) {
  QVector v;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

void put_block(QMatrix& big, const QMatrix& blk, std::size_t off) {
  for (std::size_t i = 0; i < blk.rows(); ++i)
    for (std::size_t j = 0; j < blk.cols(); ++j) big(off + i, off + j) = blk(i, j);
}

}  // namespace

ParamACS param_family(const IsotropyModel& im, const Decomposition& dec) {
  const std::size_t n = im.dim();
  for (const auto& c : im.classes.classes)
    if (!c.even()) throw std::invalid_argument("param_family: odd M-class, no invariant structure");
  auto vars = std::make_shared<VarSet>();
  ParamACS fam;
  std::vector<QVector> frame_cols;
  std::vector<ParamBlock> blocks;
  // Symbolic entries are filled after all variables exist.
  std::vector<std::function<void(PolyMatrix&, const VarSetPtr&)>> fillers;

  for (std::size_t k = 0; k < dec.classes.size(); ++k) {
    const auto& comps = dec.classes[k];
    const std::size_t m = comps.size();
    const std::size_t w = dec.components[comps[0]].space.dim();
    const std::size_t e = dec.components[comps[0]].endo_dim;
    std::vector<QMatrix> s(m);
    for (std::size_t i = 0; i < m; ++i) {
      auto t = i == 0 ? std::optional<QMatrix>(QMatrix::identity(w)) : dec.iso(comps[0], comps[i]);
      if (!t) throw std::logic_error("param_family: missing isomorphism inside an isotypic class");
      s[i] = *t;
      QMatrix cols = dec.components[comps[i]].space.matrix() * s[i];
      for (std::size_t c = 0; c < w; ++c) frame_cols.push_back(cols.column(c));
    }
    ParamBlock blk;
    blk.isotypic_class = k;
    blk.multiplicity = m;
    blk.irrep_dim = w;
    blk.offset = frame_cols.size() - m * w;
    blk.size = m * w;
    const std::string tag = std::to_string(blocks.size() + 1);
    const std::size_t off = blk.offset;

    std::optional<QMatrix> kunit;
    if (e == 2 && m == 1) kunit = dec.complex_unit(comps[0]);

    if (e == 1) {
      if (m % 2 == 1) throw std::invalid_argument("param_family: real-type irreducible of odd multiplicity");
      blk.unit = QMatrix(m * w, m * w);
      QMatrix g0 = standard_pairing(m);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
          for (std::size_t q = 0; q < w; ++q) blk.unit(r * w + q, c * w + q) = g0(r, c);
      if (m == 2) {
        blk.kind = "laurent2";
        blk.vars = {vars->add("a" + tag, VarKind::free), vars->add("c" + tag, VarKind::nonvanishing)};
        std::size_t va = blk.vars[0], vc = blk.vars[1];
        fillers.push_back([=](PolyMatrix& j, const VarSetPtr& vs) {
          PolyQ a = PolyQ::variable(vs, va), c = PolyQ::variable(vs, vc);
          PolyQ b = -(PolyQ(vs, Rational(1)) + a * a) * PolyQ::variable(vs, vc, -1);
          for (std::size_t q = 0; q < w; ++q) {
            j(off + q, off + q) = a;
            j(off + w + q, off + q) = c;
            j(off + q, off + w + q) = b;
            j(off + w + q, off + w + q) = -a;
          }
        });
      } else {
        blk.kind = "generic_real";
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < m; ++c)
            blk.vars.push_back(vars->add("g" + tag + "_" + std::to_string(r + 1) + std::to_string(c + 1), VarKind::free));
        auto vlist = blk.vars;
        fillers.push_back([=](PolyMatrix& j, const VarSetPtr& vs) {
          for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
              for (std::size_t q = 0; q < w; ++q) j(off + r * w + q, off + c * w + q) = PolyQ::variable(vs, vlist[r * m + c]);
        });
      }
    } else if (kunit) {
      blk.kind = "complex_sign";
      blk.vars = {vars->add("e" + tag, VarKind::sign)};
      blk.unit = *kunit;
      QMatrix kk = *kunit;
      std::size_t ve = blk.vars[0];
      fillers.push_back([=](PolyMatrix& j, const VarSetPtr& vs) {
        PolyQ eps = PolyQ::variable(vs, ve);
        for (std::size_t r = 0; r < w; ++r)
          for (std::size_t c = 0; c < w; ++c)
            if (!kk(r, c).is_zero()) j(off + r, off + c) = eps * kk(r, c);
      });
    } else {
      blk.kind = "generic_commutant";
      // Endomorphisms of the isotypic component in adapted coordinates.
      std::vector<QMatrix> sinv(m);
      for (std::size_t i = 0; i < m; ++i) sinv[i] = *inverse(s[i]);
      std::vector<QVector> flat;
      for (const auto& t : dec.comm.basis) {
        QMatrix b(m * w, m * w);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j2 = 0; j2 < m; ++j2) {
            QMatrix piece = sinv[j2] * dec.compress(t, comps[i], comps[j2]) * s[i];
            for (std::size_t r = 0; r < w; ++r)
              for (std::size_t c = 0; c < w; ++c) b(j2 * w + r, i * w + c) = piece(r, c);
          }
        if (b.is_zero()) continue;
        QVector f = flatten(b);
        std::vector<QVector> trial = flat;
        trial.push_back(f);
        if (rank(QMatrix::from_columns(trial, f.size())) == trial.size()) {
          flat = std::move(trial);
          blk.span.push_back(b);
        }
      }
      blk.unit = QMatrix(m * w, m * w);
      for (std::size_t i = 0; i + 1 < m; i += 2)
        for (std::size_t q = 0; q < w; ++q) {
          blk.unit((i + 1) * w + q, i * w + q) = 1;
          blk.unit(i * w + q, (i + 1) * w + q) = -1;
        }
      if (m % 2 == 1) {
        auto kk = dec.complex_unit(comps[m - 1]);
        if (!kk) throw std::invalid_argument("param_family: no rational complex unit");
        put_block(blk.unit, sinv[m - 1] * *kk * s[m - 1], (m - 1) * w);
      }
      for (std::size_t i = 0; i < blk.span.size(); ++i)
        blk.vars.push_back(vars->add("x" + tag + "_" + std::to_string(i + 1), VarKind::free));
      auto span = blk.span;
      auto vlist = blk.vars;
      fillers.push_back([=](PolyMatrix& j, const VarSetPtr& vs) {
        for (std::size_t i = 0; i < span.size(); ++i)
          for (std::size_t r = 0; r < m * w; ++r)
            for (std::size_t c = 0; c < m * w; ++c)
              if (!span[i](r, c).is_zero()) j(off + r, off + c) += PolyQ::variable(vs, vlist[i]) * span[i](r, c);
      });
    }
    blocks.push_back(std::move(blk));
  }

  VarSetPtr vs = vars;
  fam.vars = vs;
  fam.frame = QMatrix::from_columns(frame_cols, n);
  auto finv = inverse(fam.frame);
  if (!finv) throw std::logic_error("param_family: adapted frame is singular");
  PolyMatrix jad(vs, n, n);
  for (const auto& f : fillers) f(jad, vs);
  fam.j = fam.frame * jad * *finv;

  for (const auto& blk : blocks) {
    const std::size_t o = blk.offset, sz = blk.size;
    if (blk.kind == "laurent2") {
      fam.nonvanishing.push_back(PolyQ::variable(vs, blk.vars[1]));
      continue;
    }
    if (blk.kind == "complex_sign") continue;
    if (blk.kind == "generic_real") {
      const std::size_t m = blk.multiplicity;
      for (std::size_t c = 0; c < m; ++c) {
        std::vector<PolyQ> col;
        for (std::size_t r = 0; r < m; ++r)
          if (r != c) col.push_back(PolyQ::variable(vs, blk.vars[r * m + c]));
        fam.not_all_zero.push_back(std::move(col));
      }
    }
    // J^2 + I on the block.
    for (std::size_t r = 0; r < sz; ++r)
      for (std::size_t c = 0; c < sz; ++c) {
        PolyQ p(vs, r == c ? Rational(1) : Rational(0));
        for (std::size_t l = 0; l < sz; ++l) p += jad(o + r, o + l) * jad(o + l, o + c);
        if (!p.is_zero() && std::find(fam.constraints.begin(), fam.constraints.end(), p) == fam.constraints.end())
          fam.constraints.push_back(p);
      }
  }
  fam.blocks = std::move(blocks);
  return fam;
}

ParamACS param_family(const IsotropyModel& im) { return param_family(im, decompose(im)); }

std::vector<Rational> ParamACS::sample(std::mt19937_64& rng) const {
  std::vector<Rational> values(vars->size(), Rational(0));
  std::uniform_int_distribution<int> d(-3, 3), nz(1, 3), coin(0, 1);
  for (const auto& blk : blocks) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000) throw std::logic_error("ParamACS::sample: no admissible point found");
      if (blk.kind == "laurent2") {
        values[blk.vars[0]] = Rational(d(rng)) / Rational(nz(rng));
        values[blk.vars[1]] = Rational(coin(rng) ? nz(rng) : -nz(rng)) / Rational(nz(rng));
        break;
      }
      if (blk.kind == "complex_sign") {
        values[blk.vars[0]] = Rational(coin(rng) ? 1 : -1);
        break;
      }
      if (blk.kind == "generic_real") {
        const std::size_t m = blk.multiplicity;
        QMatrix g = random_invertible(rng, m);
        QMatrix j = g * standard_pairing(m) * *inverse(g);
        bool ok = true;
        for (std::size_t c = 0; c < m && ok; ++c) {
          bool any = false;
          for (std::size_t r = 0; r < m; ++r)
            if (r != c && !j(r, c).is_zero()) any = true;
          ok = any;
        }
        if (!ok) continue;
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < m; ++c) values[blk.vars[r * m + c]] = j(r, c);
        break;
      }
      // generic_commutant: conjugate the unit by a random invertible endomorphism.
      QMatrix g = QMatrix::identity(blk.size);
      for (const auto& b : blk.span) g += Rational(d(rng)) * b;
      auto gi = inverse(g);
      if (!gi) continue;
      QMatrix j = g * blk.unit * *gi;
      std::vector<QVector> cols;
      for (const auto& b : blk.span) cols.push_back(flatten(b));
      QVector target = flatten(j);
      auto x = solve_linear(QMatrix::from_columns(cols, target.size()), target);
      if (!x) throw std::logic_error("ParamACS::sample: conjugate left the span");
      for (std::size_t i = 0; i < x->size(); ++i) values[blk.vars[i]] = (*x)[i];
      break;
    }
  }
  return values;
}

bool ParamACS::admissible(const std::vector<Rational>& values) const {
  if (values.size() != vars->size()) return false;
  for (std::size_t i = 0; i < vars->size(); ++i) {
    if ((*vars)[i].kind == VarKind::sign && values[i] != Rational(1) && values[i] != Rational(-1)) return false;
    if ((*vars)[i].kind == VarKind::nonvanishing && values[i].is_zero()) return false;
  }
  for (const auto& p : constraints)
    if (!p.eval(values).is_zero()) return false;
  for (const auto& p : nonvanishing)
    if (p.eval(values).is_zero()) return false;
  for (const auto& set : not_all_zero) {
    bool any = false;
    for (const auto& p : set)
      if (!p.eval(values).is_zero()) any = true;
    if (!any) return false;
  }
  return true;
}

}  // namespace flagacs
