#include "flagacs/realization.hpp"

#include <stdexcept>

namespace flagacs {

namespace {

std::size_t matrix_size(const LieType& t) {
  switch (t.family) {
    case 'A': return static_cast<std::size_t>(t.rank) + 1;
    case 'B': return 2 * static_cast<std::size_t>(t.rank) + 1;
    case 'C':
    case 'D': return 2 * static_cast<std::size_t>(t.rank);
    default: throw std::invalid_argument("no matrix realization for type " + t.str());
  }
}

void put(QMatrix& m, std::size_t i, std::size_t j, int v) { m(i, j) += Rational(v); }

// Returns a scalar s with a == s*b, if any.
std::optional<Rational> ratio(const QMatrix& a, const QMatrix& b) {
  std::optional<Rational> s;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (b(i, j).is_zero()) {
        if (!a(i, j).is_zero()) return std::nullopt;
        continue;
      }
      Rational r = a(i, j) / b(i, j);
      if (s && *s != r) return std::nullopt;
      s = r;
    }
  return s;
}

}  // namespace

QMatrix standard_matrix(const RootSystem& rs, const Root& r) {
  const LieType& t = rs.type();
  std::size_t n = matrix_size(t);
  if (!rs.is_root(r)) throw std::invalid_argument("standard_matrix: not a root");
  if (!rs.is_positive(r)) return standard_matrix(rs, negate(r)).transpose();
  const std::size_t l = static_cast<std::size_t>(t.rank);
  QMatrix m(n, n);
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != 0) nz.push_back(i);
  if (t.family == 'A') {
    put(m, nz[0], nz[1], 1);
    return m;
  }
  // Offset of the first block: B has an extra leading index.
  std::size_t o = t.family == 'B' ? 1 : 0;
  if (nz.size() == 2) {
    std::size_t i = nz[0], j = nz[1];
    bool minus = r[j] < 0;
    if (minus) {
      put(m, o + i, o + j, 1);
      put(m, o + l + j, o + l + i, -1);
    } else if (t.family == 'B') {
      put(m, o + j, o + l + i, 1);
      put(m, o + i, o + l + j, -1);
    } else if (t.family == 'C') {
      put(m, i, l + j, 1);
      put(m, j, l + i, 1);
    } else {
      put(m, i, l + j, 1);
      put(m, j, l + i, -1);
    }
    return m;
  }
  std::size_t i = nz[0];
  if (t.family == 'B') {
    put(m, 0, o + l + i, 1);
    put(m, o + i, 0, -1);
  } else {
    put(m, i, l + i, 1);  // C: 2 l_i
  }
  return m;
}

QMatrix MatrixRealization::embed(const AbstractElement& e) const {
  QMatrix m(size, size);
  for (std::size_t i = 0; i < e.h.size(); ++i)
    if (!e.h[i].is_zero()) m += e.h[i] * h[i];
  for (const auto& [k, c] : e.x) m += c * x[k];
  return m;
}

std::size_t MatrixRealization::bracket_failures(const StructureConstants& sc) const {
  std::size_t bad = 0;
  std::vector<QMatrix> img;
  for (std::size_t k = 0; k < sc.dim(); ++k) img.push_back(embed(sc.basis(k)));
  for (std::size_t a = 0; a < sc.dim(); ++a)
    for (std::size_t b = a + 1; b < sc.dim(); ++b)
      if (embed(sc.bracket(sc.basis(a), sc.basis(b))) != QMatrix::commutator(img[a], img[b])) ++bad;
  return bad;
}

MatrixRealization build_realization(const StructureConstants& sc) {
  const RootSystem& rs = sc.roots();
  MatrixRealization mr;
  mr.lie_type = rs.type();
  mr.size = matrix_size(rs.type());
  switch (rs.type().family) {
    case 'A': mr.model = "sl(" + std::to_string(mr.size) + ",R)"; break;
    case 'B': mr.model = "so(" + std::to_string(rs.rank()) + "," + std::to_string(rs.rank() + 1) + ")"; break;
    case 'C': mr.model = "sp(" + std::to_string(rs.rank()) + ",R)"; break;
    case 'D': mr.model = "so(" + std::to_string(rs.rank()) + "," + std::to_string(rs.rank()) + ")"; break;
  }
  const auto& roots = rs.roots();
  const std::size_t nr = roots.size();
  const std::size_t np = nr / 2;
  mr.x.assign(nr, QMatrix(mr.size, mr.size));
  mr.h.resize(rs.rank());
  std::vector<bool> done(nr, false);

  for (std::size_t i = 0; i < rs.rank(); ++i) {
    const Root& a = rs.simple()[i];
    QMatrix e = standard_matrix(rs, a);
    QMatrix f = e.transpose();
    QMatrix hh = QMatrix::commutator(e, f);
    auto k = ratio(QMatrix::commutator(hh, e), e);
    if (!k || k->is_zero()) throw std::logic_error("build_realization: simple root matrix not an sl2 triple");
    Rational c = Rational(2) / *k;
    std::size_t ip = *rs.index(a), in = *rs.index(negate(a));
    mr.x[ip] = e;
    mr.x[in] = c * f;
    mr.h[i] = c * hh;
    done[ip] = done[in] = true;
  }
  // Positive roots by increasing height: X_{a+b} = [X_a, X_b] / N_{a,b}.
  for (std::size_t xi = 0; xi < np; ++xi) {
    if (done[xi]) continue;
    std::size_t es = 0;
    for (; es < sc.extraspecial().size(); ++es)
      if (sc.sum_index(sc.extraspecial()[es].first, sc.extraspecial()[es].second) == xi) break;
    auto [a, b] = sc.extraspecial().at(es);
    std::size_t na = a + np, nb = b + np;
    mr.x[xi] = Rational(1, sc.n(a, b)) * QMatrix::commutator(mr.x[a], mr.x[b]);
    mr.x[xi + np] = Rational(1, sc.n(na, nb)) * QMatrix::commutator(mr.x[na], mr.x[nb]);
    done[xi] = done[xi + np] = true;
  }
  mr.kappa.resize(nr);
  for (std::size_t k = 0; k < nr; ++k) {
    auto s = ratio(mr.x[k], standard_matrix(rs, roots[k]));
    if (!s || s->is_zero()) throw std::logic_error("build_realization: root vector off its root space for " + rs.format(roots[k]));
    mr.kappa[k] = *s;
  }
  if (mr.bracket_failures(sc) != 0) throw std::logic_error("build_realization: bracket not preserved");
  return mr;
}

std::vector<std::vector<int>> matrix_m_elements(const LieType& t) {
  std::size_t n = matrix_size(t);
  const std::size_t l = static_cast<std::size_t>(t.rank);
  std::size_t free = t.family == 'A' ? n : l;
  std::vector<std::vector<int>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << free); ++mask) {
    std::vector<int> eps(free);
    int prod = 1;
    for (std::size_t i = 0; i < free; ++i) {
      eps[i] = (mask >> i) & 1 ? -1 : 1;
      prod *= eps[i];
    }
    if (t.family != 'C' && prod != 1) continue;
    std::vector<int> d;
    if (t.family == 'A') d = eps;
    if (t.family == 'B') d.push_back(1);
    if (t.family != 'A') {
      for (int k = 0; k < 2; ++k) d.insert(d.end(), eps.begin(), eps.end());
    }
    out.push_back(d);
  }
  return out;
}

std::map<std::string, Rational> u_l_image(const QMatrix& x) {
  if (!x.is_square() || x.rows() % 2 != 0) throw std::invalid_argument("u_l_image: not an sp(l) matrix");
  const std::size_t l = x.rows() / 2;
  QMatrix a(l, l), b(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      a(i, j) = x(i, j);
      b(i, j) = x(l + i, j);
      if (x(l + i, l + j) != a(i, j) || x(i, l + j) != -b(i, j))
        throw std::invalid_argument("u_l_image: not of the form [A -B; B A]");
    }
  if (a.transpose() != Rational(-1) * a || b.transpose() != b)
    throw std::invalid_argument("u_l_image: element not in the compact part");
  std::map<std::string, Rational> out;
  auto label = [](const char* kind, std::size_t k, std::size_t j) {
    return std::string(kind) + "[" + std::to_string(k + 1) + "," + std::to_string(j + 1) + "]";
  };
  for (std::size_t k = 0; k < l; ++k)
    for (std::size_t j = 0; j <= k; ++j) {
      if (j < k && !a(k, j).is_zero()) out[label("A", k, j)] = a(k, j);
      if (j < k && !b(k, j).is_zero()) out[label("S", k, j)] = b(k, j);
      if (j == k && !b(k, k).is_zero()) out[label("S", k, k)] = b(k, k) / Rational(2);
    }
  return out;
}

}  // namespace flagacs
