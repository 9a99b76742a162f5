#include "flagacs/qmatrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace flagacs {

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("QMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols, std::size_t rows) {
  QMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("QMatrix: column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

QVector QMatrix::row(std::size_t i) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

QVector QMatrix::column(std::size_t j) const {
  QVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r.is_zero(); });
}

bool QMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMatrix: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMatrix: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

QMatrix& QMatrix::operator*=(const Rational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("QMatrix: product shape mismatch");
  QMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b(k, j);
        if (!bkj.is_zero()) c(i, j) += aik * bkj;
      }
    }
  return c;
}

QVector operator*(const QMatrix& a, const QVector& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("QMatrix: vector length mismatch");
  QVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
  return out;
}

QMatrix QMatrix::commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

std::string QMatrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]\n";
  }
  return os.str();
}

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

QVector add(const QVector& a, const QVector& b) {
  QVector c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

QVector sub(const QVector& a, const QVector& b) {
  QVector c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

QVector scale(const QVector& a, const Rational& s) {
  QVector c(a);
  for (auto& x : c) x *= s;
  return c;
}

QVector normalize_leading(QVector v) {
  for (const auto& x : v)
    if (!x.is_zero()) {
      Rational inv = x.inverse();
      for (auto& y : v) y *= inv;
      break;
    }
  return v;
}

namespace {

// Integer row echelon form by Bareiss' fraction-free elimination. Each row
// is first scaled by the lcm of its denominators.
struct Echelon {
  std::vector<std::vector<mpz_class>> rows;
  std::vector<std::size_t> pivots;
  std::size_t cols = 0;
};

Echelon bareiss(const QMatrix& m) {
  Echelon e;
  e.cols = m.cols();
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class den = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) den = lcm(den, m(i, j).denominator());
    for (std::size_t j = 0; j < m.cols(); ++j)
      a[i][j] = m(i, j).numerator() * (den / m(i, j).denominator());
  }
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        mpz_class t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    e.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

// Rational RREF of the leading block from an integer echelon form.
std::vector<QVector> reduce_echelon(const Echelon& e) {
  std::vector<QVector> rows(e.rows.size(), QVector(e.cols));
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    Rational inv = Rational(e.rows[i][e.pivots[i]]).inverse();
    for (std::size_t j = 0; j < e.cols; ++j)
      if (e.rows[i][j] != 0) rows[i][j] = Rational(e.rows[i][j]) * inv;
  }
  for (std::size_t i = rows.size(); i-- > 0;) {
    std::size_t pc = e.pivots[i];
    for (std::size_t k = 0; k < i; ++k) {
      Rational f = rows[k][pc];
      if (f.is_zero()) continue;
      for (std::size_t j = pc; j < e.cols; ++j)
        if (!rows[i][j].is_zero()) rows[k][j] -= f * rows[i][j];
    }
  }
  return rows;
}

std::vector<QVector> nullspace_from_rref(const std::vector<QVector>& rows,
                                         const std::vector<std::size_t>& pivots,
                                         std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) v[pivots[i]] = -rows[i][f];
    basis.push_back(normalize_leading(std::move(v)));
  }
  return basis;
}

}  // namespace

std::vector<QVector> nullspace(const QMatrix& m) {
  Echelon e = bareiss(m);
  return nullspace_from_rref(reduce_echelon(e), e.pivots, m.cols());
}

std::size_t rank(const QMatrix& m) { return bareiss(m).pivots.size(); }

QMatrix rref(const QMatrix& m, std::vector<std::size_t>* pivots) {
  Echelon e = bareiss(m);
  auto rows = reduce_echelon(e);
  QMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = rows[i][j];
  if (pivots) *pivots = e.pivots;
  return out;
}

std::optional<QVector> solve_linear(const QMatrix& m, const QVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Echelon e = bareiss(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  auto rows = reduce_echelon(e);
  QVector x(m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) x[e.pivots[i]] = rows[i][m.cols()];
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: matrix not square");
  std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> piv;
  QMatrix r = rref(aug, &piv);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

// ---------------------------------------------------------------------------

void SparseEliminator::reduce(Row& row) const {
  // Pivot rows are fully reduced against each other, so one ordered pass
  // over the row's entries suffices.
  auto it = row.begin();
  while (it != row.end()) {
    auto pv = pivots_.find(it->first);
    if (pv == pivots_.end()) {
      ++it;
      continue;
    }
    Rational f = it->second;
    std::size_t col = it->first;
    for (const auto& [c, v] : pv->second) {
      Rational& slot = row[c];
      slot -= f * v;
    }
    for (auto jt = row.begin(); jt != row.end();) {
      if (jt->second.is_zero()) jt = row.erase(jt);
      else ++jt;
    }
    it = row.upper_bound(col);
  }
}

bool SparseEliminator::add_row(Row row) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->second.is_zero()) it = row.erase(it);
    else ++it;
  }
  reduce(row);
  if (row.empty()) return false;
  std::size_t pc = row.begin()->first;
  Rational inv = row.begin()->second.inverse();
  for (auto& [c, v] : row) v *= inv;
  for (auto& [p, prow] : pivots_) {
    auto hit = prow.find(pc);
    if (hit == prow.end()) continue;
    Rational f = hit->second;
    for (const auto& [c, v] : row) {
      Rational& slot = prow[c];
      slot -= f * v;
    }
    for (auto jt = prow.begin(); jt != prow.end();) {
      if (jt->second.is_zero()) jt = prow.erase(jt);
      else ++jt;
    }
  }
  pivots_.emplace(pc, std::move(row));
  return true;
}

std::vector<QVector> SparseEliminator::nullspace() const {
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < n_; ++f) {
    if (pivots_.count(f)) continue;
    QVector v(n_);
    v[f] = 1;
    for (const auto& [p, prow] : pivots_) {
      auto hit = prow.find(f);
      if (hit != prow.end()) v[p] = -hit->second;
    }
    basis.push_back(normalize_leading(std::move(v)));
  }
  return basis;
}

// ---------------------------------------------------------------------------

Subspace::Subspace(std::size_t ambient, const std::vector<QVector>& spanning) : ambient_(ambient) {
  if (spanning.empty()) return;
  QMatrix m(spanning.size(), ambient);
  for (std::size_t i = 0; i < spanning.size(); ++i) {
    if (spanning[i].size() != ambient) throw std::invalid_argument("Subspace: vector length");
    for (std::size_t j = 0; j < ambient; ++j) m(i, j) = spanning[i][j];
  }
  Echelon e = bareiss(m);
  basis_ = reduce_echelon(e);
  pivots_ = e.pivots;
}

Subspace Subspace::full(std::size_t ambient) {
  std::vector<QVector> v;
  for (std::size_t i = 0; i < ambient; ++i) {
    QVector e(ambient);
    e[i] = 1;
    v.push_back(std::move(e));
  }
  return Subspace(ambient, v);
}

QVector Subspace::coordinates(const QVector& v) const {
  QVector c(basis_.size());
  QVector rest = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    c[i] = rest[pivots_[i]];
    if (!c[i].is_zero())
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!basis_[i][j].is_zero()) rest[j] -= c[i] * basis_[i][j];
  }
  if (!flagacs::is_zero(rest)) throw std::invalid_argument("Subspace: vector not contained");
  return c;
}

bool Subspace::contains(const QVector& v) const {
  QVector rest = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Rational c = rest[pivots_[i]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!basis_[i][j].is_zero()) rest[j] -= c * basis_[i][j];
  }
  return flagacs::is_zero(rest);
}

bool Subspace::contains(const Subspace& o) const {
  return std::all_of(o.basis_.begin(), o.basis_.end(),
                     [&](const QVector& v) { return contains(v); });
}

Subspace Subspace::sum(const Subspace& o) const {
  std::vector<QVector> all = basis_;
  all.insert(all.end(), o.basis_.begin(), o.basis_.end());
  return Subspace(ambient_, all);
}

Subspace Subspace::intersect(const Subspace& o) const {
  // Solve sum a_i u_i - sum b_j w_j = 0.
  if (dim() == 0 || o.dim() == 0) return Subspace(ambient_, {});
  QMatrix m(ambient_, dim() + o.dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t r = 0; r < ambient_; ++r) m(r, i) = basis_[i][r];
  for (std::size_t j = 0; j < o.dim(); ++j)
    for (std::size_t r = 0; r < ambient_; ++r) m(r, dim() + j) = -o.basis_[j][r];
  std::vector<QVector> vecs;
  for (const auto& k : flagacs::nullspace(m)) {
    QVector v(ambient_);
    for (std::size_t i = 0; i < dim(); ++i)
      if (!k[i].is_zero())
        for (std::size_t r = 0; r < ambient_; ++r) v[r] += k[i] * basis_[i][r];
    vecs.push_back(std::move(v));
  }
  return Subspace(ambient_, vecs);
}

}  // namespace flagacs
