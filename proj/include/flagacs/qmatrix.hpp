#pragma once

#include "flagacs/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flagacs {

using QVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, cols); }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  QVector row(std::size_t i) const;
  QVector column(std::size_t j) const;

  bool is_zero() const;
  bool is_diagonal() const;
  QMatrix transpose() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(const Rational& s);

  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, const Rational& s) { return a *= s; }
  friend QMatrix operator*(const Rational& s, QMatrix a) { return a *= s; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QVector operator*(const QMatrix& a, const QVector& v);
  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

  /// a*b - b*a
  static QMatrix commutator(const QMatrix& a, const QMatrix& b);

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

bool is_zero(const QVector& v);
QVector add(const QVector& a, const QVector& b);
QVector sub(const QVector& a, const QVector& b);
QVector scale(const QVector& a, const Rational& s);
/// Scale so that the first nonzero entry is 1.
QVector normalize_leading(QVector v);

/// Basis of {v : m v = 0}; each vector has leading nonzero entry 1.
/// Empty iff m is injective. Fraction-free (Bareiss) elimination.
std::vector<QVector> nullspace(const QMatrix& m);

/// Rank via fraction-free elimination.
std::size_t rank(const QMatrix& m);

/// Reduced row echelon form (rational), returning pivot columns.
QMatrix rref(const QMatrix& m, std::vector<std::size_t>* pivots = nullptr);

/// A solution x of m x = b, or nullopt when the system is inconsistent.
/// Throws std::invalid_argument on dimension mismatch.
std::optional<QVector> solve_linear(const QMatrix& m, const QVector& b);

std::optional<QMatrix> inverse(const QMatrix& m);

/// Incremental sparse row reduction over Q. Rows are added one at a time
/// and kept in reduced echelon form; used for the large, very sparse
/// Sylvester systems behind commutants and intertwiners.
class SparseEliminator {
 public:
  using Row = std::map<std::size_t, Rational>;

  explicit SparseEliminator(std::size_t unknowns) : n_(unknowns) {}

  /// Returns true when the row was independent of those already added.
  bool add_row(Row row);
  std::size_t rank() const { return pivots_.size(); }
  std::size_t unknowns() const { return n_; }
  /// Basis of the solution space of all added homogeneous equations.
  std::vector<QVector> nullspace() const;

 private:
  void reduce(Row& row) const;

  std::size_t n_;
  std::map<std::size_t, Row> pivots_;  // pivot column -> row with leading 1
};

/// Column basis of a subspace, reduced to echelon form so that equal
/// subspaces compare equal.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t ambient, const std::vector<QVector>& spanning);

  static Subspace full(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<QVector>& basis() const { return basis_; }
  QMatrix matrix() const { return QMatrix::from_columns(basis_, ambient_); }

  bool contains(const QVector& v) const;
  bool contains(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  Subspace sum(const Subspace& o) const;
  /// Coordinates of v in this basis (v must lie in the subspace).
  QVector coordinates(const QVector& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<QVector> basis_;  // rows of the RREF, as vectors
  std::vector<std::size_t> pivots_;
};

}  // namespace flagacs
