#pragma once

#include "flagacs/qmatrix.hpp"
#include "flagacs/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flagacs {

enum class VarKind {
  free,         // any real value
  nonvanishing, // real and nonzero; may appear with negative exponent
  sign,         // +1 or -1; exponents are reduced mod 2
};

struct Variable {
  std::string name;
  VarKind kind = VarKind::free;
};

/// Ordered list of named parameters shared by a family of polynomials.
class VarSet {
 public:
  std::size_t add(std::string name, VarKind kind);
  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  std::optional<std::size_t> find(const std::string& name) const;
  const std::vector<Variable>& all() const { return vars_; }

 private:
  std::vector<Variable> vars_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;
using Exponent = std::vector<int>;
using Assignment = std::map<std::string, Rational>;

/// Sparse multivariate Laurent polynomial over Q. Negative exponents are
/// only meaningful for nonvanishing variables; sign variables satisfy s^2=1.
class PolyQ {
 public:
  PolyQ() = default;
  explicit PolyQ(VarSetPtr vars) : vars_(std::move(vars)) {}
  PolyQ(VarSetPtr vars, const Rational& c);

  static PolyQ variable(VarSetPtr vars, std::size_t index, int power = 1);
  static PolyQ monomial(VarSetPtr vars, const Exponent& e, const Rational& c);

  const VarSetPtr& vars() const { return vars_; }
  std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // coefficient of the zero exponent
  bool is_monomial() const { return terms_.size() == 1; }

  PolyQ operator-() const;
  PolyQ& operator+=(const PolyQ& o);
  PolyQ& operator-=(const PolyQ& o);
  PolyQ& operator*=(const PolyQ& o);
  PolyQ& operator*=(const Rational& s);
  friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
  friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
  friend PolyQ operator*(PolyQ a, const PolyQ& b) { return a *= b; }
  friend PolyQ operator*(PolyQ a, const Rational& s) { return a *= s; }
  friend PolyQ operator*(const Rational& s, PolyQ a) { return a *= s; }
  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.terms_ == b.terms_; }

  /// Inverse of a monomial; throws unless is_monomial().
  PolyQ monomial_inverse() const;

  /// Exact evaluation; throws std::invalid_argument on a missing variable.
  Rational eval(const Assignment& a) const;
  Rational eval(const std::vector<Rational>& values) const;

  /// Replace variable `index` by `value`. Negative powers require `value`
  /// to be a monomial.
  PolyQ substitute(std::size_t index, const PolyQ& value) const;
  PolyQ substitute(std::size_t index, const Rational& value) const;

  std::vector<std::size_t> variables_used() const;
  bool uses(std::size_t index) const;
  int max_degree(std::size_t index) const;
  int min_degree(std::size_t index) const;
  /// Coefficient of v^k viewed as a polynomial in v.
  PolyQ coefficient(std::size_t index, int k) const;

  /// Componentwise minimum exponent over all terms (the monomial content).
  Exponent min_exponent() const;
  /// Divide by x^e (exponents may go negative).
  PolyQ shift(const Exponent& e) const;
  /// Multiply by the smallest monomial making all exponents nonnegative.
  PolyQ cleared() const;
  /// Exact division by (1 + v^2) when it divides.
  std::optional<PolyQ> divide_one_plus_square(std::size_t index) const;

  /// Primitive integer form: divided by the rational content, leading
  /// coefficient positive.
  PolyQ primitive() const;

  std::string str() const;

 private:
  void add_term(Exponent e, const Rational& c);
  void normalize_exponent(Exponent& e) const;

  VarSetPtr vars_;
  std::map<Exponent, Rational> terms_;
};

/// Matrix of polynomials over one shared variable list.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(VarSetPtr vars, std::size_t rows, std::size_t cols);
  static PolyMatrix from(VarSetPtr vars, const QMatrix& m);
  static PolyMatrix identity(VarSetPtr vars, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const VarSetPtr& vars() const { return vars_; }
  PolyQ& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const PolyQ& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyMatrix& operator+=(const PolyMatrix& o);
  PolyMatrix& operator-=(const PolyMatrix& o);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const PolyMatrix& a, const QMatrix& b);
  friend PolyMatrix operator*(const QMatrix& a, const PolyMatrix& b);

  QMatrix eval(const Assignment& a) const;
  QMatrix eval(const std::vector<Rational>& values) const;
  PolyMatrix substitute(std::size_t index, const PolyQ& value) const;

 private:
  VarSetPtr vars_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<PolyQ> data_;
};

/// Distinct rational roots of a univariate polynomial given by its
/// coefficients, lowest degree first. Only integer parts up to 10^6 in
/// the extreme coefficients are searched.
std::vector<Rational> rational_roots(std::vector<Rational> coeffs);

/// Number of distinct real roots (Sturm sequence). Zero polynomial throws.
std::size_t real_root_count(std::vector<Rational> coeffs);

/// Evaluate p with the given assignment (exact).
Rational poly_eval(const PolyQ& p, const Assignment& a);

}  // namespace flagacs
