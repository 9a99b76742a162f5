#include "flagacs/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace flagacs {

std::size_t VarSet::add(std::string name, VarKind kind) {
  if (find(name)) throw std::invalid_argument("VarSet: duplicate variable " + name);
  vars_.push_back({std::move(name), kind});
  return vars_.size() - 1;
}

std::optional<std::size_t> VarSet::find(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

PolyQ::PolyQ(VarSetPtr vars, const Rational& c) : vars_(std::move(vars)) {
  if (!c.is_zero()) terms_[Exponent(nvars(), 0)] = c;
}

PolyQ PolyQ::variable(VarSetPtr vars, std::size_t index, int power) {
  PolyQ p(std::move(vars));
  Exponent e(p.nvars(), 0);
  e.at(index) = power;
  p.add_term(std::move(e), Rational(1));
  return p;
}

PolyQ PolyQ::monomial(VarSetPtr vars, const Exponent& e, const Rational& c) {
  PolyQ p(std::move(vars));
  if (e.size() != p.nvars()) throw std::invalid_argument("PolyQ: exponent length");
  p.add_term(e, c);
  return p;
}

void PolyQ::normalize_exponent(Exponent& e) const {
  for (std::size_t i = 0; i < e.size(); ++i)
    if ((*vars_)[i].kind == VarKind::sign) e[i] = ((e[i] % 2) + 2) % 2;
}

void PolyQ::add_term(Exponent e, const Rational& c) {
  if (c.is_zero()) return;
  normalize_exponent(e);
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(std::move(e), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool PolyQ::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational PolyQ::constant_value() const {
  auto it = terms_.find(Exponent(nvars(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

PolyQ PolyQ::operator-() const {
  PolyQ r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

PolyQ& PolyQ::operator+=(const PolyQ& o) {
  if (!vars_) vars_ = o.vars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

PolyQ& PolyQ::operator-=(const PolyQ& o) {
  if (!vars_) vars_ = o.vars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

PolyQ& PolyQ::operator*=(const PolyQ& o) {
  if (!vars_) vars_ = o.vars_;
  PolyQ r(vars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponent e(e1);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
      r.add_term(std::move(e), c1 * c2);
    }
  terms_ = std::move(r.terms_);
  return *this;
}

PolyQ& PolyQ::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

PolyQ PolyQ::monomial_inverse() const {
  if (!is_monomial()) throw std::domain_error("PolyQ: inverse of a non-monomial");
  const auto& [e, c] = *terms_.begin();
  Exponent ne(e);
  for (auto& x : ne) x = -x;
  return monomial(vars_, ne, c.inverse());
}

Rational PolyQ::eval(const std::vector<Rational>& values) const {
  if (values.size() < nvars()) throw std::invalid_argument("PolyQ: assignment too short");
  Rational sum;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Rational base = e[i] > 0 ? values[i] : values[i].inverse();
      for (int k = 0; k < std::abs(e[i]); ++k) t *= base;
    }
    sum += t;
  }
  return sum;
}

Rational PolyQ::eval(const Assignment& a) const {
  std::vector<Rational> values(nvars());
  for (std::size_t i : variables_used()) {
    auto it = a.find((*vars_)[i].name);
    if (it == a.end()) throw std::invalid_argument("PolyQ: missing variable " + (*vars_)[i].name);
    values[i] = it->second;
  }
  return eval(values);
}

Rational poly_eval(const PolyQ& p, const Assignment& a) { return p.eval(a); }

PolyQ PolyQ::substitute(std::size_t index, const PolyQ& value) const {
  if (!uses(index)) return *this;
  PolyQ inv;
  bool need_inv = min_degree(index) < 0;
  if (need_inv) inv = value.monomial_inverse();
  std::map<int, PolyQ> powers;
  PolyQ r(vars_);
  for (const auto& [e, c] : terms_) {
    int k = e[index];
    Exponent rest(e);
    rest[index] = 0;
    PolyQ t = monomial(vars_, rest, c);
    if (k != 0) {
      auto it = powers.find(k);
      if (it == powers.end()) {
        PolyQ p(vars_, Rational(1));
        const PolyQ& base = k > 0 ? value : inv;
        for (int j = 0; j < std::abs(k); ++j) p *= base;
        it = powers.emplace(k, std::move(p)).first;
      }
      t *= it->second;
    }
    r += t;
  }
  return r;
}

PolyQ PolyQ::substitute(std::size_t index, const Rational& value) const {
  return substitute(index, PolyQ(vars_, value));
}

std::vector<std::size_t> PolyQ::variables_used() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nvars(); ++i)
    if (uses(i)) out.push_back(i);
  return out;
}

bool PolyQ::uses(std::size_t index) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first[index] != 0; });
}

int PolyQ::max_degree(std::size_t index) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[index] > d) d = e[index];
    first = false;
  }
  return d;
}

int PolyQ::min_degree(std::size_t index) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[index] < d) d = e[index];
    first = false;
  }
  return d;
}

PolyQ PolyQ::coefficient(std::size_t index, int k) const {
  PolyQ r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] != k) continue;
    Exponent rest(e);
    rest[index] = 0;
    r.add_term(std::move(rest), c);
  }
  return r;
}

Exponent PolyQ::min_exponent() const {
  Exponent m(nvars(), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

PolyQ PolyQ::shift(const Exponent& s) const {
  PolyQ r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent ne(e);
    for (std::size_t i = 0; i < ne.size(); ++i) ne[i] -= s[i];
    r.add_term(std::move(ne), c);
  }
  return r;
}

PolyQ PolyQ::cleared() const {
  Exponent m = min_exponent();
  for (auto& x : m) x = std::min(x, 0);
  return shift(m);
}

std::optional<PolyQ> PolyQ::divide_one_plus_square(std::size_t index) const {
  // Synthetic division in v, from the top degree down: q_k = p_{k+2} - q_{k+2}.
  if (!uses(index)) return std::nullopt;
  int lo = min_degree(index);
  int hi = max_degree(index);
  if (hi - lo < 2) return std::nullopt;
  std::map<int, PolyQ> q;
  auto qget = [&](int k) { auto it = q.find(k); return it == q.end() ? PolyQ(vars_) : it->second; };
  for (int k = hi - 2; k >= lo; --k) q[k] = coefficient(index, k + 2) - qget(k + 2);
  // Remainder terms in degrees lo and lo+1 must vanish.
  for (int k = lo; k <= lo + 1; ++k)
    if (!(coefficient(index, k) - qget(k)).is_zero()) return std::nullopt;
  PolyQ r(vars_);
  for (auto& [k, c] : q) r += c * variable(vars_, index, k);
  return r;
}

PolyQ PolyQ::primitive() const {
  if (terms_.empty()) return *this;
  mpz_class num = 0, den = 1;
  for (const auto& [e, c] : terms_) {
    num = gcd(num, c.numerator());
    den = lcm(den, c.denominator());
  }
  Rational f(den, num);
  if (terms_.rbegin()->second.sign() < 0) f = -f;
  return *this * f;
}

std::string PolyQ::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool unit = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    Rational mag = c.abs();
    if (first) os << (c.sign() < 0 ? "-" : "");
    else os << (c.sign() < 0 ? " - " : " + ");
    first = false;
    bool wrote = false;
    if (unit || !mag.is_one()) {
      os << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << (*vars_)[i].name;
      if (e[i] != 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

PolyMatrix::PolyMatrix(VarSetPtr vars, std::size_t rows, std::size_t cols)
    : vars_(std::move(vars)), rows_(rows), cols_(cols), data_(rows * cols, PolyQ(vars_)) {}

PolyMatrix PolyMatrix::from(VarSetPtr vars, const QMatrix& m) {
  PolyMatrix r(vars, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = PolyQ(vars, m(i, j));
  return r;
}

PolyMatrix PolyMatrix::identity(VarSetPtr vars, std::size_t n) {
  return from(std::move(vars), QMatrix::identity(n));
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("PolyMatrix: shape");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("PolyMatrix: shape");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("PolyMatrix: product shape");
  PolyMatrix c(a.vars_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

PolyMatrix operator*(const PolyMatrix& a, const QMatrix& b) {
  return a * PolyMatrix::from(a.vars_, b);
}

PolyMatrix operator*(const QMatrix& a, const PolyMatrix& b) {
  return PolyMatrix::from(b.vars_, a) * b;
}

QMatrix PolyMatrix::eval(const Assignment& a) const {
  QMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(a);
  return m;
}

QMatrix PolyMatrix::eval(const std::vector<Rational>& values) const {
  QMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(values);
  return m;
}

PolyMatrix PolyMatrix::substitute(std::size_t index, const PolyQ& value) const {
  PolyMatrix r(*this);
  for (auto& p : r.data_) p = p.substitute(index, value);
  return r;
}

namespace {

void trim(std::vector<Rational>& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

std::vector<mpz_class> small_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0 || n > 1000000) return out;
  unsigned long m = n.get_ui();
  for (unsigned long d = 1; d * d <= m; ++d)
    if (m % d == 0) {
      out.push_back(d);
      if (d * d != m) out.push_back(m / d);
    }
  return out;
}

// Remainder of a / b (b nonzero, trimmed).
std::vector<Rational> poly_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

int sign_at_infinity(const std::vector<Rational>& p, bool negative) {
  int s = p.back().sign();
  if (negative && (p.size() - 1) % 2 == 1) s = -s;
  return s;
}

}  // namespace

std::vector<Rational> rational_roots(std::vector<Rational> p) {
  trim(p);
  std::vector<Rational> roots;
  if (p.empty()) throw std::invalid_argument("rational_roots: zero polynomial");
  if (p[0].is_zero()) {
    roots.push_back(Rational(0));
    while (!p.empty() && p[0].is_zero()) p.erase(p.begin());
  }
  if (p.size() <= 1) return roots;
  mpz_class den = 1;
  for (const auto& c : p) den = lcm(den, c.denominator());
  std::vector<Rational> a;
  for (const auto& c : p) a.push_back(c * Rational(den));
  auto eval = [&](const Rational& x) {
    Rational r(0);
    for (std::size_t i = a.size(); i-- > 0;) r = r * x + a[i];
    return r;
  };
  for (const auto& num : small_divisors(a.front().numerator()))
    for (const auto& dd : small_divisors(a.back().numerator()))
      for (int sg : {1, -1}) {
        Rational x = Rational(sg) * Rational(num) / Rational(dd);
        if (eval(x).is_zero() && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::size_t real_root_count(std::vector<Rational> p) {
  trim(p);
  if (p.empty()) throw std::invalid_argument("real_root_count: zero polynomial");
  if (p.size() == 1) return 0;
  std::vector<std::vector<Rational>> seq{p};
  std::vector<Rational> d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  seq.push_back(d);
  while (seq.back().size() > 1) {
    auto r = poly_rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(r);
  }
  auto changes = [&](bool negative) {
    int last = 0, n = 0;
    for (const auto& q : seq) {
      int s = sign_at_infinity(q, negative);
      if (s != 0 && last != 0 && s != last) ++n;
      if (s != 0) last = s;
    }
    return n;
  };
  return static_cast<std::size_t>(changes(true) - changes(false));
}

}  // namespace flagacs
