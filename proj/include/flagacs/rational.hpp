#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace flagacs {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Thin value wrapper around GMP's mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpz_class& v) : q_(v) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "n", "-n", "n/d".
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Rational inverse() const;

  /// Exact square root when it exists.
  bool is_square() const;
  Rational sqrt_exact() const;

  /// "num/den", or "num" when the denominator is 1.
  std::string str() const;
  double to_double() const { return q_.get_d(); }
  std::size_t hash() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Greatest common divisor / least common multiple on integers.
mpz_class gcd(const mpz_class& a, const mpz_class& b);
mpz_class lcm(const mpz_class& a, const mpz_class& b);

}  // namespace flagacs

template <>
struct std::hash<flagacs::Rational> {
  std::size_t operator()(const flagacs::Rational& r) const { return r.hash(); }
};
