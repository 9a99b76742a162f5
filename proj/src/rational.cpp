#include "flagacs/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace flagacs {

Rational::Rational(long num, long den) : q_(num, den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(s));
    return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rational: cannot parse '" + s + "'");
  }
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

bool Rational::is_square() const {
  if (sign() < 0) return false;
  return mpz_perfect_square_p(q_.get_num_mpz_t()) != 0 &&
         mpz_perfect_square_p(q_.get_den_mpz_t()) != 0;
}

Rational Rational::sqrt_exact() const {
  if (!is_square()) throw std::domain_error("Rational: not a perfect square");
  mpz_class n = ::sqrt(mpz_class(q_.get_num()));
  mpz_class d = ::sqrt(mpz_class(q_.get_den()));
  return Rational(n, d);
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::size_t Rational::hash() const {
  std::size_t h1 = std::hash<std::string>{}(q_.get_num().get_str(16));
  std::size_t h2 = std::hash<std::string>{}(q_.get_den().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace flagacs
