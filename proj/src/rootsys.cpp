#include "flagacs/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace flagacs {

void LieType::validate() const {
  bool ok = false;
  switch (family) {
    case 'A': ok = rank >= 1; break;
    case 'B': ok = rank >= 2; break;
    case 'C': ok = rank >= 2; break;
    case 'D': ok = rank >= 3; break;
    case 'G': ok = rank == 2; break;
    default: throw std::invalid_argument(std::string("unknown family '") + family + "'");
  }
  if (!ok) throw std::invalid_argument("invalid rank " + std::to_string(rank) + " for family " + family);
}

std::string LieType::str() const { return std::string(1, family) + std::to_string(rank); }

Root negate(const Root& r) {
  Root n(r);
  for (auto& x : n) x = -x;
  return n;
}

Root add(const Root& a, const Root& b) {
  Root s(a);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
  return s;
}

namespace {

Root unit(std::size_t n, std::size_t i, int c = 1) {
  Root r(n, 0);
  r[i] = c;
  return r;
}

}  // namespace

RootSystem::RootSystem(LieType t) : type_(t) {
  t.validate();
  const std::size_t l = static_cast<std::size_t>(t.rank);
  std::vector<Root> pos;
  switch (t.family) {
    case 'A':
      dim_ = l + 1;
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j) pos.push_back(add(unit(dim_, i), unit(dim_, j, -1)));
      for (std::size_t i = 0; i < l; ++i) simple_.push_back(add(unit(dim_, i), unit(dim_, i + 1, -1)));
      break;
    case 'B':
    case 'C':
    case 'D':
      dim_ = l;
      for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i + 1; j < l; ++j) {
          pos.push_back(add(unit(l, i), unit(l, j, -1)));
          pos.push_back(add(unit(l, i), unit(l, j)));
        }
      if (t.family == 'B')
        for (std::size_t i = 0; i < l; ++i) pos.push_back(unit(l, i));
      if (t.family == 'C')
        for (std::size_t i = 0; i < l; ++i) pos.push_back(unit(l, i, 2));
      for (std::size_t i = 0; i + 1 < l; ++i) simple_.push_back(add(unit(l, i), unit(l, i + 1, -1)));
      if (t.family == 'B') simple_.push_back(unit(l, l - 1));
      if (t.family == 'C') simple_.push_back(unit(l, l - 1, 2));
      if (t.family == 'D') simple_.push_back(add(unit(l, l - 2), unit(l, l - 1)));
      break;
    case 'G':
      dim_ = 2;
      pos = {{1, 0}, {0, 1}, {1, 1}, {1, 2}, {1, 3}, {2, 3}};
      simple_ = {{1, 0}, {0, 1}};
      break;
  }

  gram_ = QMatrix::identity(dim_);
  if (t.family == 'G') gram_ = QMatrix{{6, -3}, {-3, 2}};

  // Simple-root coefficients: solve S c = r with S the simple roots as columns.
  QMatrix s(dim_, simple_.size());
  for (std::size_t j = 0; j < simple_.size(); ++j)
    for (std::size_t i = 0; i < dim_; ++i) s(i, j) = simple_[j][i];
  for (const auto& r : pos) {
    QVector rhs(dim_);
    for (std::size_t i = 0; i < dim_; ++i) rhs[i] = r[i];
    auto c = solve_linear(s, rhs);
    if (!c) throw std::logic_error("RootSystem: root outside the simple-root lattice");
    std::vector<int> ci;
    for (const auto& x : *c) {
      if (!x.is_integer() || x.sign() < 0) throw std::logic_error("RootSystem: positive root not a nonnegative combination");
      ci.push_back(static_cast<int>(x.numerator().get_si()));
    }
    coeffs_[r] = ci;
    std::vector<int> neg;
    for (int x : ci) neg.push_back(-x);
    coeffs_[negate(r)] = neg;
  }

  std::stable_sort(pos.begin(), pos.end(), [&](const Root& a, const Root& b) {
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return coeffs_.at(a) > coeffs_.at(b);
  });
  positive_ = pos;
  roots_ = pos;
  for (const auto& r : pos) roots_.push_back(negate(r));
  for (std::size_t i = 0; i < roots_.size(); ++i) index_[roots_[i]] = i;
}

RootSystem build_root_system(LieType t) { return RootSystem(t); }

std::optional<std::size_t> RootSystem::index(const Root& r) const {
  auto it = index_.find(r);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool RootSystem::is_positive(const Root& r) const {
  auto i = index(r);
  return i && *i < positive_.size();
}

const std::vector<int>& RootSystem::simple_coeffs(const Root& r) const {
  auto it = coeffs_.find(r);
  if (it == coeffs_.end()) throw std::invalid_argument("simple_coeffs: not a root");
  return it->second;
}

int RootSystem::height(const Root& r) const {
  int h = 0;
  for (int c : simple_coeffs(r)) h += c;
  return h;
}

Rational RootSystem::inner(const Root& a, const Root& b) const {
  Rational s;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (a[i] != 0 && b[j] != 0 && !gram_(i, j).is_zero()) s += gram_(i, j) * Rational(a[i] * b[j]);
  return s;
}

int RootSystem::pairing(const Root& a, const Root& b) const {
  Rational p = Rational(2) * inner(a, b) / inner(b, b);
  if (!p.is_integer()) throw std::logic_error("pairing: non-integral Cartan number");
  return static_cast<int>(p.numerator().get_si());
}

int RootSystem::chain_down(const Root& alpha, const Root& beta) const {
  int p = 0;
  Root cur = beta;
  for (;;) {
    Root next(cur);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] -= alpha[i];
    if (!is_root(next)) return p;
    cur = next;
    ++p;
  }
}

std::string RootSystem::format(const Root& r) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < r.size(); ++i) {
    int c = r[i];
    if (c == 0) continue;
    if (c < 0) os << "-";
    else if (!first) os << "+";
    first = false;
    int m = std::abs(c);
    if (m != 1) os << m << (type_.family == 'G' ? "*" : "");
    os << "l" << (i + 1);
  }
  if (first) return "0";
  return os.str();
}

Root RootSystem::parse(std::string_view text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto fail = [&]() -> Root { throw std::invalid_argument("cannot parse root '" + std::string(text) + "'"); };
  if (s.empty()) return fail();
  Root r(dim_, 0);
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      return fail();
    }
    int coef = 1;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      coef = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) coef = coef * 10 + (s[pos++] - '0');
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    if (pos >= s.size() || (s[pos] != 'l' && s[pos] != 'L')) return fail();
    ++pos;
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return fail();
    std::size_t idx = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) idx = idx * 10 + static_cast<std::size_t>(s[pos++] - '0');
    if (idx == 0 || idx > dim_) return fail();
    r[idx - 1] += sign * coef;
  }
  if (!is_root(r)) throw std::invalid_argument("'" + std::string(text) + "' is not a root of " + type_.str());
  return r;
}

bool ThetaSet::contains_member(std::size_t i) const {
  return std::find(members.begin(), members.end(), i) != members.end();
}

ThetaSet theta_closure(const RootSystem& rs, std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (auto m : members)
    if (m >= rs.rank()) throw std::invalid_argument("theta_closure: member out of range");
  ThetaSet t;
  t.members = members;
  for (const auto& r : rs.positive()) {
    const auto& c = rs.simple_coeffs(r);
    bool inside = true;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0 && !t.contains_member(i)) inside = false;
    if (inside) {
      t.closure_plus.push_back(r);
      t.closure_minus.push_back(negate(r));
    } else {
      t.complement_minus.push_back(negate(r));
    }
  }
  return t;
}

std::vector<std::size_t> parse_theta(const RootSystem& rs, std::string_view text) {
  std::vector<std::size_t> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    bool blank = std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); });
    if (blank) {
      if (s.find_first_not_of(" \t") == std::string::npos) continue;
      throw std::invalid_argument("empty token in theta '" + s + "'");
    }
    Root r = rs.parse(tok);
    auto it = std::find(rs.simple().begin(), rs.simple().end(), r);
    if (it == rs.simple().end()) throw std::invalid_argument("'" + tok + "' is not a simple root of " + rs.type().str());
    out.push_back(static_cast<std::size_t>(it - rs.simple().begin()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string format_theta(const RootSystem& rs, const std::vector<std::size_t>& members) {
  std::string s;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k) s += ",";
    s += rs.format(rs.simple()[members[k]]);
  }
  return s;
}

std::vector<LieType> parse_families(std::string_view text) {
  std::vector<LieType> out;
  std::stringstream ss{std::string(text)};
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto colon = tok.find(':');
    if (colon != 1 || tok.size() < 3) throw std::invalid_argument("bad family token '" + tok + "'");
    char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
    std::string range = tok.substr(2);
    int lo = 0, hi = 0;
    try {
      auto dash = range.find('-');
      std::size_t used = 0;
      if (dash == std::string::npos) {
        lo = hi = std::stoi(range, &used);
        if (used != range.size()) throw std::invalid_argument("");
      } else {
        lo = std::stoi(range.substr(0, dash), &used);
        if (used != dash) throw std::invalid_argument("");
        std::string h = range.substr(dash + 1);
        hi = std::stoi(h, &used);
        if (used != h.size()) throw std::invalid_argument("");
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rank range in '" + tok + "'");
    }
    if (lo > hi) throw std::invalid_argument("empty rank range in '" + tok + "'");
    for (int r = lo; r <= hi; ++r) {
      LieType t{fam, r};
      t.validate();
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace flagacs
