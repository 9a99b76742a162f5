#pragma once

#include "flagacs/rootsys.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flagacs {

/// Element of the split algebra in the Chevalley basis: a Cartan part in
/// simple-coroot coordinates plus root-vector coefficients keyed by the
/// root's index in RootSystem::roots().
struct AbstractElement {
  QVector h;
  std::map<std::size_t, Rational> x;

  bool is_zero() const;
  AbstractElement& operator+=(const AbstractElement& o);
  AbstractElement& operator-=(const AbstractElement& o);
  AbstractElement& operator*=(const Rational& s);
  friend AbstractElement operator+(AbstractElement a, const AbstractElement& b) { return a += b; }
  friend AbstractElement operator-(AbstractElement a, const AbstractElement& b) { return a -= b; }
  friend AbstractElement operator*(const Rational& s, AbstractElement a) { return a *= s; }
  friend bool operator==(const AbstractElement& a, const AbstractElement& b);
};

struct ChevalleyOptions {
  /// Index (into the non-simple positive roots, in order) whose
  /// extraspecial sign is taken negative; none by default.
  std::optional<std::size_t> flip_extraspecial;
};

class StructureConstants {
 public:
  explicit StructureConstants(RootSystem rs, ChevalleyOptions opts = {});

  const RootSystem& roots() const { return rs_; }
  std::size_t rank() const { return rs_.rank(); }
  std::size_t num_roots() const { return rs_.roots().size(); }
  /// Basis size: rank Cartan elements followed by all root vectors.
  std::size_t dim() const { return rank() + num_roots(); }

  /// N_{a,b} by root index; zero when a+b is not a root.
  int n(std::size_t a, std::size_t b) const { return table_[a * num_roots() + b]; }
  int n(const Root& a, const Root& b) const;
  /// Sum index of roots a and b, if a root.
  std::optional<std::size_t> sum_index(std::size_t a, std::size_t b) const;

  /// Coroot of root a in simple-coroot coordinates.
  const QVector& coroot(std::size_t a) const { return coroots_[a]; }
  /// <root a, simple coroot i>.
  int cartan(std::size_t a, std::size_t i) const { return cartan_[a * rank() + i]; }

  /// Extraspecial pair (alpha, beta) for each non-simple positive root.
  const std::vector<std::pair<std::size_t, std::size_t>>& extraspecial() const { return extraspecial_; }
  std::string convention_id() const;

  AbstractElement zero() const;
  AbstractElement x(std::size_t root_index, const Rational& c = 1) const;
  AbstractElement x(const Root& r, const Rational& c = 1) const;
  /// Simple coroot h_i.
  AbstractElement h(std::size_t i) const;
  /// Basis element k in the ordering (h_1..h_r, X_roots...).
  AbstractElement basis(std::size_t k) const;
  /// Compact element X_a - X_{-a}.
  AbstractElement compact(const Root& positive_root) const;

  AbstractElement bracket(const AbstractElement& a, const AbstractElement& b) const;

  /// Dense coordinates in the basis ordering and back.
  QVector coords(const AbstractElement& e) const;
  AbstractElement from_coords(const QVector& v) const;

 private:
  int compute(std::size_t a, std::size_t b);
  int special(std::size_t a, std::size_t b);

  RootSystem rs_;
  ChevalleyOptions opts_;
  std::vector<int> table_;
  std::vector<std::int8_t> known_;
  std::vector<int> sum_;  // index of a+b or -1
  std::vector<QVector> coroots_;
  std::vector<int> cartan_;
  std::vector<std::pair<std::size_t, std::size_t>> extraspecial_;
  std::vector<int> extraspecial_of_;  // per positive root, index into extraspecial_ or -1
};

StructureConstants generate_constants(const RootSystem& rs, ChevalleyOptions opts = {});

AbstractElement bracket_abstract(const StructureConstants& sc, const AbstractElement& x,
                                 const AbstractElement& y);

/// Checks the Jacobi identity on basis triples. Exhaustive when
/// sample_triples is zero, otherwise on that many seeded random triples.
/// Returns the number of violating triples.
std::size_t jacobi_violations(const StructureConstants& sc, std::size_t sample_triples = 0,
                              std::uint64_t seed = 0);

}  // namespace flagacs
