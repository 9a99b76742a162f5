#pragma once

#include "flagacs/qmatrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flagacs {

struct LieType {
  char family = 'A';  // one of A B C D G
  int rank = 1;

  /// Throws std::invalid_argument for unsupported (family, rank).
  void validate() const;
  std::string str() const;  // e.g. "C4"
  friend auto operator<=>(const LieType&, const LieType&) = default;
};

/// Integer coordinates in the lambda basis.
using Root = std::vector<int>;

Root negate(const Root& r);
Root add(const Root& a, const Root& b);

class RootSystem {
 public:
  explicit RootSystem(LieType t);

  const LieType& type() const { return type_; }
  std::size_t rank() const { return static_cast<std::size_t>(type_.rank); }
  std::size_t coord_dim() const { return dim_; }

  /// Positive roots, ordered by height and then by simple-root coefficients.
  const std::vector<Root>& positive() const { return positive_; }
  const std::vector<Root>& simple() const { return simple_; }
  /// Positive roots followed by their negatives in the same order.
  const std::vector<Root>& roots() const { return roots_; }
  const QMatrix& gram() const { return gram_; }

  std::optional<std::size_t> index(const Root& r) const;
  bool is_root(const Root& r) const { return index(r).has_value(); }
  bool is_positive(const Root& r) const;
  /// Coefficients of r in the simple roots.
  const std::vector<int>& simple_coeffs(const Root& r) const;
  int height(const Root& r) const;

  Rational inner(const Root& a, const Root& b) const;
  /// Cartan pairing <a, b^vee> = 2(a,b)/(b,b).
  int pairing(const Root& a, const Root& b) const;

  /// Largest p with beta - p*alpha a root.
  int chain_down(const Root& alpha, const Root& beta) const;

  /// Text notation: "l1-l2", "2l3", "-l1", "l1+2*l2".
  std::string format(const Root& r) const;
  Root parse(std::string_view text) const;

 private:
  LieType type_;
  std::size_t dim_ = 0;
  std::vector<Root> positive_;
  std::vector<Root> simple_;
  std::vector<Root> roots_;
  QMatrix gram_;
  std::map<Root, std::size_t> index_;
  std::map<Root, std::vector<int>> coeffs_;
};

RootSystem build_root_system(LieType t);

struct ThetaSet {
  std::vector<std::size_t> members;      // indices into simple(), ascending
  std::vector<Root> closure_plus;        // <Theta>^+
  std::vector<Root> closure_minus;       // <Theta>^-
  std::vector<Root> complement_minus;    // Pi^- minus <Theta>^-

  bool contains_member(std::size_t i) const;
};

ThetaSet theta_closure(const RootSystem& rs, std::vector<std::size_t> members);

/// Comma-separated simple roots; empty text is the empty set. Unknown or
/// non-simple tokens throw std::invalid_argument.
std::vector<std::size_t> parse_theta(const RootSystem& rs, std::string_view text);
std::string format_theta(const RootSystem& rs, const std::vector<std::size_t>& members);

/// "A:1-5,B:2-4,G:2" into concrete types; throws on malformed text.
std::vector<LieType> parse_families(std::string_view text);

}  // namespace flagacs
