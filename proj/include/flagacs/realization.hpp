#pragma once

#include "flagacs/chevalley.hpp"

#include <map>
#include <string>
#include <vector>

namespace flagacs {

/// Concrete matrix model of a classical split algebra:
/// sl(l+1,R) for A, so(l,l+1) for B, sp(l,R) for C, so(l,l) for D.
struct MatrixRealization {
  LieType lie_type;
  std::string model;
  std::size_t size = 0;          // matrices are size x size
  std::vector<QMatrix> x;        // image of X_a, per root index
  std::vector<QMatrix> h;        // image of the simple coroots
  std::vector<Rational> kappa;   // image of X_a = kappa_a * standard_matrix(a)

  QMatrix embed(const AbstractElement& e) const;
  /// Number of basis pairs where the bracket is not preserved.
  std::size_t bracket_failures(const StructureConstants& sc) const;
};

/// The standard root vector for a root (positive: as listed for each
/// model; negative: the transpose of the positive one).
QMatrix standard_matrix(const RootSystem& rs, const Root& r);

/// Throws std::invalid_argument for type G. Verifies the homomorphism
/// property and throws std::logic_error if it fails.
MatrixRealization build_realization(const StructureConstants& sc);

/// Diagonal sign matrices generating the finite group M in the model.
/// Each entry is the list of diagonal signs of one element.
std::vector<std::vector<int>> matrix_m_elements(const LieType& t);

/// Label -> coefficient of an element of the compact part of sp(l,R)
/// written in the u(l) basis A[k,j], S[k,j] (k>j) and S[j,j].
/// Throws std::invalid_argument if x is not of the form [A -B; B A]
/// with A antisymmetric and B symmetric.
std::map<std::string, Rational> u_l_image(const QMatrix& x);

}  // namespace flagacs
