#pragma once

#include "flagacs/isotropy.hpp"
#include "flagacs/poly.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace flagacs {

struct Commutant {
  std::vector<QMatrix> basis;
  std::size_t dim() const { return basis.size(); }
};

/// Endomorphisms commuting with every M and k_Theta generator. Sparse
/// elimination restricted to entries linking equal M-characters.
Commutant commutant(const IsotropyModel& im);

/// Same space computed densely over all n^2 unknowns (cross-check).
Commutant commutant_dense(const IsotropyModel& im);

/// Matrix of generator g restricted to the invariant subspace w, in the
/// basis of w. Throws std::invalid_argument if w is not g-invariant.
QMatrix restrict_to(const QMatrix& g, const Subspace& w);

/// Basis of equivariant maps w1 -> w2, each a dim(w2) x dim(w1) matrix in
/// the subspace bases. Throws std::invalid_argument unless both are
/// invariant under all generators.
std::vector<QMatrix> intertwiners(const IsotropyModel& im, const Subspace& w1, const Subspace& w2);

struct IrredComponent {
  Subspace space;
  std::size_t endo_dim = 0;
  std::size_t equivalence_class = 0;
  bool cyclic_certified = false;
};

struct Decomposition {
  std::vector<IrredComponent> components;
  std::vector<std::vector<std::size_t>> classes;  // component ids per equivalence class
  std::vector<Rational> inner_weights;            // invariant diagonal inner product
  Commutant comm;

  std::vector<QMatrix> coords;                    // per component: orthogonal projection coordinates (d x n)

  Subspace isotypic(std::size_t cls) const;
  /// pi_to * t restricted to component `from`, in component bases.
  QMatrix compress(const QMatrix& t, std::size_t from, std::size_t to) const;
  /// A commutant-induced isomorphism from -> to, normalized so its first
  /// nonzero entry is 1. Empty when the components are inequivalent.
  std::optional<QMatrix> iso(std::size_t from, std::size_t to) const;
  /// An equivariant K with K^2 = -I on one component, when a rational one
  /// is found.
  std::optional<QMatrix> complex_unit(std::size_t comp) const;
};

/// Seed only affects the choice of random splitting elements and the
/// cyclic certification vectors; the resulting components are checked.
Decomposition decompose(const IsotropyModel& im, std::uint64_t seed = 0);

struct ACSWitness {
  QMatrix j;
  bool zero_dimensional = false;
  std::string construction;

  /// J^2 + I.
  QMatrix square_residual() const;
  /// [J, g] for each generator (M first, then k_Theta).
  std::vector<QMatrix> commutation_residuals(const IsotropyModel& im) const;
  bool verify(const IsotropyModel& im) const;
};

struct Obstruction {
  std::string kind;  // odd_m_class | odd_forced_subspace
  Subspace subspace;
  std::size_t dim = 0;
  std::vector<std::string> derivation;

  /// Odd dimension and invariance under every commutant element.
  bool verify(const IsotropyModel& im, const Commutant& c) const;
};

struct ExistenceResult {
  enum class Status { witness, obstruction, inconclusive };
  Status status = Status::inconclusive;
  std::optional<ACSWitness> witness;
  std::optional<Obstruction> obstruction;
  std::string note;
};

std::string to_string(ExistenceResult::Status s);

ExistenceResult acs_exists(const IsotropyModel& im, const Decomposition& dec);
ExistenceResult acs_exists(const IsotropyModel& im);

/// One block of a parametrized family, covering one isotypic class.
struct ParamBlock {
  std::string kind;  // laurent2 | generic_real | complex_sign | generic_commutant
  std::vector<std::size_t> vars;
  std::size_t isotypic_class = 0;
  std::size_t multiplicity = 0;
  std::size_t irrep_dim = 0;
  std::size_t offset = 0;           // first adapted coordinate
  std::size_t size = 0;             // adapted coordinates covered
  std::vector<QMatrix> span;        // generic_commutant: endomorphism basis
  QMatrix unit;                     // a valid block value (size x size)
};

struct ParamACS {
  VarSetPtr vars;
  PolyMatrix j;                                // module coordinates
  std::vector<PolyQ> constraints;              // must vanish
  std::vector<PolyQ> nonvanishing;             // each must be nonzero
  std::vector<std::vector<PolyQ>> not_all_zero;  // each list must not vanish jointly
  std::vector<ParamBlock> blocks;
  QMatrix frame;                               // adapted basis as columns

  /// A seeded valid assignment (values indexed like vars).
  std::vector<Rational> sample(std::mt19937_64& rng) const;
  /// Whether an assignment satisfies all constraints and side conditions.
  bool admissible(const std::vector<Rational>& values) const;
};

/// Throws std::invalid_argument when some M-class is odd or no
/// structure exists.
ParamACS param_family(const IsotropyModel& im, const Decomposition& dec);
ParamACS param_family(const IsotropyModel& im);

std::size_t moduli_dimension(const IsotropyModel& im);

}  // namespace flagacs
