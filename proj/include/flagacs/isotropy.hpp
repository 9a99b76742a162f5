#pragma once

#include "flagacs/chevalley.hpp"
#include "flagacs/realization.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flagacs {

enum class ModuleModel { n_minus, n_plus, m_theta };

std::string to_string(ModuleModel m);
ModuleModel parse_model(const std::string& s);

struct FlagSpec {
  LieType lie_type;
  std::vector<std::size_t> theta;  // indices of simple roots
  ModuleModel model = ModuleModel::n_minus;
  ChevalleyOptions chevalley;
};

/// Bits <a, g^vee> mod 2 over the simple roots g.
using MCharacter = std::vector<int>;

MCharacter m_character(const RootSystem& rs, const Root& a);

struct MClass {
  std::vector<Root> roots;  // negative roots, in root order
  MCharacter chi;
  bool even() const { return roots.size() % 2 == 0; }
};

struct MClassPartition {
  std::vector<MClass> classes;  // ordered by lexicographically smallest root
  bool all_even() const;
};

MClassPartition m_classes(const RootSystem& rs, const ThetaSet& theta);
MClassPartition m_classes(const FlagSpec& fs);

/// Every nonempty-module Theta whose classes are all even. Theta = Sigma
/// is excluded since its module is zero. Throws for rank > 12.
std::vector<ThetaSet> m_parity_filter(const LieType& t);

/// Partition of Pi^- minus <Theta>^- induced by diagonal sign matrices in
/// the matrix model equals the character partition.
bool m_matrix_crosscheck(const FlagSpec& fs);

using SparseVec = std::map<std::size_t, Rational>;

struct ModuleBasisElement {
  std::string label;
  AbstractElement element;
  std::size_t key_root;  // root index whose X-coefficient is the coordinate
  Rational scale;        // element = scale * (X_key or X_key - X_-key)
  std::size_t m_class;
};

struct IsotropyModel {
  FlagSpec spec;
  std::shared_ptr<const StructureConstants> sc;
  ThetaSet theta;
  MClassPartition classes;
  std::vector<ModuleBasisElement> basis;
  std::vector<std::string> ktheta_labels;
  std::vector<QMatrix> ktheta_gens;
  std::vector<QMatrix> m_gens;
  std::vector<SparseVec> bracket_table;  // dim*dim, entry (i,j) at i*dim+j
  bool action_residual_zero = true;      // k_Theta action needed no projection
  bool bracket_residual_zero = true;     // brackets needed no projection
  std::vector<long> root_slot;           // root index -> basis index or -1

  std::size_t dim() const { return basis.size(); }
  const SparseVec& bracket(std::size_t i, std::size_t j) const { return bracket_table[i * dim() + j]; }
  /// Module coordinates of an abstract element, dropping components
  /// outside the module. `residual` is set when something was dropped.
  QVector project(const AbstractElement& e, bool* residual = nullptr) const;
  /// Basis indices of the M-class c.
  std::vector<std::size_t> class_members(std::size_t c) const;
  /// Basis index whose key root is root_index.
  std::optional<std::size_t> index_of_root(std::size_t root_index) const;
};

/// Throws std::invalid_argument when m_theta is requested for a family
/// other than C or D.
IsotropyModel build_isotropy(const FlagSpec& fs);

/// The same model with its basis reordered by `perm` (new i = old perm[i]).
IsotropyModel permute_basis(const IsotropyModel& im, const std::vector<std::size_t>& perm);

}  // namespace flagacs
