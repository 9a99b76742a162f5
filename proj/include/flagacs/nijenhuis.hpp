#pragma once

#include "flagacs/elimination.hpp"
#include "flagacs/invariants.hpp"

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace flagacs {

/// N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] with the module bracket.
struct NijenhuisTable {
  std::size_t n = 0;
  std::vector<QVector> values;  // pair (i<j) in lexicographic order

  const QVector& at(std::size_t i, std::size_t j) const;
  bool is_zero() const;
  std::size_t nonzero_pairs() const;
};

NijenhuisTable nijenhuis_table(const IsotropyModel& im, const QMatrix& j);

struct SymbolicNijenhuis {
  VarSetPtr vars;
  std::size_t n = 0;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, PolyQ> entries;  // (i<j, k) -> coefficient

  PolyQ coefficient(std::size_t i, std::size_t j, std::size_t k) const;
  /// Distinct nonzero coefficients up to scaling, for elimination.
  std::vector<PolyQ> equations() const;
};

SymbolicNijenhuis nijenhuis_symbolic(const IsotropyModel& im, const PolyMatrix& j);

enum class IntegrabilityStatus { integrable_witness, not_integrable_certified, not_integrable_sampled, family_infeasible, inconclusive };

std::string to_string(IntegrabilityStatus s);

struct VerdictOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  std::size_t max_nodes = 20000;
};

struct IntegrabilityVerdict {
  IntegrabilityStatus status = IntegrabilityStatus::inconclusive;
  ExistenceResult existence;
  std::optional<ParamACS> family;
  std::optional<std::vector<Rational>> point;  // parameter values of the witness
  std::optional<QMatrix> j;                    // integrable structure, module coordinates
  std::optional<CaseNode> tree;                // case analysis behind the verdict
  std::size_t nodes = 0;
  std::size_t samples_tested = 0;
  std::string note;
};

IntegrabilityVerdict integrability_verdict(const IsotropyModel& im, const VerdictOptions& opts = {});
IntegrabilityVerdict integrability_verdict(const IsotropyModel& im, const Decomposition& dec, const VerdictOptions& opts = {});

}  // namespace flagacs
