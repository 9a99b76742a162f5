#pragma once

#include "flagacs/poly.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace flagacs {

/// Real polynomial system: equations = 0, each nonvanishing poly != 0,
/// and each not_all_zero list has a nonzero member. Variable kinds from
/// the VarSet apply (nonvanishing, sign).
struct EliminationProblem {
  VarSetPtr vars;
  std::vector<PolyQ> equations;
  std::vector<PolyQ> nonvanishing;
  std::vector<std::vector<PolyQ>> not_all_zero;
};

/// One node of the case tree. Inner nodes carry the rule applied and
/// one child per case; leaves carry the outcome.
struct CaseNode {
  std::string step;                 // rule and the equation it acted on
  std::vector<std::string> cases;   // label per child
  std::vector<CaseNode> children;
  std::string outcome;              // contradiction | solution | unresolved (leaves)
  std::string detail;

  std::size_t leaves() const;
};

struct EliminationOptions {
  std::size_t max_nodes = 20000;
  /// Exact acceptance test for a candidate point (e.g. recompute N).
  std::function<bool(const std::vector<Rational>&)> accept;
};

struct EliminationResult {
  enum class Status { solution, infeasible, unresolved };
  Status status = Status::unresolved;
  std::optional<std::vector<Rational>> point;
  CaseNode tree;
  std::size_t nodes = 0;
};

std::string to_string(EliminationResult::Status s);

/// Depth-first case analysis. Stops at the first accepted solution.
/// `infeasible` means every leaf ends in a contradiction.
EliminationResult eliminate(const EliminationProblem& p, const EliminationOptions& opts = {});

}  // namespace flagacs
