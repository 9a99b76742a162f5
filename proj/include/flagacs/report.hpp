#pragma once

#include "flagacs/nijenhuis.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace flagacs {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class ModelPreference { automatic, n_minus, m_theta, both };

std::string to_string(ModelPreference p);
ModelPreference parse_model_preference(const std::string& s);

struct RunConfig {
  std::vector<LieType> types;
  ModelPreference model = ModelPreference::automatic;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::size_t threads = 0;      // 0: hardware concurrency
  bool timings = false;
  ChevalleyOptions chevalley;
};

/// Model used for a flag under the automatic rule: m_theta for
/// intermediate C and D flags, n_minus otherwise.
ModuleModel default_model(const LieType& t, const std::vector<std::size_t>& theta);

/// Seed for one flag, derived from the master seed and the flag's text.
std::uint64_t flag_seed(std::uint64_t master, const LieType& t, const std::vector<std::size_t>& theta);

struct ModelVerdict {
  ModuleModel model = ModuleModel::n_minus;
  IsotropyModel im;
  ExistenceResult existence;
  IntegrabilityVerdict verdict;
  std::optional<Decomposition> decomposition;  // absent when a class is odd
  std::size_t moduli_dimension = 0;
  double t_build = 0, t_decompose = 0, t_nijenhuis = 0;  // milliseconds
};

struct FlagRecord {
  LieType lie_type;
  std::vector<std::size_t> theta;
  std::string theta_text;
  bool parity_even = false;
  std::vector<ModelVerdict> verdicts;  // primary first
  std::optional<bool> models_agree;
};

/// Runs the full pipeline on one flag.
FlagRecord analyze_flag(const LieType& t, const std::vector<std::size_t>& theta, const RunConfig& cfg);

struct ClassificationReport {
  RunConfig config;
  std::vector<FlagRecord> records;  // ordered by family, rank, Theta
  std::vector<std::string> even_flags;        // flags with all-even classes
  std::vector<std::string> acs_flags;         // flags with an ACS witness
  std::vector<std::string> integrable_flags;  // flags with an integrable witness
};

/// Sweep over every Theta passing the parity filter, in parallel.
ClassificationReport classify(const RunConfig& cfg);

std::string flag_name(const LieType& t, const std::string& theta_text);

Json to_json(const FlagRecord& r, bool timings, bool full_tree = true);
Json to_json(const ClassificationReport& r);
std::string to_text(const ClassificationReport& r);

/// Single-flag evidence dump (bases, classes, decomposition, commutant,
/// certificate, Nijenhuis table).
Json inspect_json(const FlagRecord& r);
std::string inspect_text(const FlagRecord& r);

/// Replays every certificate in a report. Returns the failures found.
std::vector<std::string> verify_report(const Json& report);

}  // namespace flagacs
