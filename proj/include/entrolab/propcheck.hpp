#pragma once

// Seeded randomized harness. Every entropy inequality and identity the
// library promises is registered as a named check; run_suite draws random
// instances, evaluates the check, and reports counterexamples that can be
// replayed from their serialized inputs alone.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "entrolab/formats.hpp"
#include "entrolab/probdist.hpp"
#include "entrolab/qentropy.hpp"

namespace entrolab {

// Generators. Each is a pure function of its arguments.

/// Normalized independent standard exponentials: uniform on the simplex.
Distribution random_distribution(std::size_t n, std::uint64_t seed);
Joint2 random_joint2(std::size_t rows, std::size_t cols, std::uint64_t seed);
Joint3 random_joint3(std::array<std::size_t, 3> shape, std::uint64_t seed);
/// Shape of length 2 or 3; FormatError otherwise.
std::variant<Joint2, Joint3> random_joint(std::span<const std::size_t> shape, std::uint64_t seed);
MarkovChain3 random_markov_chain(std::array<std::size_t, 3> sizes, std::uint64_t seed);
/// State i has a rank drawn uniformly from [1, max_rank].
Ensemble random_ensemble(std::size_t n_states, std::size_t dim, std::size_t max_rank,
                         std::uint64_t seed);

/// One relation inside a check: lhs <= rhs, lhs == rhs, or lhs < rhs.
struct Condition {
  enum class Kind { less_equal, equal, less };

  Kind kind;
  double lhs;
  double rhs;
  double tolerance;
  std::string label;

  static Condition le(std::string label, double lhs, double rhs, double tol) {
    return {Kind::less_equal, lhs, rhs, tol, std::move(label)};
  }
  static Condition eq(std::string label, double lhs, double rhs, double tol) {
    return {Kind::equal, lhs, rhs, tol, std::move(label)};
  }
  static Condition lt(std::string label, double lhs, double rhs) {
    return {Kind::less, lhs, rhs, 0.0, std::move(label)};
  }

  /// max(0, lhs - rhs - tol) for <=; |lhs - rhs| for ==; max(0, lhs - rhs)
  /// for <.
  double violation() const;
  bool failed() const;
};

struct DimensionCaps {
  std::size_t classical_max = 5;      // per axis of a Joint2 / Markov alphabet
  std::size_t classical3_max = 4;     // per axis of a Joint3
  std::size_t quantum_min = 2;        // per subsystem
  std::size_t quantum_max = 4;
  std::size_t tripartite = 2;         // each of A, B, C
};

enum class Domain { classical, quantum };

struct Check {
  std::string name;
  std::string eq;  // relation label, e.g. "eq29"
  Domain domain;
  double tolerance;
  std::size_t default_trials;
  std::function<Json(std::uint64_t seed, const DimensionCaps& caps)> generate;
  std::function<std::vector<Condition>(const Json& inputs, double tolerance)> evaluate;
};

/// Every registered invariant.
const std::vector<Check>& registry();

/// Deliberately false checks used to prove the harness can fail.
const std::vector<Check>& mutant_checks();

struct TrialConfig {
  std::uint64_t master_seed = 42;
  /// Overrides every check's default trial count (1000 classical / 300
  /// quantum) when set. Must be >= 1.
  std::optional<std::size_t> trials_per_check;
  DimensionCaps dims;
  std::map<std::string, double> tolerance_overrides;
  std::size_t threads = 1;
};

struct CheckRecord {
  std::string name;
  std::string eq;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_violation = 0.0;
  double elapsed_seconds = 0.0;
};

struct CounterexampleRecord {
  std::string check;
  std::size_t trial = 0;
  Json inputs;
  double violation = 0.0;
  std::string error;  // set when evaluation threw
};

struct CheckReport {
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  std::vector<CounterexampleRecord> counterexamples;
  bool pass = true;
};

/// Stable across platforms and runs: FNV-1a of the name mixed with the
/// master seed and trial index.
std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view check_name,
                         std::size_t trial);

/// The checks selected by `filter`: "all", "classical", "quantum", a check
/// name, or a label such as "eq29". FormatError when nothing matches.
std::vector<const Check*> select_checks(std::string_view filter,
                                        std::span<const Check> checks = registry());

/// Runs the selected checks. Results do not depend on config.threads.
/// Throws InvariantError for trials_per_check == 0 or threads == 0.
CheckReport run_suite(const TrialConfig& config, std::string_view filter,
                      std::span<const Check> checks = registry());

/// Re-evaluates a counterexample from its serialized inputs and returns the
/// violation it produces now.
double replay(const CounterexampleRecord& record, std::span<const Check> checks,
              double tolerance);

/// ReportFile JSON. Timing fields are omitted when include_timing is false.
Json report_to_json(const CheckReport& report, bool include_timing = true);

}  // namespace entrolab
