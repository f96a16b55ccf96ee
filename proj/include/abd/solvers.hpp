#pragma once

// Abduction decision and enumeration algorithms plus brute-force oracles.
// Every solver preprocesses its input and reports witnesses over the
// original hypotheses.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "abd/core.hpp"
#include "abd/satenum.hpp"

namespace abd {

enum class AbdMode { abd, pabd };

const char* to_string(AbdMode mode);

struct AbdResult {
  bool answer = false;
  std::optional<Explanation> witness;
  EnumStats stats;
  std::string algorithm;
};

struct ExplanationSet {
  enum class Kind { all_full, subset_maximal_positive };
  std::vector<Explanation> explanations;  // sorted, unique
  Kind kind = Kind::all_full;
};

struct EnumerationResult {
  AbdResult result;
  ExplanationSet set;
};

using StreamFactory = std::function<ModelStreamPtr(const Formula&)>;

// ----------------------------------------------------------------------------
// Oracles

struct OracleLimits {
  Var max_vars = 20;
  std::size_t max_hypotheses = 16;
};

// Per pattern p over H (bit i = H[i]): bit 0 set if some model of KB
// restricts to p, bit 1 set if some such model falsifies a manifestation.
struct PatternTable {
  std::vector<Var> hypotheses;
  std::vector<std::uint8_t> flags;

  static constexpr std::uint8_t kSat = 1;
  static constexpr std::uint8_t kBad = 2;
};

PatternTable pattern_table_serial(const AbductionInstance& inst);
// OpenMP version; identical output. Falls back to the serial kernel when
// built without OpenMP.
PatternTable pattern_table_parallel(const AbductionInstance& inst);
bool parallel_kernel_available();

// Definitional brute force: every consistent E ⊆ Lits(H) (resp. E ⊆ H)
// against all 2^n assignments. Throws PreconditionError above the limits.
AbdResult oracle_abd(const AbductionInstance& inst, OracleLimits limits = {});
AbdResult oracle_pabd(const AbductionInstance& inst, OracleLimits limits = {});
ExplanationSet oracle_full_explanations(const AbductionInstance& inst, OracleLimits limits = {});
ExplanationSet oracle_maximal_positive(const AbductionInstance& inst, OracleLimits limits = {});
// Oracle check of a single (general) explanation.
bool oracle_is_explanation(const AbductionInstance& inst, const Explanation& e,
                           OracleLimits limits = {});

// ----------------------------------------------------------------------------
// Solvers

// Empty deciders default to satenum::decide.
AbdResult baseline_abd(const AbductionInstance& inst, const SatDecider& sat = {});
AbdResult baseline_pabd(const AbductionInstance& inst, const SatDecider& sat = {});

// Model enumeration with ≡_H classes. The set holds every full explanation;
// free hypotheses are expanded in both polarities. Empty factory = enumerate.
EnumerationResult enum_abd(const AbductionInstance& inst, const StreamFactory& factory = {});

struct RecursionOptions {
  // Reject a consistent candidate that is not maximal among consistent
  // subsets of H. Disabling it gives the unguarded recursion, which can
  // accept candidates that do not entail M.
  bool maximality_guard = true;
};

struct RecursionAudit {
  std::uint64_t nodes = 0;
  std::uint64_t duplicate_visits = 0;
  std::uint64_t max_depth = 0;
  std::size_t hypotheses = 0;
  std::set<std::vector<Var>> visited;
};

// Polynomial-space subset recursion from E = H downwards.
AbdResult pabd_recursive(const AbductionInstance& inst, const SatDecider& sat = {},
                         RecursionOptions options = {}, RecursionAudit* audit = nullptr);

enum class DiscardPolicy {
  all_subsets,        // a candidate is discarded if it lies below any failing one
  immediate_subsets,  // one level per failing model, as in the classic listing
};

// Weight-ordered model scan. The set holds the ⊆-maximal positive
// explanations (with all_subsets). Empty factory = enumerate.
EnumerationResult pabd_enum(const AbductionInstance& inst, const StreamFactory& factory = {},
                            DiscardPolicy policy = DiscardPolicy::all_subsets);

// P-ABD for 1-valid knowledge bases: yes iff H explains M.
AbdResult pabd_one_valid(const AbductionInstance& inst, const SatDecider& sat = {});

// ABD for positive-clause knowledge bases via SimpleSAT.
AbdResult abd_kcnf_pos(const AbductionInstance& inst);

}  // namespace abd
