#pragma once

// SAT decision and model enumeration engines.
//
//   decide / find_model      DPLL with generalised arc-consistency propagation
//   enumerate                all-solutions DPLL (variable branching)
//   sparse_enumerate         per-tuple constraint branching for sparsely
//                            enumerable, branching-closed languages
//   enumerate_weight_ordered models sorted by non-increasing w_H
//   solve_simple_sat         branch and reduce for SimpleSAT^p

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "abd/core.hpp"
#include "abd/langlib.hpp"

namespace abd {

struct EnumStats {
  std::uint64_t branch_nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t models_emitted = 0;
  std::uint64_t max_depth = 0;

  EnumStats& operator+=(const EnumStats& o) {
    branch_nodes += o.branch_nodes;
    leaves += o.leaves;
    models_emitted += o.models_emitted;
    max_depth = std::max(max_depth, o.max_depth);
    return *this;
  }
};

enum class StreamOrder { unordered, weight_non_increasing };

// Pull-based model generator. Emits every model exactly once. Not safe to
// pull from two threads at once.
class ModelStream {
 public:
  virtual ~ModelStream() = default;
  virtual std::optional<Assignment> next() = 0;
  virtual const EnumStats& stats() const = 0;
  virtual StreamOrder order() const { return StreamOrder::unordered; }
  // Hypothesis set the weight ordering refers to (empty when unordered).
  virtual const std::vector<Var>& weight_vars() const;
};

using ModelStreamPtr = std::unique_ptr<ModelStream>;

bool decide(const Formula& formula, EnumStats* stats = nullptr);
std::optional<Assignment> find_model(const Formula& formula, EnumStats* stats = nullptr);

ModelStreamPtr enumerate(const Formula& formula);

// Drains a stream into a vector (stats stay readable on the stream).
std::vector<Assignment> collect(ModelStream& stream);

// Per-tuple constraint branching. Every relation of the formula must belong to
// `closure` (a branching-closed language whose relations of positive arity are
// non-trivial); otherwise ContractViolation is thrown. Constraints of arity
// >= r0 are preferred for branching.
ModelStreamPtr sparse_enumerate(const Formula& formula, const ConstraintLanguage& closure,
                                unsigned r0 = 1);
// Same, with the branching closure of the formula's own relations.
ModelStreamPtr sparse_enumerate(const Formula& formula, unsigned r0 = 1);

// Materialises the stream and stable-sorts by w_H descending.
ModelStreamPtr enumerate_weight_ordered(ModelStreamPtr source, std::vector<Var> hypotheses);
ModelStreamPtr enumerate_weight_ordered(const Formula& formula, std::vector<Var> hypotheses);

// ----------------------------------------------------------------------------
// SimpleSAT^p: positive clauses of width <= p and disjunctions of purely
// negative terms (a term holds iff all its variables are 0).

struct SimpleSatInstance {
  Var num_vars = 0;
  std::vector<std::vector<Var>> positive_clauses;
  std::vector<std::vector<std::vector<Var>>> negative_dnfs;
  unsigned p = 0;

  // Throws StructuralError on empty/oversized clauses or bad indices.
  void validate() const;
  bool satisfied_by(const Assignment& sigma) const;
};

struct SimpleSatResult {
  std::optional<Assignment> model;
  EnumStats stats;
};

SimpleSatResult solve_simple_sat(const SimpleSatInstance& inst);

}  // namespace abd
