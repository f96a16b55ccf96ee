#pragma once

// Variable-indexed data model for Boolean constraint formulas and
// propositional abduction instances.
//
// Variables are dense 1-based integers. A relation is an explicit, sorted
// set of bit-encoded tuples: coordinate i (0-based) of tuple t is bit i of t.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "abd/errors.hpp"

namespace abd {

using Var = std::uint32_t;

struct Literal {
  Var var = 0;
  bool positive = true;

  Literal negated() const { return {var, !positive}; }
  // DIMACS-style signed integer.
  long to_int() const { return positive ? static_cast<long>(var) : -static_cast<long>(var); }
  static Literal from_int(long v);

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// ----------------------------------------------------------------------------
// Relation

class Relation {
 public:
  using Tuple = std::uint32_t;
  static constexpr unsigned kMaxArity = 24;

  // The 0-ary empty relation f.
  Relation() = default;
  // Tuples are canonicalised (sorted, deduplicated). Throws StructuralError
  // if a tuple has bits above the arity.
  Relation(unsigned arity, std::vector<Tuple> tuples, std::string name = {});

  static Relation from_predicate(unsigned arity, const std::function<bool(Tuple)>& pred,
                                 std::string name = {});

  unsigned arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return tuples_.size(); }
  bool empty() const noexcept { return tuples_.empty(); }
  std::span<const Tuple> tuples() const noexcept { return tuples_; }
  const std::string& name() const noexcept { return name_; }

  bool contains(Tuple t) const noexcept;
  // |R| == 2^arity.
  bool is_full() const noexcept;
  std::size_t hash() const noexcept { return hash_; }

  Relation with_name(std::string name) const;
  // Tuples written as bit strings, coordinate 0 first ("01;10").
  std::string tuple_string(Tuple t) const;
  std::string describe() const;

  static bool bit(Tuple t, unsigned i) noexcept { return ((t >> i) & 1u) != 0; }
  static Tuple all_ones(unsigned arity) noexcept {
    return arity == 0 ? 0u : static_cast<Tuple>((std::uint64_t{1} << arity) - 1);
  }

  // Canonical equality: arity and tuple set. Names are labels only.
  friend bool operator==(const Relation& a, const Relation& b) noexcept {
    return a.arity_ == b.arity_ && a.hash_ == b.hash_ && a.tuples_ == b.tuples_;
  }

 private:
  void finish();

  unsigned arity_ = 0;
  std::vector<Tuple> tuples_;
  std::vector<std::uint64_t> bitmap_;  // membership table for small arities
  std::size_t hash_ = 0;
  std::string name_;
};

using RelationRef = std::shared_ptr<const Relation>;

inline RelationRef make_ref(Relation r) { return std::make_shared<const Relation>(std::move(r)); }

struct RelationHash {
  std::size_t operator()(const RelationRef& r) const noexcept { return r->hash(); }
};
struct RelationEq {
  bool operator()(const RelationRef& a, const RelationRef& b) const noexcept { return *a == *b; }
};

// Built-in relations shared by every module.
namespace rel {
RelationRef bottom();       // ⊥ = {(0)}
RelationRef top();          // ⊤ = {(1)}
RelationRef false0();       // f = ∅, arity 0
RelationRef true0();        // t = {()}
RelationRef neq();          // R≠ = {(0,1),(1,0)}
}  // namespace rel

// ----------------------------------------------------------------------------
// Formulas and assignments

struct Constraint {
  RelationRef relation;
  std::vector<Var> scope;

  friend bool operator==(const Constraint& a, const Constraint& b) {
    return a.scope == b.scope && *a.relation == *b.relation;
  }
};

class Formula {
 public:
  explicit Formula(Var num_vars = 0) : num_vars_(num_vars) {}

  Var num_vars() const noexcept { return num_vars_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  std::size_t size() const noexcept { return constraints_.size(); }

  // Throws StructuralError on arity mismatch or out-of-range variables.
  void add(RelationRef relation, std::vector<Var> scope);
  void add(const Constraint& c) { add(c.relation, c.scope); }
  // Extends the variable range; returns the first new variable.
  Var add_variables(Var count);

  // Sorted variables occurring in some scope (var(φ)).
  std::vector<Var> occurring_variables() const;
  unsigned max_arity() const noexcept;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Var num_vars_ = 0;
  std::vector<Constraint> constraints_;
};

// Total assignment over 1..n.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(Var num_vars);
  static Assignment from_bits(Var num_vars, std::uint64_t bits);

  Var size() const noexcept { return n_; }
  bool operator[](Var v) const noexcept {
    const Var i = v - 1;
    return ((words_[i >> 6] >> (i & 63)) & 1u) != 0;
  }
  void set(Var v, bool value) noexcept {
    const Var i = v - 1;
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (value) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
  }
  // Number of variables of `vars` set to 1.
  std::size_t weight(std::span<const Var> vars) const noexcept;
  std::size_t hash() const noexcept;
  std::string to_string() const;  // "0110..." for x1..xn

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  Var n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct AssignmentHash {
  std::size_t operator()(const Assignment& a) const noexcept { return a.hash(); }
};

// Throws StructuralError if sigma does not cover the formula's variables.
bool evaluate(const Formula& formula, const Assignment& sigma);

// Conjoins ⊥(x) / ⊤(x) unit constraints for the literals.
Formula conjoin_literals(const Formula& formula, std::span<const Literal> literals);

// ----------------------------------------------------------------------------
// Abduction

struct AbductionInstance {
  Formula kb;
  std::vector<Var> hypotheses;      // H, sorted and unique
  std::vector<Var> manifestations;  // M, sorted and unique

  // Sorts/deduplicates H and M and range-checks them against kb.
  static AbductionInstance make(Formula kb, std::vector<Var> hypotheses,
                                std::vector<Var> manifestations);

  Var num_vars() const noexcept { return kb.num_vars(); }

  friend bool operator==(const AbductionInstance&, const AbductionInstance&) = default;
};

enum class ExplanationKind { full, positive, general };

const char* to_string(ExplanationKind kind);

struct Explanation {
  std::vector<Literal> literals;  // sorted by variable
  ExplanationKind kind = ExplanationKind::general;

  // Sorts and checks consistency (no variable in both polarities).
  static Explanation make(std::vector<Literal> literals, ExplanationKind kind);
  std::string to_string() const;

  friend bool operator==(const Explanation& a, const Explanation& b) {
    return a.literals == b.literals;
  }
  friend auto operator<=>(const Explanation& a, const Explanation& b) {
    return a.literals <=> b.literals;
  }
};

using SatDecider = std::function<bool(const Formula&)>;

// KB ∧ E satisfiable and KB ∧ E ∧ ¬m unsatisfiable for every m ∈ M.
// Literals of E must range over H.
bool is_explanation(const AbductionInstance& inst, const Explanation& e, const SatDecider& sat);

enum class PreprocessVerdict { unchanged, trivially_reduced, trivially_no };

const char* to_string(PreprocessVerdict verdict);

struct PreprocessOptions {
  // Remove H ∩ M by forcing those variables true with ⊤ constraints.
  bool resolve_overlap = true;
};

struct PreprocessResult {
  AbductionInstance instance;
  PreprocessVerdict verdict = PreprocessVerdict::unchanged;
  // Hypotheses removed from H that any explanation may take positively and
  // must not take negatively (they were also manifestations).
  std::vector<Var> forced_hypotheses;
  // Hypotheses outside var(KB) and outside M: irrelevant, either polarity.
  std::vector<Var> free_hypotheses;

  // Maps an explanation of the reduced instance back to the input instance.
  // Full explanations are completed with positive literals.
  Explanation lift(const Explanation& e) const;
};

PreprocessResult preprocess(const AbductionInstance& inst, PreprocessOptions options = {});

}  // namespace abd
