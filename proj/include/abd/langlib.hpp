#pragma once

// Constraint-language algebra: substitutions, minors, branching closure,
// sparsity and polymorphism predicates, and the built-in language families.

#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "abd/core.hpp"

namespace abd {

class ConstraintLanguage {
 public:
  ConstraintLanguage() = default;
  explicit ConstraintLanguage(std::vector<RelationRef> relations, std::string schema = {},
                              unsigned arity_cap = 0);

  // Adds r unless a canonically equal relation is present. Returns true if added.
  bool add(RelationRef r);
  bool contains(const Relation& r) const;
  // Canonical member equal to r, or null.
  RelationRef find(const Relation& r) const;

  const std::vector<RelationRef>& relations() const noexcept { return relations_; }
  std::size_t size() const noexcept { return relations_.size(); }
  // Generator tag for unbounded families ("k-CNF", "XSAT", ...), empty otherwise.
  const std::string& schema() const noexcept { return schema_; }
  unsigned arity_cap() const noexcept { return arity_cap_; }
  unsigned max_arity() const noexcept;

  // Relations of the formula, deduplicated.
  static ConstraintLanguage of(const Formula& formula);

 private:
  std::vector<RelationRef> relations_;
  std::unordered_set<RelationRef, RelationHash, RelationEq> index_;
  std::string schema_;
  unsigned arity_cap_ = 0;
};

// Partial map coordinate (0-based) -> value.
struct Fix {
  unsigned index;
  bool value;
};

// R_{|f}: tuples agreeing with f, projected onto the unfixed coordinates
// (kept in their original order).
Relation substitute(const Relation& r, std::span<const Fix> f);

// R_g(y_0..y_{m-1}) = R(y_{g(0)}, ..., y_{g(n-1)}) with n = ar(R).
// g must map onto [0, m). Throws PreconditionError otherwise.
Relation minor(const Relation& r, std::span<const unsigned> g);

// Identifies coordinates i < j; the merged coordinate stays at position i.
Relation identify(const Relation& r, unsigned i, unsigned j);

// Least superset of L closed under single-coordinate substitutions and
// pairwise identifications (hence under all substitutions and
// identification minors). Output order: input order, then discovery order.
ConstraintLanguage branching_closure(const ConstraintLanguage& l);

bool is_non_trivial(const Relation& r);

struct SparsityCertificate {
  double c = 0;
  unsigned r0 = 0;
  unsigned verified_up_to = 0;
};

struct SparsityViolation {
  RelationRef relation;
  double bound = 0;  // c^{ar(R)}
};

std::variant<SparsityCertificate, SparsityViolation> check_sparsity(const ConstraintLanguage& l,
                                                                    double c, unsigned r0);

bool is_one_valid(const ConstraintLanguage& l);
bool is_complement_invariant(const ConstraintLanguage& l);
bool has_constant_polymorphism(const ConstraintLanguage& l, bool constant);

// qfpp-definition of R≠ by identification: R(x_1..x_k) with x_i = x for
// coordinates where the chosen tuple has 0 and x_i = y where it has 1.
struct InequalityDefinition {
  RelationRef source;
  std::vector<bool> second;  // coordinate -> placed on y
  Relation relation;         // the resulting binary minor, equal to R≠
};

// Requires L complement-invariant with some R containing neither constant
// tuple; throws PreconditionError otherwise.
InequalityDefinition derive_inequality_definition(const ConstraintLanguage& l);
Relation derive_inequality(const ConstraintLanguage& l);

// ----------------------------------------------------------------------------
// Built-in relations and families

// CNF clause over `positive.size()` literals; positive[i] is the polarity of
// coordinate i. Contains every tuple except the falsifying one.
Relation clause_relation(const std::vector<bool>& positive);
// Recognises clause relations; returns the literal polarities.
std::optional<std::vector<bool>> match_clause(const Relation& r);

Relation imp_relation();                        // x -> y
Relation parity_relation(unsigned k, bool odd); // x_1 + ... + x_k ≡ odd (mod 2)
// x_1 + ... + x_k ≡ q (mod p), i.e. R_S with S = {i ≤ k : i ≡ q mod p}.
Relation equation_relation(unsigned k, unsigned p, unsigned q);
Relation exactly_one_relation(unsigned k);       // R_{1/k}
Relation all_zero_relation(unsigned k);          // ⊥^k
// R^s_NAE = {0,1}^k \ {0_s, 1_s}, 0_s having coordinate i equal to s_i.
Relation nae_relation(const std::vector<bool>& sign);

ConstraintLanguage k_cnf(unsigned k);
ConstraintLanguage k_cnf_pos(unsigned k);
ConstraintLanguage k_cnf_neg(unsigned k);
ConstraintLanguage imp();
ConstraintLanguage horn(unsigned k);
ConstraintLanguage dual_horn(unsigned k);
ConstraintLanguage aff(unsigned k);
// Every non-trivial x_1+..+x_j ≡ q (mod p) with j ≤ k, 2 ≤ p ≤ j+1, q < p.
ConstraintLanguage equations(unsigned k);
ConstraintLanguage xsat_family(unsigned k);
// All k-ary sign patterns.
ConstraintLanguage nae(unsigned k);

}  // namespace abd
