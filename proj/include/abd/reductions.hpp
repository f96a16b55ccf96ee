#pragma once

// Instance transformers between abduction fragments, SAT and QBF, each with a
// machine-checkable report of its variable accounting.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abd/core.hpp"
#include "abd/langlib.hpp"
#include "abd/satenum.hpp"

namespace abd {

// CV: output_vars <= input_vars + added_vars with added_vars a constant.
// LV: output_vars linear in input_vars.
enum class ReductionContract { cv, lv, shrinking };

const char* to_string(ReductionContract c);

struct ReductionReport {
  std::string name;
  std::size_t input_vars = 0;
  std::size_t output_vars = 0;
  std::size_t output_constraints = 0;
  std::size_t added_vars = 0;
  ReductionContract contract = ReductionContract::cv;
  std::vector<std::string> notes;
};

template <class T>
struct Reduced {
  T output;
  ReductionReport report;
};

// ----------------------------------------------------------------------------
// CNF

using Clause = std::vector<Literal>;

struct Cnf {
  Var num_vars = 0;
  std::vector<Clause> clauses;
};

// One clause relation per polarity pattern, shared across constraints.
Formula to_formula(const Cnf& cnf);
// Reads every constraint as a clause of width <= max_width; nullopt if some
// relation is not a clause.
std::optional<Cnf> as_cnf(const Formula& formula, unsigned max_width = Relation::kMaxArity);

// Fragment recognisers. Each returns the maximum clause width, or nullopt
// when the formula is outside the fragment.
std::optional<unsigned> kcnf_pos_width(const Formula& formula);
// Negative clauses and implications; the width counts negative clauses only.
std::optional<unsigned> negimp_width(const Formula& formula);

// ----------------------------------------------------------------------------
// Graphs and QBF

struct ColoredGraph {
  unsigned num_vertices = 0;
  unsigned num_colors = 0;
  std::vector<unsigned> color;                          // vertex -> [0, num_colors)
  std::vector<std::pair<unsigned, unsigned>> edges;     // 0-based, u != v

  // Throws StructuralError on bad colours, loops or out-of-range endpoints.
  void validate() const;
  bool adjacent(unsigned u, unsigned v) const;
};

// ∃X ∀Y Φ with Φ a DNF whose terms have at most three literals.
struct QbfInstance {
  Var num_vars = 0;
  std::vector<Var> exists;
  std::vector<Var> forall;
  std::vector<std::vector<Literal>> terms;

  void validate() const;
};

// Brute-force ∃∀ evaluation.
bool qbf_true(const QbfInstance& q);

// ----------------------------------------------------------------------------
// Transformers

// (P-)ABD over negative k-clauses and implications to ABD over positive
// clauses. Positive explanations E of the input correspond to the negative
// explanations {¬h : h ∈ E} of the output. H ∩ M is folded into fresh h, m.
Reduced<AbductionInstance> negimp_to_pos(const AbductionInstance& inst);

// ABD over positive clauses to SimpleSAT^k over the hypotheses. A model σ
// yields the explanation {¬h : σ(h) = 0}. Requires H, M ⊆ var(KB) and
// H ∩ M = ∅.
Reduced<SimpleSatInstance> abd_to_simplesat(const AbductionInstance& inst);

// Vertex v becomes variable v+1, colour i the manifestation |V|+i+1.
Reduced<AbductionInstance> clique_to_abd(const ColoredGraph& g);

// H = X, M = Y ∪ {s} with s = num_vars + 1.
Reduced<AbductionInstance> qbf_to_abd4cnf(const QbfInstance& q);

// ABD to P-ABD: hypothesis H[i] gets the complement variable n+i+1.
Reduced<AbductionInstance> abd_to_pabd_4cnf(const AbductionInstance& inst);
// Maps a positive explanation of the output back to a general one.
Explanation lift_pabd_witness(const AbductionInstance& input, const Explanation& positive);

// Replaces ⊥/⊤ constraints by R≠ expressed over a relation of gamma, with
// fresh V0 = n+1, V1 = n+2.
Reduced<AbductionInstance> eliminate_constants(const AbductionInstance& inst,
                                               const ConstraintLanguage& gamma);
// Same, with gamma the non-constant relations of the knowledge base.
Reduced<AbductionInstance> eliminate_constants(const AbductionInstance& inst);

// Clause (l_1..l_k) becomes NAE^s(x_1..x_k, V0); adds R≠(V0, V1).
Reduced<AbductionInstance> kcnf_to_nae(const AbductionInstance& inst);

// CNF-SAT to ABD over negative clauses and implications: x' = n+x,
// m_x = 2n+x.
Reduced<AbductionInstance> cnfsat_to_abd_lb(const Cnf& cnf);

// ABD over 2-CNF to CNF-SAT by merging the clauses (l ∨ m) of each
// manifestation m into one clause.
Reduced<Cnf> abd2cnf_to_cnfsat(const AbductionInstance& inst);

}  // namespace abd
