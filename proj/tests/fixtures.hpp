#pragma once

#include <random>
#include <vector>

#include "abd/core.hpp"
#include "abd/langlib.hpp"
#include "abd/satenum.hpp"

namespace fixture {

using namespace abd;

inline constexpr Var A = 1, B = 2, C = 3, D = 4, E = 5;

// A∧B→C, D→B, ¬E→C, ¬E→¬D with H = {A, D, E}, M = {C}.
inline AbductionInstance example1() {
  Formula kb(5);
  kb.add(make_ref(clause_relation({false, false, true})), {A, B, C});
  kb.add(make_ref(imp_relation()), {D, B});
  kb.add(make_ref(clause_relation({true, true})), {E, C});
  kb.add(make_ref(imp_relation()), {D, E});
  return AbductionInstance::make(std::move(kb), {A, D, E}, {C});
}

inline SatDecider sat() {
  return [](const Formula& f) { return decide(f); };
}

inline Explanation lits(std::vector<long> signed_vars, ExplanationKind kind = ExplanationKind::general) {
  std::vector<Literal> out;
  for (long v : signed_vars) out.push_back(Literal::from_int(v));
  return Explanation::make(std::move(out), kind);
}

// Random formula over a relation pool with distinct-variable scopes.
inline Formula random_formula(Var n, std::size_t constraints, const std::vector<RelationRef>& pool,
                              std::mt19937_64& rng) {
  Formula f(n);
  for (std::size_t i = 0; i < constraints; ++i) {
    const RelationRef& r = pool[rng() % pool.size()];
    if (r->arity() > n) continue;
    std::vector<Var> vars(n);
    for (Var v = 0; v < n; ++v) vars[v] = v + 1;
    std::shuffle(vars.begin(), vars.end(), rng);
    vars.resize(r->arity());
    f.add(r, vars);
  }
  return f;
}

inline AbductionInstance random_instance(Var n, std::size_t constraints, const std::vector<RelationRef>& pool,
                                         std::mt19937_64& rng) {
  Formula kb = random_formula(n, constraints, pool, rng);
  std::vector<Var> h, m;
  for (Var v = 1; v <= n; ++v) {
    const unsigned roll = rng() % 10;
    if (roll < 4) h.push_back(v);
    else if (roll < 6) m.push_back(v);
  }
  return AbductionInstance::make(std::move(kb), h, m);
}

inline std::vector<RelationRef> mixed_pool() {
  return {make_ref(imp_relation()),
          make_ref(clause_relation({true, true})),
          make_ref(clause_relation({false, false})),
          make_ref(clause_relation({true, false, true})),
          make_ref(exactly_one_relation(3)),
          make_ref(parity_relation(3, true)),
          make_ref(nae_relation({false, false, false})),
          rel::neq(),
          rel::bottom(),
          rel::top()};
}

}  // namespace fixture
