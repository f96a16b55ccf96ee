#include <map>

#include "abd/reductions.hpp"

namespace abd {

const char* to_string(ReductionContract c) {
  switch (c) {
    case ReductionContract::cv: return "CV";
    case ReductionContract::lv: return "LV";
    case ReductionContract::shrinking: return "shrinking";
  }
  return "?";
}

Formula to_formula(const Cnf& cnf) {
  Formula f(cnf.num_vars);
  std::map<std::vector<bool>, RelationRef> relations;
  for (const Clause& c : cnf.clauses) {
    std::vector<bool> signs;
    std::vector<Var> scope;
    for (const Literal& l : c) {
      signs.push_back(l.positive);
      scope.push_back(l.var);
    }
    auto [it, fresh] = relations.try_emplace(signs);
    if (fresh) it->second = make_ref(clause_relation(signs));
    f.add(it->second, std::move(scope));
  }
  return f;
}

std::optional<Cnf> as_cnf(const Formula& formula, unsigned max_width) {
  Cnf cnf{formula.num_vars(), {}};
  for (const Constraint& c : formula.constraints()) {
    const Relation& r = *c.relation;
    if (r.arity() == 0) {
      if (!r.empty()) continue;  // t
      cnf.clauses.emplace_back();
      continue;
    }
    const auto signs = match_clause(r);
    if (!signs || r.arity() > max_width) return std::nullopt;
    Clause clause;
    for (std::size_t i = 0; i < signs->size(); ++i) clause.push_back({c.scope[i], (*signs)[i]});
    cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

}  // namespace abd
