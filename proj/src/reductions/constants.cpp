#include <algorithm>
#include <map>

#include "abd/reductions.hpp"

namespace abd {

namespace {

std::vector<Var> with(std::vector<Var> v, Var extra) {
  v.push_back(extra);
  return v;
}

void account(ReductionReport& r, const AbductionInstance& in, const AbductionInstance& out) {
  r.input_vars = in.num_vars();
  r.output_vars = out.num_vars();
  r.output_constraints = out.kb.size();
  r.added_vars = r.output_vars - r.input_vars;
}

}  // namespace

Reduced<AbductionInstance> abd_to_pabd_4cnf(const AbductionInstance& inst) {
  const Var n = inst.num_vars();
  Formula kb = inst.kb;
  kb.add_variables(static_cast<Var>(inst.hypotheses.size()));
  const RelationRef either = make_ref(clause_relation({true, true}));
  const RelationRef not_both = make_ref(clause_relation({false, false}));
  std::vector<Var> hyps = inst.hypotheses;
  for (std::size_t i = 0; i < inst.hypotheses.size(); ++i) {
    const Var x = inst.hypotheses[i];
    const Var xc = n + static_cast<Var>(i) + 1;
    kb.add(either, {x, xc});
    kb.add(not_both, {x, xc});
    hyps.push_back(xc);
  }
  Reduced<AbductionInstance> out;
  out.output = AbductionInstance::make(std::move(kb), std::move(hyps), inst.manifestations);
  out.report.name = "abd-to-pabd";
  out.report.contract = ReductionContract::lv;
  account(out.report, inst, out.output);
  return out;
}

Explanation lift_pabd_witness(const AbductionInstance& input, const Explanation& positive) {
  const Var n = input.num_vars();
  std::vector<Literal> lits;
  for (const Literal& l : positive.literals) {
    if (!l.positive) throw PreconditionError("expected a positive explanation");
    if (l.var <= n) {
      lits.push_back(l);
    } else {
      const std::size_t i = l.var - n - 1;
      if (i >= input.hypotheses.size()) throw PreconditionError("literal outside the complement range");
      lits.push_back({input.hypotheses[i], false});
    }
  }
  return Explanation::make(std::move(lits), ExplanationKind::general);
}

Reduced<AbductionInstance> eliminate_constants(const AbductionInstance& inst,
                                               const ConstraintLanguage& gamma) {
  const InequalityDefinition def = derive_inequality_definition(gamma);
  const Var n = inst.num_vars();
  Formula kb(n);
  const Var v0 = kb.add_variables(2);
  const Var v1 = v0 + 1;
  auto neq = [&](Var a, Var b) {
    std::vector<Var> scope;
    for (bool second : def.second) scope.push_back(second ? b : a);
    kb.add(def.source, std::move(scope));
  };
  std::size_t replaced = 0;
  for (const Constraint& c : inst.kb.constraints()) {
    if (*c.relation == *rel::bottom()) {
      neq(c.scope[0], v1);
      ++replaced;
    } else if (*c.relation == *rel::top()) {
      neq(c.scope[0], v0);
      ++replaced;
    } else {
      kb.add(c);
    }
  }
  neq(v0, v1);
  Reduced<AbductionInstance> out;
  out.output = AbductionInstance::make(std::move(kb), with(inst.hypotheses, v1), with(inst.manifestations, v1));
  out.report.name = "eliminate-constants";
  out.report.contract = ReductionContract::cv;
  out.report.notes.push_back(std::to_string(replaced) + " constant constraint(s) replaced via " +
                             def.source->describe());
  account(out.report, inst, out.output);
  return out;
}

Reduced<AbductionInstance> eliminate_constants(const AbductionInstance& inst) {
  ConstraintLanguage gamma;
  for (const Constraint& c : inst.kb.constraints()) {
    if (*c.relation != *rel::bottom() && *c.relation != *rel::top()) gamma.add(c.relation);
  }
  return eliminate_constants(inst, gamma);
}

Reduced<AbductionInstance> kcnf_to_nae(const AbductionInstance& inst) {
  const auto cnf = as_cnf(inst.kb);
  if (!cnf) throw FragmentError("kcnf-to-nae needs a CNF knowledge base");
  const Var n = inst.num_vars();
  Formula kb(n);
  const Var v0 = kb.add_variables(2);
  const Var v1 = v0 + 1;
  std::map<std::vector<bool>, RelationRef> rels;
  auto nae = [&](std::vector<bool> sign) {
    auto [it, fresh] = rels.try_emplace(sign);
    if (fresh) it->second = make_ref(nae_relation(sign));
    return it->second;
  };
  for (const Clause& c : cnf->clauses) {
    std::vector<bool> sign;
    std::vector<Var> scope;
    for (const Literal& l : c) {
      sign.push_back(!l.positive);
      scope.push_back(l.var);
    }
    sign.push_back(false);
    scope.push_back(v0);
    kb.add(nae(std::move(sign)), std::move(scope));
  }
  kb.add(nae({false, false}), {v0, v1});
  Reduced<AbductionInstance> out;
  out.output = AbductionInstance::make(std::move(kb), with(inst.hypotheses, v1), with(inst.manifestations, v1));
  out.report.name = "kcnf-to-nae";
  out.report.contract = ReductionContract::cv;
  account(out.report, inst, out.output);
  return out;
}

}  // namespace abd
