#include <algorithm>
#include <map>
#include <set>

#include "abd/reductions.hpp"

namespace abd {

void ColoredGraph::validate() const {
  if (color.size() != num_vertices) throw StructuralError("every vertex needs a colour");
  for (unsigned c : color) {
    if (c >= num_colors) throw StructuralError("colour out of range");
  }
  for (const auto& [u, v] : edges) {
    if (u >= num_vertices || v >= num_vertices) throw StructuralError("edge endpoint out of range");
    if (u == v) throw StructuralError("self-loop");
  }
}

bool ColoredGraph::adjacent(unsigned u, unsigned v) const {
  return std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
    return (e.first == u && e.second == v) || (e.first == v && e.second == u);
  });
}

void QbfInstance::validate() const {
  std::set<Var> seen;
  for (Var v : exists) {
    if (v == 0 || v > num_vars || !seen.insert(v).second) throw StructuralError("bad existential variable");
  }
  for (Var v : forall) {
    if (v == 0 || v > num_vars || !seen.insert(v).second) throw StructuralError("bad universal variable");
  }
  for (const auto& t : terms) {
    if (t.size() > 3) throw StructuralError("DNF term wider than 3");
    for (const Literal& l : t) {
      if (!seen.count(l.var)) throw StructuralError("term literal over an unquantified variable");
    }
  }
}

bool qbf_true(const QbfInstance& q) {
  q.validate();
  if (q.exists.size() + q.forall.size() > 24) throw PreconditionError("QBF too large for brute force");
  Assignment a(q.num_vars);
  auto holds = [&] {
    return std::any_of(q.terms.begin(), q.terms.end(), [&](const std::vector<Literal>& t) {
      return std::all_of(t.begin(), t.end(), [&](const Literal& l) { return a[l.var] == l.positive; });
    });
  };
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << q.exists.size()); ++x) {
    for (std::size_t i = 0; i < q.exists.size(); ++i) a.set(q.exists[i], (x >> i) & 1u);
    bool all = true;
    for (std::uint64_t y = 0; all && y < (std::uint64_t{1} << q.forall.size()); ++y) {
      for (std::size_t i = 0; i < q.forall.size(); ++i) a.set(q.forall[i], (y >> i) & 1u);
      all = holds();
    }
    if (all) return true;
  }
  return false;
}

Reduced<AbductionInstance> clique_to_abd(const ColoredGraph& g) {
  g.validate();
  const Var nv = g.num_vertices;
  Formula kb(nv + g.num_colors);
  const RelationRef imp = make_ref(imp_relation());
  const RelationRef nand = make_ref(clause_relation({false, false}));
  for (unsigned v = 0; v < nv; ++v) kb.add(imp, {v + 1, nv + g.color[v] + 1});
  for (unsigned u = 0; u < nv; ++u) {
    for (unsigned v = u + 1; v < nv; ++v) {
      if (!g.adjacent(u, v)) kb.add(nand, {u + 1, v + 1});
    }
  }
  std::vector<Var> hyps, mans;
  for (Var v = 1; v <= nv; ++v) hyps.push_back(v);
  for (Var i = 1; i <= g.num_colors; ++i) mans.push_back(nv + i);
  Reduced<AbductionInstance> out;
  out.output = AbductionInstance::make(std::move(kb), std::move(hyps), std::move(mans));
  out.report = {"clique-to-abd", nv, out.output.num_vars(), out.output.kb.size(), g.num_colors,
                ReductionContract::cv, {}};
  return out;
}

Reduced<AbductionInstance> qbf_to_abd4cnf(const QbfInstance& q) {
  q.validate();
  const Var s = q.num_vars + 1;
  Cnf cnf{s, {}};
  std::vector<Var> targets = q.forall;
  targets.push_back(s);
  std::size_t skipped = 0;
  for (const auto& term : q.terms) {
    std::set<Literal> negated;
    for (const Literal& l : term) negated.insert(l.negated());
    bool tautology = false;
    for (const Literal& l : negated) tautology = tautology || negated.count(l.negated());
    if (tautology) {
      skipped += targets.size();
      continue;
    }
    for (Var t : targets) {
      if (negated.count({t, false})) {
        ++skipped;
        continue;
      }
      std::set<Literal> clause = negated;
      clause.insert({t, true});
      cnf.clauses.emplace_back(clause.begin(), clause.end());
    }
  }
  for (Var y : q.forall) cnf.clauses.push_back({{s, false}, {y, true}});

  Reduced<AbductionInstance> out;
  out.output = AbductionInstance::make(to_formula(cnf), q.exists, targets);
  out.report = {"qbf-to-abd", q.num_vars, s, out.output.kb.size(), 1, ReductionContract::cv, {}};
  if (skipped) out.report.notes.push_back(std::to_string(skipped) + " tautological clause(s) skipped");
  return out;
}

Reduced<AbductionInstance> cnfsat_to_abd_lb(const Cnf& cnf) {
  const Var n = cnf.num_vars;
  Cnf out_cnf{3 * n, {}};
  for (const Clause& c : cnf.clauses) {
    std::set<Literal> mapped;
    for (const Literal& l : c) {
      if (l.var == 0 || l.var > n) throw StructuralError("CNF literal out of range");
      mapped.insert(l.positive ? Literal{n + l.var, false} : l);
    }
    out_cnf.clauses.emplace_back(mapped.begin(), mapped.end());
  }
  std::vector<Var> hyps, mans;
  for (Var x = 1; x <= n; ++x) {
    const Var xc = n + x;
    const Var m = 2 * n + x;
    out_cnf.clauses.push_back({{x, false}, {xc, false}});
    out_cnf.clauses.push_back({{x, false}, {m, true}});
    out_cnf.clauses.push_back({{xc, false}, {m, true}});
    hyps.push_back(x);
    hyps.push_back(xc);
    mans.push_back(m);
  }
  Reduced<AbductionInstance> out;
  out.output = AbductionInstance::make(to_formula(out_cnf), std::move(hyps), std::move(mans));
  out.report = {"cnfsat-to-abd", n, 3 * static_cast<std::size_t>(n), out.output.kb.size(), 2 * static_cast<std::size_t>(n),
                ReductionContract::lv, {}};
  return out;
}

Reduced<Cnf> abd2cnf_to_cnfsat(const AbductionInstance& inst) {
  const auto cnf = as_cnf(inst.kb, 2);
  if (!cnf) throw FragmentError("abd2cnf-to-cnfsat needs a 2-CNF knowledge base");
  const Var n = inst.num_vars();
  std::vector<bool> is_m(n + 1, false);
  for (Var m : inst.manifestations) is_m[m] = true;

  Reduced<Cnf> out;
  out.output.num_vars = n;
  std::map<Var, std::set<Literal>> merged;
  std::set<Var> satisfied;
  for (const Clause& c : cnf->clauses) {
    std::size_t at = c.size();
    for (std::size_t i = 0; i < c.size() && at == c.size(); ++i) {
      if (c[i].positive && is_m[c[i].var]) at = i;
    }
    if (at == c.size()) {
      out.output.clauses.push_back(c);
      continue;
    }
    const Var m = c[at].var;
    bool other = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i == at || c[i] == c[at]) continue;
      merged[m].insert(c[i]);
      other = true;
    }
    if (!other) satisfied.insert(m);
  }
  for (Var m : inst.manifestations) {
    if (satisfied.count(m)) {
      out.report.notes.push_back("unit clause (" + std::to_string(m) + ") makes its merged clause vacuous");
      continue;
    }
    const auto& lits = merged[m];
    out.output.clauses.emplace_back(lits.begin(), lits.end());
  }
  // Clauses form a set; repeated ones come from repeated constraints.
  std::set<Clause> seen;
  std::vector<Clause> unique;
  for (Clause& c : out.output.clauses) {
    std::sort(c.begin(), c.end());
    if (seen.insert(c).second) unique.push_back(std::move(c));
  }
  if (unique.size() < out.output.clauses.size()) {
    out.report.notes.push_back(std::to_string(out.output.clauses.size() - unique.size()) +
                               " duplicate clause(s) removed");
  }
  out.output.clauses = std::move(unique);
  out.report.name = "abd2cnf-to-cnfsat";
  out.report.input_vars = n;
  out.report.output_vars = n;
  out.report.output_constraints = out.output.clauses.size();
  out.report.contract = ReductionContract::cv;
  return out;
}

}  // namespace abd
