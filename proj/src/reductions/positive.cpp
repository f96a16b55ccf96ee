#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "abd/reductions.hpp"

namespace abd {

namespace {

std::vector<bool> membership(Var n, const std::vector<Var>& vars) {
  std::vector<bool> in(n + 1, false);
  for (Var v : vars) in[v] = true;
  return in;
}

// (KB, H, M) = ((x1 ∨ x2), ∅, {x1}): KB does not entail x1.
AbductionInstance negative_instance(Var n) {
  Formula kb(std::max<Var>(n, 2));
  kb.add(make_ref(clause_relation({true, true})), {1, 2});
  return AbductionInstance::make(std::move(kb), {}, {1});
}

std::vector<Var> sorted_unique(std::vector<Var> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

constexpr std::uint64_t kMaxSubsetChecks = 5'000'000;

}  // namespace

Reduced<AbductionInstance> negimp_to_pos(const AbductionInstance& inst) {
  const auto width = negimp_width(inst.kb);
  if (!width) throw FragmentError("negimp-to-pos needs negative clauses and implications only");

  Reduced<AbductionInstance> out;
  out.report.name = "negimp-to-pos";
  out.report.input_vars = inst.num_vars();
  out.report.contract = ReductionContract::cv;
  auto finish = [&](AbductionInstance result) {
    out.output = std::move(result);
    out.report.output_vars = out.output.num_vars();
    out.report.output_constraints = out.output.kb.size();
    out.report.added_vars = out.report.output_vars - out.report.input_vars;
    return out;
  };

  const PreprocessResult pre = preprocess(inst, PreprocessOptions{.resolve_overlap = false});
  if (pre.verdict == PreprocessVerdict::trivially_no) {
    out.report.notes.push_back("unexplainable manifestation; mapped to a fixed negative instance");
    return finish(negative_instance(inst.num_vars()));
  }

  Formula kb = pre.instance.kb;
  std::vector<Var> hyps = pre.instance.hypotheses;
  std::vector<Var> mans = pre.instance.manifestations;
  std::vector<Var> overlap;
  std::set_intersection(hyps.begin(), hyps.end(), mans.begin(), mans.end(), std::back_inserter(overlap));
  if (!overlap.empty()) {
    const Var h = kb.add_variables(2);
    const Var m = h + 1;
    const RelationRef imp = make_ref(imp_relation());
    kb.add(imp, {h, m});
    for (Var x : overlap) kb.add(imp, {h, x});
    std::erase_if(hyps, [&](Var v) { return std::binary_search(overlap.begin(), overlap.end(), v); });
    std::erase_if(mans, [&](Var v) { return std::binary_search(overlap.begin(), overlap.end(), v); });
    hyps.push_back(h);
    mans.push_back(m);
    out.report.notes.push_back("H and M overlap folded into fresh variables " + std::to_string(h) + ", " +
                               std::to_string(m));
  }
  const Var n = kb.num_vars();

  std::vector<std::vector<Var>> succ(n + 1);
  std::vector<std::vector<Var>> negative;
  for (const Constraint& c : kb.constraints()) {
    const auto signs = *match_clause(*c.relation);
    if (signs.size() == 2 && signs[0] != signs[1]) {
      const Var from = signs[0] ? c.scope[1] : c.scope[0];
      const Var to = signs[0] ? c.scope[0] : c.scope[1];
      succ[from].push_back(to);
    } else {
      negative.push_back(sorted_unique(c.scope));
    }
  }

  Formula pos(n);
  const RelationRef or2 = make_ref(clause_relation({true, true}));
  for (Var h : hyps) {
    std::vector<bool> reach(n + 1, false);
    std::deque<Var> queue{h};
    reach[h] = true;
    while (!queue.empty()) {
      const Var x = queue.front();
      queue.pop_front();
      for (Var y : succ[x]) {
        if (!reach[y]) {
          reach[y] = true;
          queue.push_back(y);
        }
      }
    }
    const bool conflict = std::any_of(negative.begin(), negative.end(), [&](const std::vector<Var>& c) {
      return std::all_of(c.begin(), c.end(), [&](Var v) { return reach[v]; });
    });
    for (Var m : mans) {
      if (conflict || reach[m]) pos.add(or2, {h, m});
    }
  }

  const unsigned k = std::max(*width, 1u);
  std::uint64_t checks = 0;
  for (unsigned j = 0; j <= std::min<std::size_t>(k, hyps.size()); ++j) {
    std::uint64_t c = 1;
    for (unsigned i = 0; i < j; ++i) c = c * (hyps.size() - i) / (i + 1);
    checks += c;
  }
  if (checks > kMaxSubsetChecks) throw PreconditionError("negimp-to-pos: too many hypothesis subsets to test");

  std::vector<Literal> base;
  for (Var m : mans) base.push_back({m, true});
  std::vector<std::vector<Var>> inconsistent;
  std::vector<std::size_t> pick;
  std::map<unsigned, RelationRef> clause_rels;
  for (unsigned size = 0; size <= std::min<std::size_t>(k, hyps.size()); ++size) {
    pick.resize(size);
    for (unsigned i = 0; i < size; ++i) pick[i] = i;
    for (bool more = true; more;) {
      std::vector<Var> subset;
      for (std::size_t i : pick) subset.push_back(hyps[i]);
      const bool covered = std::any_of(inconsistent.begin(), inconsistent.end(), [&](const std::vector<Var>& s) {
        return std::includes(subset.begin(), subset.end(), s.begin(), s.end());
      });
      if (!covered) {
        std::vector<Literal> lits = base;
        for (Var h : subset) lits.push_back({h, true});
        if (!decide(conjoin_literals(kb, lits))) {
          if (size == 0) {
            out.report.notes.push_back("KB and M are jointly inconsistent; mapped to a fixed negative instance");
            return finish(negative_instance(n));
          }
          inconsistent.push_back(subset);
          auto [it, fresh] = clause_rels.try_emplace(size);
          if (fresh) it->second = make_ref(clause_relation(std::vector<bool>(size, true)));
          pos.add(it->second, subset);
        }
      }
      more = false;
      for (std::size_t i = size; i-- > 0;) {
        if (pick[i] < hyps.size() - size + i) {
          ++pick[i];
          for (std::size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
          more = true;
          break;
        }
      }
    }
  }
  return finish(AbductionInstance::make(std::move(pos), std::move(hyps), std::move(mans)));
}

Reduced<SimpleSatInstance> abd_to_simplesat(const AbductionInstance& inst) {
  const auto width = kcnf_pos_width(inst.kb);
  if (!width) throw FragmentError("abd-to-simplesat needs a positive CNF knowledge base");
  const Var n = inst.num_vars();
  const std::vector<Var> occurring = inst.kb.occurring_variables();
  const auto in_kb = membership(n, occurring);
  const auto is_h = membership(n, inst.hypotheses);
  const auto is_m = membership(n, inst.manifestations);
  for (Var v : inst.hypotheses) {
    if (!in_kb[v] || is_m[v]) throw PreconditionError("abd-to-simplesat needs a preprocessed instance");
  }
  for (Var v : inst.manifestations) {
    if (!in_kb[v]) throw PreconditionError("abd-to-simplesat needs a preprocessed instance");
  }

  Reduced<SimpleSatInstance> out;
  out.report.name = "abd-to-simplesat";
  out.report.input_vars = n;
  out.report.contract = ReductionContract::shrinking;
  SimpleSatInstance& s = out.output;
  s.num_vars = n;
  s.p = *width;
  std::vector<std::size_t> dnf_of(n + 1, 0);
  for (std::size_t i = 0; i < inst.manifestations.size(); ++i) dnf_of[inst.manifestations[i]] = i;
  s.negative_dnfs.resize(inst.manifestations.size());

  std::size_t dropped_other = 0, dropped_multi = 0;
  for (const Constraint& c : inst.kb.constraints()) {
    const std::vector<Var> vars = sorted_unique(c.scope);
    std::vector<Var> hs;
    std::vector<Var> ms;
    bool other = false;
    for (Var v : vars) {
      if (is_h[v]) hs.push_back(v);
      else if (is_m[v]) ms.push_back(v);
      else other = true;
    }
    if (other) {
      ++dropped_other;
    } else if (ms.size() >= 2) {
      ++dropped_multi;
    } else if (ms.empty()) {
      s.positive_clauses.push_back(std::move(hs));
    } else {
      s.negative_dnfs[dnf_of[ms[0]]].push_back(std::move(hs));
    }
  }
  if (dropped_other) {
    out.report.notes.push_back(std::to_string(dropped_other) + " clause(s) with non-H, non-M variables dropped");
  }
  if (dropped_multi) {
    out.report.notes.push_back(std::to_string(dropped_multi) + " clause(s) with several manifestations dropped");
  }

  std::vector<Var> used;
  for (const auto& c : s.positive_clauses) used.insert(used.end(), c.begin(), c.end());
  for (const auto& dnf : s.negative_dnfs) {
    for (const auto& t : dnf) used.insert(used.end(), t.begin(), t.end());
  }
  out.report.output_vars = sorted_unique(std::move(used)).size();
  out.report.output_constraints = s.positive_clauses.size() + s.negative_dnfs.size();
  return out;
}

}  // namespace abd
