#include <algorithm>
#include <sstream>

#include "abd/core.hpp"

namespace abd {

namespace {

void sort_unique(std::vector<Var>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool contains(const std::vector<Var>& sorted, Var v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

AbductionInstance AbductionInstance::make(Formula kb, std::vector<Var> hypotheses,
                                          std::vector<Var> manifestations) {
  sort_unique(hypotheses);
  sort_unique(manifestations);
  for (const auto* set : {&hypotheses, &manifestations}) {
    for (Var v : *set) {
      if (v < 1 || v > kb.num_vars()) {
        throw StructuralError("variable " + std::to_string(v) + " outside 1.." +
                              std::to_string(kb.num_vars()));
      }
    }
  }
  return {std::move(kb), std::move(hypotheses), std::move(manifestations)};
}

const char* to_string(ExplanationKind kind) {
  switch (kind) {
    case ExplanationKind::full: return "full";
    case ExplanationKind::positive: return "positive";
    case ExplanationKind::general: return "general";
  }
  return "general";
}

const char* to_string(PreprocessVerdict verdict) {
  switch (verdict) {
    case PreprocessVerdict::unchanged: return "unchanged";
    case PreprocessVerdict::trivially_reduced: return "trivially-reduced";
    case PreprocessVerdict::trivially_no: return "trivially-no";
  }
  return "unchanged";
}

Explanation Explanation::make(std::vector<Literal> literals, ExplanationKind kind) {
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  for (std::size_t i = 1; i < literals.size(); ++i) {
    if (literals[i].var == literals[i - 1].var) {
      throw StructuralError("inconsistent literal set: variable " +
                            std::to_string(literals[i].var) + " in both polarities");
    }
  }
  if (kind == ExplanationKind::positive) {
    for (const auto& l : literals) {
      if (!l.positive) throw StructuralError("positive explanation with a negative literal");
    }
  }
  return {std::move(literals), kind};
}

std::string Explanation::to_string() const {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (i) out << ",";
    out << literals[i].to_int();
  }
  out << "}";
  return out.str();
}

bool is_explanation(const AbductionInstance& inst, const Explanation& e, const SatDecider& sat) {
  for (const auto& l : e.literals) {
    if (!contains(inst.hypotheses, l.var)) {
      throw PreconditionError("explanation literal on non-hypothesis variable " +
                              std::to_string(l.var));
    }
  }
  const Formula with_e = conjoin_literals(inst.kb, e.literals);
  if (!sat(with_e)) return false;
  for (Var m : inst.manifestations) {
    const Literal neg_m{m, false};
    if (sat(conjoin_literals(with_e, std::span<const Literal>(&neg_m, 1)))) return false;
  }
  return true;
}

PreprocessResult preprocess(const AbductionInstance& inst, PreprocessOptions options) {
  PreprocessResult out;
  out.instance = inst;
  AbductionInstance& res = out.instance;
  const std::vector<Var> occurring = inst.kb.occurring_variables();
  bool changed = false;

  // Manifestations outside the knowledge base.
  std::vector<Var> kept_m;
  for (Var m : inst.manifestations) {
    if (contains(occurring, m)) {
      kept_m.push_back(m);
      continue;
    }
    if (!contains(inst.hypotheses, m)) {
      out.verdict = PreprocessVerdict::trivially_no;
      out.instance = inst;
      return out;
    }
    out.forced_hypotheses.push_back(m);  // explained by itself
    changed = true;
  }
  res.manifestations = kept_m;

  // Hypotheses outside the knowledge base.
  std::vector<Var> kept_h;
  for (Var h : inst.hypotheses) {
    if (contains(occurring, h)) {
      kept_h.push_back(h);
    } else {
      if (!contains(inst.manifestations, h)) out.free_hypotheses.push_back(h);
      changed = true;
    }
  }
  res.hypotheses = kept_h;

  if (options.resolve_overlap) {
    std::vector<Var> overlap;
    std::set_intersection(res.hypotheses.begin(), res.hypotheses.end(),
                          res.manifestations.begin(), res.manifestations.end(),
                          std::back_inserter(overlap));
    if (!overlap.empty()) {
      for (Var x : overlap) res.kb.add(rel::top(), {x});
      std::vector<Var> h, m;
      std::set_difference(res.hypotheses.begin(), res.hypotheses.end(), overlap.begin(),
                          overlap.end(), std::back_inserter(h));
      std::set_difference(res.manifestations.begin(), res.manifestations.end(), overlap.begin(),
                          overlap.end(), std::back_inserter(m));
      res.hypotheses = std::move(h);
      res.manifestations = std::move(m);
      out.forced_hypotheses.insert(out.forced_hypotheses.end(), overlap.begin(), overlap.end());
      changed = true;
    }
  }
  sort_unique(out.forced_hypotheses);
  out.verdict = changed ? PreprocessVerdict::trivially_reduced : PreprocessVerdict::unchanged;
  return out;
}

Explanation PreprocessResult::lift(const Explanation& e) const {
  std::vector<Literal> lits = e.literals;
  for (Var h : forced_hypotheses) lits.push_back({h, true});
  if (e.kind == ExplanationKind::full) {
    for (Var h : free_hypotheses) lits.push_back({h, true});
  }
  return Explanation::make(std::move(lits), e.kind);
}

}  // namespace abd
