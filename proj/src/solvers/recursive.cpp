#include <functional>

#include "common.hpp"

namespace abd {

AbdResult pabd_recursive(const AbductionInstance& inst, const SatDecider& sat_in, RecursionOptions options,
                         RecursionAudit* audit) {
  EnumStats sat_stats;
  const SatDecider sat = detail::resolve_decider(sat_in, sat_stats);
  AbdResult result = detail::negative("pabd-rec");
  const PreprocessResult pre = preprocess(inst);
  if (pre.verdict == PreprocessVerdict::trivially_no) return result;
  const AbductionInstance& r = pre.instance;
  const std::vector<Var>& hyps = r.hypotheses;
  if (audit) audit->hypotheses = hyps.size();

  std::vector<bool> in_e(hyps.size(), true);
  std::vector<Var> found;
  EnumStats tree;

  auto current = [&] {
    std::vector<Var> e;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      if (in_e[i]) e.push_back(hyps[i]);
    }
    return e;
  };

  // Node E = current(); children drop one element at index >= start.
  std::function<bool(std::size_t, std::uint64_t)> visit = [&](std::size_t start, std::uint64_t depth) {
    ++tree.branch_nodes;
    tree.max_depth = std::max(tree.max_depth, depth);
    const std::vector<Var> e = current();
    if (audit) {
      ++audit->nodes;
      audit->max_depth = std::max(audit->max_depth, depth);
      if (!audit->visited.insert(e).second) ++audit->duplicate_visits;
    }
    std::vector<Literal> g;
    for (std::size_t i = 0; i < hyps.size(); ++i) g.push_back({hyps[i], in_e[i]});
    const Formula kb_g = conjoin_literals(r.kb, g);
    if (!detail::entails_all(kb_g, r.manifestations, sat)) {
      ++tree.leaves;
      return false;
    }
    if (sat(kb_g)) {
      ++tree.leaves;
      if (options.maximality_guard) {
        const Formula kb_e = conjoin_literals(r.kb, detail::positive_literals(e));
        for (std::size_t i = 0; i < hyps.size(); ++i) {
          if (in_e[i]) continue;
          const Literal x{hyps[i], true};
          if (sat(conjoin_literals(kb_e, std::span<const Literal>(&x, 1)))) return false;
        }
      }
      found = e;
      return true;
    }
    for (std::size_t i = start; i < hyps.size(); ++i) {
      if (!in_e[i]) continue;
      in_e[i] = false;
      const bool ok = visit(i + 1, depth + 1);
      in_e[i] = true;
      if (ok) return true;
    }
    ++tree.leaves;
    return false;
  };

  if (visit(0, 1)) {
    result = detail::positive("pabd-rec", pre,
                              Explanation::make(detail::positive_literals(found), ExplanationKind::positive));
  }
  result.stats = tree;
  return result;
}

}  // namespace abd
