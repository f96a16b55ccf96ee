#include "abd/langlib.hpp"
#include "abd/reductions.hpp"
#include "common.hpp"

namespace abd {

AbdResult pabd_one_valid(const AbductionInstance& inst, const SatDecider& sat_in) {
  if (!is_one_valid(ConstraintLanguage::of(inst.kb))) {
    throw FragmentError("one-valid solver needs a 1-valid knowledge base");
  }
  EnumStats stats;
  const SatDecider sat = detail::resolve_decider(sat_in, stats);
  const PreprocessResult pre = preprocess(inst);
  AbdResult result = detail::negative("one-valid");
  if (pre.verdict != PreprocessVerdict::trivially_no) {
    const AbductionInstance& r = pre.instance;
    const std::vector<Literal> h = detail::positive_literals(r.hypotheses);
    if (detail::entails_all(conjoin_literals(r.kb, h), r.manifestations, sat)) {
      result = detail::positive("one-valid", pre, Explanation::make(h, ExplanationKind::positive));
    }
  }
  result.stats = stats;
  return result;
}

AbdResult abd_kcnf_pos(const AbductionInstance& inst) {
  if (!kcnf_pos_width(inst.kb)) throw FragmentError("simplesat solver needs a positive CNF knowledge base");
  const PreprocessResult pre = preprocess(inst);
  if (pre.verdict == PreprocessVerdict::trivially_no) return detail::negative("simplesat");
  const AbductionInstance& r = pre.instance;
  const SimpleSatResult s = solve_simple_sat(abd_to_simplesat(r).output);
  AbdResult result = detail::negative("simplesat");
  if (s.model) {
    std::vector<Literal> lits;
    for (Var h : r.hypotheses) {
      if (!(*s.model)[h]) lits.push_back({h, false});
    }
    result = detail::positive("simplesat", pre, Explanation::make(std::move(lits), ExplanationKind::general));
  }
  result.stats = s.stats;
  return result;
}

}  // namespace abd
