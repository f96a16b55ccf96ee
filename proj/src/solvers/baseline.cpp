#include "common.hpp"

namespace abd {

namespace {

constexpr std::size_t kMaxBaselineHypotheses = 30;

AbdResult run(const AbductionInstance& inst, const SatDecider& sat_in, bool full, const char* name) {
  // branch_nodes counts candidates, leaves counts SAT calls.
  EnumStats stats;
  EnumStats sat_stats;
  const SatDecider inner = detail::resolve_decider(sat_in, sat_stats);
  const SatDecider sat = [&](const Formula& f) {
    ++stats.leaves;
    return inner(f);
  };
  const PreprocessResult pre = preprocess(inst);
  if (pre.verdict == PreprocessVerdict::trivially_no) return detail::negative(name);
  const AbductionInstance& r = pre.instance;
  const std::size_t h = r.hypotheses.size();
  if (h > kMaxBaselineHypotheses) throw PreconditionError("baseline limited to 30 hypotheses");

  AbdResult result = detail::negative(name);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << h); ++bits) {
    std::vector<Literal> lits;
    for (std::size_t i = 0; i < h; ++i) {
      const bool one = (bits >> i) & 1u;
      if (full || one) lits.push_back({r.hypotheses[i], one});
    }
    ++stats.branch_nodes;
    const Formula kb_e = conjoin_literals(r.kb, lits);
    if (!sat(kb_e) || !detail::entails_all(kb_e, r.manifestations, sat)) continue;
    result = detail::positive(
        name, pre, Explanation::make(std::move(lits), full ? ExplanationKind::full : ExplanationKind::positive));
    break;
  }
  result.stats = stats;
  return result;
}

}  // namespace

AbdResult baseline_abd(const AbductionInstance& inst, const SatDecider& sat) {
  return run(inst, sat, true, "baseline");
}

AbdResult baseline_pabd(const AbductionInstance& inst, const SatDecider& sat) {
  return run(inst, sat, false, "baseline");
}

}  // namespace abd
