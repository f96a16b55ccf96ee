#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "common.hpp"

namespace abd {

namespace {

std::vector<bool> restriction(const Assignment& sigma, const std::vector<Var>& hyps) {
  std::vector<bool> key(hyps.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) key[i] = sigma[hyps[i]];
  return key;
}

std::vector<Var> positive_part(const Assignment& sigma, const std::vector<Var>& hyps) {
  std::vector<Var> e;
  for (Var h : hyps) {
    if (sigma[h]) e.push_back(h);
  }
  return e;
}

bool subset_of(const std::vector<Var>& a, const std::vector<Var>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

constexpr std::size_t kMaxFreeExpansion = 20;

}  // namespace

EnumerationResult enum_abd(const AbductionInstance& inst, const StreamFactory& factory) {
  EnumerationResult out;
  out.result = detail::negative("enum");
  out.set.kind = ExplanationSet::Kind::all_full;
  const PreprocessResult pre = preprocess(inst);
  if (pre.verdict == PreprocessVerdict::trivially_no) return out;
  const AbductionInstance& r = pre.instance;

  ModelStreamPtr stream = factory ? factory(r.kb) : enumerate(r.kb);
  std::set<std::vector<bool>> discarded;
  std::set<std::vector<bool>> potential;
  while (auto sigma = stream->next()) {
    std::vector<bool> e = restriction(*sigma, r.hypotheses);
    if (discarded.count(e)) continue;
    if (detail::violates(*sigma, r.manifestations)) {
      potential.erase(e);
      discarded.insert(std::move(e));
    } else {
      potential.insert(std::move(e));
    }
  }
  out.result.stats = stream->stats();
  if (potential.empty()) return out;

  const std::size_t f = pre.free_hypotheses.size();
  if (f > kMaxFreeExpansion) throw PreconditionError("too many irrelevant hypotheses to expand");
  for (const auto& key : potential) {
    std::vector<Literal> base;
    for (std::size_t i = 0; i < key.size(); ++i) base.push_back({r.hypotheses[i], key[i]});
    for (Var h : pre.forced_hypotheses) base.push_back({h, true});
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f); ++bits) {
      std::vector<Literal> lits = base;
      for (std::size_t i = 0; i < f; ++i) lits.push_back({pre.free_hypotheses[i], ((bits >> i) & 1u) != 0});
      out.set.explanations.push_back(Explanation::make(std::move(lits), ExplanationKind::full));
    }
  }
  std::sort(out.set.explanations.begin(), out.set.explanations.end());

  std::vector<Literal> first;
  const auto& key = *potential.begin();
  for (std::size_t i = 0; i < key.size(); ++i) first.push_back({r.hypotheses[i], key[i]});
  const EnumStats stats = out.result.stats;
  out.result = detail::positive("enum", pre, Explanation::make(std::move(first), ExplanationKind::full));
  out.result.stats = stats;
  return out;
}

EnumerationResult pabd_enum(const AbductionInstance& inst, const StreamFactory& factory,
                            DiscardPolicy policy) {
  EnumerationResult out;
  out.result = detail::negative("pabd-enum");
  out.set.kind = ExplanationSet::Kind::subset_maximal_positive;
  const PreprocessResult pre = preprocess(inst);
  if (pre.verdict == PreprocessVerdict::trivially_no) return out;
  const AbductionInstance& r = pre.instance;

  ModelStreamPtr stream = enumerate_weight_ordered(factory ? factory(r.kb) : enumerate(r.kb), r.hypotheses);
  if (stream->order() != StreamOrder::weight_non_increasing) {
    throw ContractViolation("pabd-enum needs a weight-ordered model stream");
  }
  std::size_t last = std::numeric_limits<std::size_t>::max();
  std::set<std::vector<Var>> potential;
  std::set<std::vector<Var>> discarded;  // immediate_subsets
  std::vector<std::vector<Var>> failing;  // all_subsets
  auto below_failing = [&](const std::vector<Var>& e) {
    return std::any_of(failing.begin(), failing.end(), [&](const auto& b) { return subset_of(e, b); });
  };

  while (auto sigma = stream->next()) {
    const std::size_t w = sigma->weight(r.hypotheses);
    if (w > last) throw ContractViolation("model stream violated the non-increasing weight order");
    last = w;
    std::vector<Var> e = positive_part(*sigma, r.hypotheses);
    const bool bad = detail::violates(*sigma, r.manifestations);
    if (policy == DiscardPolicy::all_subsets) {
      if (bad) {
        potential.erase(e);
        failing.push_back(std::move(e));
      } else if (!below_failing(e)) {
        potential.insert(std::move(e));
      }
      continue;
    }
    if (!discarded.count(e)) {
      if (bad) {
        discarded.insert(e);
        potential.erase(e);
      } else {
        potential.insert(e);
      }
    }
    if (discarded.count(e)) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        std::vector<Var> sub = e;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
        discarded.insert(std::move(sub));
      }
    }
  }
  out.result.stats = stream->stats();

  std::vector<std::vector<Var>> survivors(potential.begin(), potential.end());
  if (policy == DiscardPolicy::all_subsets) {
    std::erase_if(survivors, below_failing);
    std::vector<std::vector<Var>> maximal;
    for (const auto& e : survivors) {
      const bool dominated = std::any_of(survivors.begin(), survivors.end(), [&](const auto& o) {
        return o.size() > e.size() && subset_of(e, o);
      });
      if (!dominated) maximal.push_back(e);
    }
    survivors = std::move(maximal);
  }
  if (survivors.empty()) return out;

  for (const auto& e : survivors) {
    std::vector<Var> vars = e;
    vars.insert(vars.end(), pre.free_hypotheses.begin(), pre.free_hypotheses.end());
    out.set.explanations.push_back(
        pre.lift(Explanation::make(detail::positive_literals(vars), ExplanationKind::positive)));
  }
  std::sort(out.set.explanations.begin(), out.set.explanations.end());
  const EnumStats stats = out.result.stats;
  out.result = detail::positive(
      "pabd-enum", pre, Explanation::make(detail::positive_literals(survivors.front()), ExplanationKind::positive));
  out.result.stats = stats;
  return out;
}

}  // namespace abd
