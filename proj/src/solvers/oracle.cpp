#include <algorithm>

#include "abd/solvers.hpp"

namespace abd {

namespace {

void check_limits(const AbductionInstance& inst, const OracleLimits& limits) {
  if (inst.num_vars() > limits.max_vars) {
    throw PreconditionError("oracle limited to " + std::to_string(limits.max_vars) + " variables");
  }
  if (inst.hypotheses.size() > limits.max_hypotheses) {
    throw PreconditionError("oracle limited to " + std::to_string(limits.max_hypotheses) + " hypotheses");
  }
}

PatternTable table_for(const AbductionInstance& inst, const OracleLimits& limits) {
  check_limits(inst, limits);
  return pattern_table_parallel(inst);
}

bool explains(std::uint8_t f) { return (f & PatternTable::kSat) && !(f & PatternTable::kBad); }

// Flags of every partial literal set over H, base-3 coded: digit i is 0
// (¬H[i]), 1 (H[i]) or 2 (absent).
std::vector<std::uint8_t> ternary_flags(const PatternTable& t) {
  const std::size_t h = t.hypotheses.size();
  std::vector<std::size_t> pow3(h + 1, 1);
  for (std::size_t i = 1; i <= h; ++i) pow3[i] = pow3[i - 1] * 3;
  std::vector<std::uint8_t> out(pow3[h], 0);
  std::vector<unsigned> digits(h, 0);
  for (std::size_t code = 0; code < pow3[h]; ++code) {
    if (code) {
      for (std::size_t i = 0; i < h; ++i) {
        if (++digits[i] < 3) break;
        digits[i] = 0;
      }
    }
    std::size_t free_at = h;
    std::size_t pattern = 0;
    for (std::size_t i = 0; i < h; ++i) {
      if (digits[i] == 2) {
        free_at = i;
        break;
      }
      if (digits[i] == 1) pattern |= std::size_t{1} << i;
    }
    out[code] = free_at == h ? t.flags[pattern]
                             : static_cast<std::uint8_t>(out[code - 2 * pow3[free_at]] | out[code - pow3[free_at]]);
  }
  return out;
}

// OR over all supersets of each positive pattern.
std::vector<std::uint8_t> superset_flags(const PatternTable& t) {
  std::vector<std::uint8_t> sup = t.flags;
  const std::size_t h = t.hypotheses.size();
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t p = 0; p < sup.size(); ++p) {
      if (!((p >> i) & 1u)) sup[p] |= sup[p | (std::size_t{1} << i)];
    }
  }
  return sup;
}

Explanation from_pattern(const PatternTable& t, std::size_t p, ExplanationKind kind) {
  std::vector<Literal> lits;
  for (std::size_t i = 0; i < t.hypotheses.size(); ++i) {
    const bool one = (p >> i) & 1u;
    if (kind == ExplanationKind::full) lits.push_back({t.hypotheses[i], one});
    else if (one) lits.push_back({t.hypotheses[i], true});
  }
  return Explanation::make(std::move(lits), kind);
}

}  // namespace

AbdResult oracle_abd(const AbductionInstance& inst, OracleLimits limits) {
  const PatternTable t = table_for(inst, limits);
  const std::vector<std::uint8_t> all = ternary_flags(t);
  AbdResult r;
  r.algorithm = "oracle";
  for (std::size_t code = 0; code < all.size(); ++code) {
    if (!explains(all[code])) continue;
    std::vector<Literal> lits;
    std::size_t c = code;
    for (Var h : t.hypotheses) {
      const std::size_t d = c % 3;
      c /= 3;
      if (d < 2) lits.push_back({h, d == 1});
    }
    r.answer = true;
    r.witness = Explanation::make(std::move(lits), ExplanationKind::general);
    break;
  }
  return r;
}

AbdResult oracle_pabd(const AbductionInstance& inst, OracleLimits limits) {
  const PatternTable t = table_for(inst, limits);
  const std::vector<std::uint8_t> sup = superset_flags(t);
  AbdResult r;
  r.algorithm = "oracle";
  for (std::size_t p = 0; p < sup.size(); ++p) {
    if (!explains(sup[p])) continue;
    r.answer = true;
    r.witness = from_pattern(t, p, ExplanationKind::positive);
    break;
  }
  return r;
}

ExplanationSet oracle_full_explanations(const AbductionInstance& inst, OracleLimits limits) {
  const PatternTable t = table_for(inst, limits);
  ExplanationSet s;
  s.kind = ExplanationSet::Kind::all_full;
  for (std::size_t p = 0; p < t.flags.size(); ++p) {
    if (explains(t.flags[p])) s.explanations.push_back(from_pattern(t, p, ExplanationKind::full));
  }
  std::sort(s.explanations.begin(), s.explanations.end());
  return s;
}

ExplanationSet oracle_maximal_positive(const AbductionInstance& inst, OracleLimits limits) {
  const PatternTable t = table_for(inst, limits);
  const std::vector<std::uint8_t> sup = superset_flags(t);
  ExplanationSet s;
  s.kind = ExplanationSet::Kind::subset_maximal_positive;
  for (std::size_t p = 0; p < sup.size(); ++p) {
    if (!explains(sup[p])) continue;
    bool maximal = true;
    for (std::size_t i = 0; i < t.hypotheses.size() && maximal; ++i) {
      const std::size_t q = p | (std::size_t{1} << i);
      if (q != p && explains(sup[q])) maximal = false;
    }
    if (maximal) s.explanations.push_back(from_pattern(t, p, ExplanationKind::positive));
  }
  std::sort(s.explanations.begin(), s.explanations.end());
  return s;
}

bool oracle_is_explanation(const AbductionInstance& inst, const Explanation& e, OracleLimits limits) {
  const PatternTable t = table_for(inst, limits);
  std::size_t care = 0, want = 0;
  for (const Literal& l : e.literals) {
    const auto it = std::lower_bound(t.hypotheses.begin(), t.hypotheses.end(), l.var);
    if (it == t.hypotheses.end() || *it != l.var) {
      throw PreconditionError("explanation literal on non-hypothesis variable " + std::to_string(l.var));
    }
    const std::size_t bit = std::size_t{1} << (it - t.hypotheses.begin());
    care |= bit;
    if (l.positive) want |= bit;
  }
  std::uint8_t f = 0;
  for (std::size_t p = 0; p < t.flags.size(); ++p) {
    if ((p & care) == want) f |= t.flags[p];
  }
  return explains(f);
}

}  // namespace abd
