#include <algorithm>

#include "abd/reductions.hpp"

namespace abd {

std::optional<unsigned> kcnf_pos_width(const Formula& formula) {
  unsigned width = 0;
  for (const Constraint& c : formula.constraints()) {
    const auto signs = match_clause(*c.relation);
    if (!signs || std::find(signs->begin(), signs->end(), false) != signs->end()) return std::nullopt;
    width = std::max(width, c.relation->arity());
  }
  return width;
}

std::optional<unsigned> negimp_width(const Formula& formula) {
  unsigned width = 0;
  for (const Constraint& c : formula.constraints()) {
    const auto signs = match_clause(*c.relation);
    if (!signs) return std::nullopt;
    const auto positives = std::count(signs->begin(), signs->end(), true);
    if (positives == 0) {
      width = std::max(width, c.relation->arity());
    } else if (positives != 1 || signs->size() != 2) {
      return std::nullopt;
    }
  }
  return width;
}

}  // namespace abd
