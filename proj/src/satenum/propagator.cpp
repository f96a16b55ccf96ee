#include "propagator.hpp"

namespace abd::detail {

Propagator::Propagator(const Formula& formula)
    : values_(formula.num_vars() + 1, -1), occurs_(formula.num_vars() + 1) {
  constraints_.reserve(formula.size());
  for (const auto& c : formula.constraints()) {
    Prepared p{c.relation.get(), c.scope, {}};
    for (std::size_t i = 0; i < c.scope.size(); ++i) {
      Relation::Tuple group = 0;
      bool first = true;
      for (std::size_t j = 0; j < c.scope.size(); ++j) {
        if (c.scope[j] != c.scope[i]) continue;
        if (j < i) first = false;
        group |= Relation::Tuple{1} << j;
      }
      if (first && (group & (group - 1)) != 0) p.groups.push_back(group);
    }
    const auto ci = static_cast<std::uint32_t>(constraints_.size());
    for (std::size_t i = 0; i < c.scope.size(); ++i) {
      auto& occ = occurs_[c.scope[i]];
      if (occ.empty() || occ.back() != ci) occ.push_back(ci);
    }
    constraints_.push_back(std::move(p));
  }
}

void Propagator::enqueue(Var v, bool value) {
  values_[v] = value ? 1 : 0;
  trail_.push_back(v);
}

bool Propagator::check(std::size_t ci) {
  const Prepared& c = constraints_[ci];
  Relation::Tuple assigned = 0, pattern = 0;
  for (std::size_t i = 0; i < c.scope.size(); ++i) {
    const int v = values_[c.scope[i]];
    if (v < 0) continue;
    assigned |= Relation::Tuple{1} << i;
    if (v) pattern |= Relation::Tuple{1} << i;
  }
  const Relation::Tuple all = Relation::all_ones(c.relation->arity());
  Relation::Tuple and_mask = all, or_mask = 0;
  bool any = false;
  for (Relation::Tuple t : c.relation->tuples()) {
    if ((t & assigned) != pattern) continue;
    bool ok = true;
    for (Relation::Tuple g : c.groups) {
      const Relation::Tuple x = t & g;
      if (x != 0 && x != g) { ok = false; break; }
    }
    if (!ok) continue;
    any = true;
    and_mask &= t;
    or_mask |= t;
  }
  if (!any) return false;
  if (assigned == all) return true;
  for (std::size_t i = 0; i < c.scope.size(); ++i) {
    const Var v = c.scope[i];
    if (values_[v] >= 0) continue;
    if ((and_mask >> i) & 1u) enqueue(v, true);
    else if (!((or_mask >> i) & 1u)) enqueue(v, false);
  }
  return true;
}

bool Propagator::propagate() {
  while (qhead_ < trail_.size()) {
    const Var v = trail_[qhead_++];
    for (std::uint32_t ci : occurs_[v]) {
      if (!check(ci)) {
        qhead_ = trail_.size();
        return false;
      }
    }
  }
  return true;
}

bool Propagator::propagate_root() {
  for (std::size_t ci = 0; ci < constraints_.size(); ++ci) {
    if (!check(ci)) return false;
  }
  return propagate();
}

bool Propagator::assign(Var v, bool value) {
  enqueue(v, value);
  return propagate();
}

void Propagator::backtrack(std::size_t mark) {
  while (trail_.size() > mark) {
    values_[trail_.back()] = -1;
    trail_.pop_back();
  }
  qhead_ = trail_.size();
}

Assignment Propagator::to_assignment() const {
  Assignment a(num_vars());
  for (Var v = 1; v <= num_vars(); ++v) {
    if (values_[v] == 1) a.set(v, true);
  }
  return a;
}

}  // namespace abd::detail
