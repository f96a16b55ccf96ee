#include <algorithm>
#include <deque>

#include "abd/langlib.hpp"

namespace abd {

ConstraintLanguage::ConstraintLanguage(std::vector<RelationRef> relations, std::string schema,
                                       unsigned arity_cap)
    : schema_(std::move(schema)), arity_cap_(arity_cap) {
  for (auto& r : relations) add(std::move(r));
}

bool ConstraintLanguage::add(RelationRef r) {
  if (!index_.insert(r).second) return false;
  relations_.push_back(std::move(r));
  return true;
}

bool ConstraintLanguage::contains(const Relation& r) const {
  // Non-owning probe: the aliasing constructor avoids a copy.
  const RelationRef probe(RelationRef{}, &r);
  return index_.count(probe) != 0;
}

RelationRef ConstraintLanguage::find(const Relation& r) const {
  const RelationRef probe(RelationRef{}, &r);
  const auto it = index_.find(probe);
  return it == index_.end() ? nullptr : *it;
}

unsigned ConstraintLanguage::max_arity() const noexcept {
  unsigned k = 0;
  for (const auto& r : relations_) k = std::max(k, r->arity());
  return k;
}

ConstraintLanguage ConstraintLanguage::of(const Formula& formula) {
  ConstraintLanguage l;
  for (const auto& c : formula.constraints()) l.add(c.relation);
  return l;
}

Relation substitute(const Relation& r, std::span<const Fix> f) {
  if (f.empty()) return r;
  Relation::Tuple fixed_mask = 0, fixed_vals = 0;
  for (const Fix& x : f) {
    if (x.index >= r.arity()) throw PreconditionError("substitution index out of range");
    const Relation::Tuple b = Relation::Tuple{1} << x.index;
    if ((fixed_mask & b) && (((fixed_vals & b) != 0) != x.value)) {
      throw PreconditionError("substitution fixes a coordinate to both values");
    }
    fixed_mask |= b;
    if (x.value) fixed_vals |= b;
  }
  std::vector<unsigned> keep;
  for (unsigned i = 0; i < r.arity(); ++i) {
    if (!(fixed_mask >> i & 1u)) keep.push_back(i);
  }
  std::vector<Relation::Tuple> out;
  for (Relation::Tuple t : r.tuples()) {
    if ((t & fixed_mask) != fixed_vals) continue;
    Relation::Tuple p = 0;
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if (Relation::bit(t, keep[j])) p |= Relation::Tuple{1} << j;
    }
    out.push_back(p);
  }
  return Relation(static_cast<unsigned>(keep.size()), std::move(out));
}

Relation minor(const Relation& r, std::span<const unsigned> g) {
  if (g.size() != r.arity()) throw PreconditionError("minor map must be total on the arity");
  unsigned m = 0;
  for (unsigned x : g) m = std::max(m, x + 1);
  std::vector<bool> hit(m, false);
  for (unsigned x : g) hit[x] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
    throw PreconditionError("minor map must be onto its target range");
  }
  std::vector<Relation::Tuple> out;
  for (Relation::Tuple t : r.tuples()) {
    Relation::Tuple y = 0, seen = 0;
    bool ok = true;
    for (unsigned i = 0; i < g.size() && ok; ++i) {
      const Relation::Tuple b = Relation::Tuple{1} << g[i];
      const bool v = Relation::bit(t, i);
      if (seen & b) {
        ok = ((y & b) != 0) == v;
      } else {
        seen |= b;
        if (v) y |= b;
      }
    }
    if (ok) out.push_back(y);
  }
  return Relation(m, std::move(out));
}

Relation identify(const Relation& r, unsigned i, unsigned j) {
  if (i >= j || j >= r.arity()) throw PreconditionError("identify needs i < j < arity");
  std::vector<unsigned> g(r.arity());
  for (unsigned c = 0; c < r.arity(); ++c) {
    if (c == j) g[c] = i;
    else g[c] = c < j ? c : c - 1;
  }
  return minor(r, g);
}

ConstraintLanguage branching_closure(const ConstraintLanguage& l) {
  ConstraintLanguage out;
  std::deque<RelationRef> work;
  for (const auto& r : l.relations()) {
    if (out.add(r)) work.push_back(r);
  }
  auto offer = [&](Relation r) {
    auto ref = make_ref(std::move(r));
    if (out.add(ref)) work.push_back(ref);
  };
  while (!work.empty()) {
    const RelationRef r = work.front();
    work.pop_front();
    for (unsigned i = 0; i < r->arity(); ++i) {
      for (bool v : {false, true}) {
        const Fix f{i, v};
        offer(substitute(*r, std::span<const Fix>(&f, 1)));
      }
      for (unsigned j = i + 1; j < r->arity(); ++j) offer(identify(*r, i, j));
    }
  }
  return out;
}

bool is_non_trivial(const Relation& r) { return !r.is_full(); }

}  // namespace abd
