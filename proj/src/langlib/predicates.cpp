#include <cmath>

#include "abd/langlib.hpp"

namespace abd {

std::variant<SparsityCertificate, SparsityViolation> check_sparsity(const ConstraintLanguage& l,
                                                                    double c, unsigned r0) {
  if (!(c > 1.0 && c < 2.0)) throw PreconditionError("sparsity base must lie in (1,2)");
  if (r0 < 1) throw PreconditionError("r0 must be positive");
  unsigned verified = 0;
  for (const auto& r : l.relations()) {
    verified = std::max(verified, r->arity());
    if (r->arity() < r0) continue;
    const double bound = std::pow(c, static_cast<double>(r->arity()));
    if (static_cast<double>(r->size()) > bound * (1.0 + 1e-12)) return SparsityViolation{r, bound};
  }
  return SparsityCertificate{c, r0, verified};
}

bool has_constant_polymorphism(const ConstraintLanguage& l, bool constant) {
  for (const auto& r : l.relations()) {
    if (!r->contains(constant ? Relation::all_ones(r->arity()) : 0)) return false;
  }
  return true;
}

bool is_one_valid(const ConstraintLanguage& l) { return has_constant_polymorphism(l, true); }

bool is_complement_invariant(const ConstraintLanguage& l) {
  for (const auto& r : l.relations()) {
    const Relation::Tuple ones = Relation::all_ones(r->arity());
    for (Relation::Tuple t : r->tuples()) {
      if (!r->contains(~t & ones)) return false;
    }
  }
  return true;
}

InequalityDefinition derive_inequality_definition(const ConstraintLanguage& l) {
  if (!is_complement_invariant(l)) {
    throw PreconditionError("inequality derivation needs a complement-invariant language");
  }
  for (const auto& r : l.relations()) {
    const Relation::Tuple ones = Relation::all_ones(r->arity());
    if (r->empty() || r->arity() < 2 || r->contains(0) || r->contains(ones)) continue;
    const Relation::Tuple t = r->tuples().front();  // non-constant by the checks above
    InequalityDefinition def{r, std::vector<bool>(r->arity()), Relation()};
    std::vector<unsigned> g(r->arity());
    for (unsigned i = 0; i < r->arity(); ++i) {
      def.second[i] = Relation::bit(t, i);
      g[i] = def.second[i] ? 1u : 0u;
    }
    def.relation = minor(*r, g).with_name("NEQ");
    if (!(def.relation == *rel::neq())) {
      throw ContractViolation("identification minor is not R≠: " + def.relation.describe());
    }
    return def;
  }
  throw PreconditionError("no relation without constant tuples to define R≠ from");
}

Relation derive_inequality(const ConstraintLanguage& l) {
  return derive_inequality_definition(l).relation;
}

}  // namespace abd
