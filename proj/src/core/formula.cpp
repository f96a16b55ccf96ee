#include <algorithm>

#include "abd/core.hpp"

namespace abd {

void Formula::add(RelationRef relation, std::vector<Var> scope) {
  if (!relation) throw StructuralError("constraint without relation");
  if (scope.size() != relation->arity()) {
    throw StructuralError("scope length " + std::to_string(scope.size()) +
                          " does not match arity " + std::to_string(relation->arity()));
  }
  for (Var v : scope) {
    if (v < 1 || v > num_vars_) {
      throw StructuralError("variable " + std::to_string(v) + " outside 1.." +
                            std::to_string(num_vars_));
    }
  }
  constraints_.push_back({std::move(relation), std::move(scope)});
}

Var Formula::add_variables(Var count) {
  const Var first = num_vars_ + 1;
  num_vars_ += count;
  return first;
}

std::vector<Var> Formula::occurring_variables() const {
  std::vector<Var> vars;
  for (const auto& c : constraints_) vars.insert(vars.end(), c.scope.begin(), c.scope.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

unsigned Formula::max_arity() const noexcept {
  unsigned k = 0;
  for (const auto& c : constraints_) k = std::max(k, c.relation->arity());
  return k;
}

Assignment::Assignment(Var num_vars) : n_(num_vars), words_((num_vars + 63) / 64, 0) {}

Assignment Assignment::from_bits(Var num_vars, std::uint64_t bits) {
  Assignment a(num_vars);
  if (!a.words_.empty()) {
    a.words_[0] = num_vars >= 64 ? bits : bits & ((std::uint64_t{1} << num_vars) - 1);
  }
  return a;
}

std::size_t Assignment::weight(std::span<const Var> vars) const noexcept {
  std::size_t w = 0;
  for (Var v : vars) w += (*this)[v] ? 1 : 0;
  return w;
}

std::size_t Assignment::hash() const noexcept {
  std::size_t h = n_;
  for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string Assignment::to_string() const {
  std::string s;
  s.reserve(n_);
  for (Var v = 1; v <= n_; ++v) s.push_back((*this)[v] ? '1' : '0');
  return s;
}

bool evaluate(const Formula& formula, const Assignment& sigma) {
  if (sigma.size() < formula.num_vars()) {
    throw StructuralError("assignment covers " + std::to_string(sigma.size()) + " of " +
                          std::to_string(formula.num_vars()) + " variables");
  }
  for (const auto& c : formula.constraints()) {
    Relation::Tuple t = 0;
    for (std::size_t i = 0; i < c.scope.size(); ++i) {
      if (sigma[c.scope[i]]) t |= Relation::Tuple{1} << i;
    }
    if (!c.relation->contains(t)) return false;
  }
  return true;
}

Formula conjoin_literals(const Formula& formula, std::span<const Literal> literals) {
  Formula out = formula;
  for (const Literal& l : literals) out.add(l.positive ? rel::top() : rel::bottom(), {l.var});
  return out;
}

}  // namespace abd
