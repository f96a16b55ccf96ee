#include <cmath>

#include "abd/satenum.hpp"

namespace abd {

namespace {

using Values = std::vector<std::int8_t>;

struct Active {
  RelationRef relation;
  std::vector<Var> scope;
};

enum class Status { keep, drop, dead };

class SparseStream final : public ModelStream {
 public:
  SparseStream(const Formula& formula, ConstraintLanguage closure, unsigned r0)
      : closure_(std::move(closure)), r0_(r0), num_vars_(formula.num_vars()) {
    for (const auto& c : formula.constraints()) {
      if (c.relation->arity() > 0 && !is_non_trivial(*c.relation)) {
        throw PreconditionError("formula uses the trivial relation " + c.relation->describe());
      }
      RelationRef canonical = closure_.find(*c.relation);
      if (!canonical) {
        throw ContractViolation("relation " + c.relation->describe() +
                                " is outside the branching-closed language");
      }
      root_.push_back({std::move(canonical), c.scope});
    }
  }

  std::optional<Assignment> next() override {
    for (;;) {
      if (leaf_) {
        if (leaf_->next < leaf_->total) return emit_leaf_model();
        leaf_.reset();
      }
      if (!started_) {
        started_ = true;
        Values values(num_vars_ + 1, -1);
        std::vector<Active> constraints;
        const bool alive = simplify(root_, values, constraints, /*all=*/true);
        expand(std::move(values), std::move(constraints), alive);
        continue;
      }
      if (stack_.empty()) return std::nullopt;
      Node& top = stack_.back();
      const auto tuples = top.chosen.relation->tuples();
      if (top.next_tuple == tuples.size()) {
        stack_.pop_back();
        continue;
      }
      const Relation::Tuple t = tuples[top.next_tuple++];
      Values values = top.values;
      for (std::size_t i = 0; i < top.chosen.scope.size(); ++i) {
        values[top.chosen.scope[i]] = Relation::bit(t, static_cast<unsigned>(i)) ? 1 : 0;
      }
      std::vector<Active> constraints;
      const bool alive = simplify(top.rest, values, constraints, /*all=*/false);
      expand(std::move(values), std::move(constraints), alive);
    }
  }

  const EnumStats& stats() const override { return stats_; }

 private:
  struct Node {
    Values values;
    std::vector<Active> rest;
    Active chosen;
    std::size_t next_tuple = 0;
  };

  struct Leaf {
    Assignment base;
    std::vector<Var> free;
    std::uint64_t next = 0;
    std::uint64_t total = 0;
  };

  RelationRef intern(Relation r) {
    RelationRef canonical = closure_.find(r);
    if (!canonical) {
      throw ContractViolation("branching produced " + r.describe() +
                              ", which is outside the closed language");
    }
    return canonical;
  }

  // Substitutes assigned variables and collapses repeated ones.
  Status normalize(Active& a, const Values& values) {
    std::vector<Fix> fixes;
    std::vector<Var> scope;
    for (std::size_t i = 0; i < a.scope.size(); ++i) {
      const std::int8_t v = values[a.scope[i]];
      if (v >= 0) fixes.push_back({static_cast<unsigned>(i), v == 1});
      else scope.push_back(a.scope[i]);
    }
    if (!fixes.empty()) {
      a.relation = intern(substitute(*a.relation, fixes));
      a.scope = std::move(scope);
    }
    for (bool again = true; again;) {
      again = false;
      for (std::size_t i = 0; i < a.scope.size() && !again; ++i) {
        for (std::size_t j = i + 1; j < a.scope.size(); ++j) {
          if (a.scope[i] != a.scope[j]) continue;
          a.relation = intern(identify(*a.relation, static_cast<unsigned>(i), static_cast<unsigned>(j)));
          a.scope.erase(a.scope.begin() + static_cast<std::ptrdiff_t>(j));
          again = true;
          break;
        }
      }
    }
    if (a.relation->empty()) return Status::dead;
    // Full relations can arise from identifications (x + x = 0 mod 2) and
    // constrain nothing.
    if (a.relation->is_full()) return Status::drop;
    return Status::keep;
  }

  bool simplify(const std::vector<Active>& in, const Values& values, std::vector<Active>& out,
                bool all) {
    out.reserve(in.size());
    for (const Active& c : in) {
      bool touched = all;
      for (Var v : c.scope) touched = touched || values[v] >= 0;
      if (!touched) {
        out.push_back(c);
        continue;
      }
      Active a = c;
      switch (normalize(a, values)) {
        case Status::dead: return false;
        case Status::drop: break;
        case Status::keep: out.push_back(std::move(a)); break;
      }
    }
    return true;
  }

  std::size_t choose(const std::vector<Active>& cs) const {
    bool have_wide = false;
    for (const auto& c : cs) have_wide = have_wide || c.relation->arity() >= r0_;
    std::size_t best = cs.size();
    double best_base = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const Relation& r = *cs[i].relation;
      if (have_wide && r.arity() < r0_) continue;
      const double base = std::pow(static_cast<double>(r.size()), 1.0 / r.arity());
      if (best == cs.size() || base < best_base) {
        best = i;
        best_base = base;
      }
    }
    return best;
  }

  void expand(Values values, std::vector<Active> constraints, bool alive) {
    if (!alive) {
      ++stats_.leaves;
      return;
    }
    if (constraints.empty()) {
      ++stats_.leaves;
      Leaf leaf{Assignment(num_vars_), {}, 0, 0};
      for (Var v = 1; v <= num_vars_; ++v) {
        if (values[v] < 0) leaf.free.push_back(v);
        else if (values[v] == 1) leaf.base.set(v, true);
      }
      if (leaf.free.size() >= 64) throw PreconditionError("too many unconstrained variables to expand");
      leaf.total = std::uint64_t{1} << leaf.free.size();
      leaf_ = std::move(leaf);
      return;
    }
    ++stats_.branch_nodes;
    const std::size_t pick = choose(constraints);
    Node node{std::move(values), {}, constraints[pick], 0};
    node.rest.reserve(constraints.size() - 1);
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      if (i != pick) node.rest.push_back(std::move(constraints[i]));
    }
    stack_.push_back(std::move(node));
    stats_.max_depth = std::max<std::uint64_t>(stats_.max_depth, stack_.size());
  }

  Assignment emit_leaf_model() {
    Assignment a = leaf_->base;
    const std::uint64_t bits = leaf_->next++;
    for (std::size_t i = 0; i < leaf_->free.size(); ++i) {
      if ((bits >> i) & 1u) a.set(leaf_->free[i], true);
    }
    ++stats_.models_emitted;
    return a;
  }

  ConstraintLanguage closure_;
  unsigned r0_;
  Var num_vars_;
  std::vector<Active> root_;
  bool started_ = false;
  std::vector<Node> stack_;
  std::optional<Leaf> leaf_;
  EnumStats stats_;
};

}  // namespace

ModelStreamPtr sparse_enumerate(const Formula& formula, const ConstraintLanguage& closure,
                                unsigned r0) {
  return std::make_unique<SparseStream>(formula, closure, r0);
}

ModelStreamPtr sparse_enumerate(const Formula& formula, unsigned r0) {
  return sparse_enumerate(formula, branching_closure(ConstraintLanguage::of(formula)), r0);
}

}  // namespace abd
