#include <string>

#include "abd/satenum.hpp"

namespace abd {

void SimpleSatInstance::validate() const {
  auto check_var = [&](Var v) {
    if (v == 0 || v > num_vars) throw StructuralError("SimpleSAT variable " + std::to_string(v) + " out of range");
  };
  for (const auto& c : positive_clauses) {
    if (c.empty()) throw StructuralError("empty positive clause");
    if (c.size() > p) throw StructuralError("positive clause wider than p = " + std::to_string(p));
    for (Var v : c) check_var(v);
  }
  for (const auto& dnf : negative_dnfs) {
    for (const auto& term : dnf) {
      for (Var v : term) check_var(v);
    }
  }
}

bool SimpleSatInstance::satisfied_by(const Assignment& sigma) const {
  for (const auto& c : positive_clauses) {
    bool sat = false;
    for (Var v : c) sat = sat || sigma[v];
    if (!sat) return false;
  }
  for (const auto& dnf : negative_dnfs) {
    bool sat = false;
    for (const auto& term : dnf) {
      bool holds = true;
      for (Var v : term) holds = holds && !sigma[v];
      if (holds) { sat = true; break; }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

class Solver {
 public:
  explicit Solver(const SimpleSatInstance& inst) : inst_(inst), values_(inst.num_vars + 1, -1) {}

  std::optional<Assignment> run() {
    if (!search(0)) return std::nullopt;
    Assignment a(inst_.num_vars);
    for (Var v = 1; v <= inst_.num_vars; ++v) {
      if (values_[v] == 1) a.set(v, true);
    }
    return a;
  }

  const EnumStats& stats() const { return stats_; }

 private:
  // Negative part: false if some DNF has every term killed by a 1.
  bool dnfs_alive() const {
    for (const auto& dnf : inst_.negative_dnfs) {
      bool alive = false;
      for (const auto& term : dnf) {
        bool killed = false;
        for (Var v : term) killed = killed || values_[v] == 1;
        if (!killed) { alive = true; break; }
      }
      if (!alive) return false;
    }
    return true;
  }

  bool search(std::uint64_t depth) {
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (!dnfs_alive()) {
      ++stats_.leaves;
      return false;
    }
    const std::vector<Var>* open = nullptr;
    std::vector<Var> free;
    for (const auto& c : inst_.positive_clauses) {
      bool sat = false;
      free.clear();
      for (Var v : c) {
        if (values_[v] == 1) { sat = true; break; }
        if (values_[v] < 0) free.push_back(v);
      }
      if (sat) continue;
      if (free.empty()) {
        ++stats_.leaves;
        return false;
      }
      open = &c;
      break;
    }
    if (!open) {
      // Remaining variables go to 0, which satisfies every surviving term.
      for (Var v = 1; v <= inst_.num_vars; ++v) {
        if (values_[v] < 0) values_[v] = 0;
      }
      ++stats_.leaves;
      ++stats_.models_emitted;
      return true;
    }
    ++stats_.branch_nodes;
    const std::vector<Var> branch = free;
    for (std::size_t i = 0; i < branch.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) values_[branch[j]] = 0;
      values_[branch[i]] = 1;
      if (search(depth + 1)) return true;
      for (std::size_t j = 0; j <= i; ++j) values_[branch[j]] = -1;
    }
    return false;
  }

  const SimpleSatInstance& inst_;
  std::vector<std::int8_t> values_;
  EnumStats stats_;
};

}  // namespace

SimpleSatResult solve_simple_sat(const SimpleSatInstance& inst) {
  inst.validate();
  Solver solver(inst);
  SimpleSatResult result;
  result.model = solver.run();
  result.stats = solver.stats();
  return result;
}

}  // namespace abd
