#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "abd/core.hpp"
#include "abd/satenum.hpp"

namespace abd::detail {

// Partial assignment with generalised arc-consistency propagation over
// explicit relations: a coordinate is forced when every tuple compatible with
// the current partial assignment agrees on it; a constraint with no
// compatible tuple is a conflict.
class Propagator {
 public:
  explicit Propagator(const Formula& formula);

  Var num_vars() const noexcept { return static_cast<Var>(values_.size() - 1); }
  int value(Var v) const noexcept { return values_[v]; }
  bool constrained(Var v) const noexcept { return !occurs_[v].empty(); }

  // Checks every constraint once; false on conflict.
  bool propagate_root();
  // Assigns v and propagates; false on conflict (caller backtracks).
  bool assign(Var v, bool value);

  std::size_t trail_size() const noexcept { return trail_.size(); }
  void backtrack(std::size_t mark);

  // Unassigned variables read as 0.
  Assignment to_assignment() const;

 private:
  struct Prepared {
    const Relation* relation;
    std::vector<Var> scope;
    std::vector<Relation::Tuple> groups;  // coordinate masks of repeated variables
  };

  void enqueue(Var v, bool value);
  bool propagate();
  bool check(std::size_t ci);

  std::vector<std::int8_t> values_;  // -1 unassigned
  std::vector<Var> trail_;
  std::size_t qhead_ = 0;
  std::vector<std::vector<std::uint32_t>> occurs_;
  std::vector<Prepared> constraints_;
};

// Depth-first variable branching (lowest index, value 0 first) on top of
// the propagator. With branch_free, unconstrained variables are branched on
// as well, so each full assignment is a distinct model.
class DpllSearch {
 public:
  DpllSearch(const Formula& formula, bool branch_free);

  std::optional<Assignment> next();
  const EnumStats& stats() const noexcept { return stats_; }

 private:
  struct Frame {
    Var var;
    std::size_t mark;
    bool tried_one;
  };

  std::optional<Var> pick() const;
  bool backtrack();  // false when the search space is exhausted

  Propagator prop_;
  bool branch_free_;
  bool started_ = false;
  bool done_ = false;
  std::vector<Frame> frames_;
  EnumStats stats_;
};

}  // namespace abd::detail
