#include "propagator.hpp"

namespace abd {

const std::vector<Var>& ModelStream::weight_vars() const {
  static const std::vector<Var> none;
  return none;
}

namespace detail {

DpllSearch::DpllSearch(const Formula& formula, bool branch_free)
    : prop_(formula), branch_free_(branch_free) {}

std::optional<Var> DpllSearch::pick() const {
  for (Var v = 1; v <= prop_.num_vars(); ++v) {
    if (prop_.value(v) < 0 && (branch_free_ || prop_.constrained(v))) return v;
  }
  return std::nullopt;
}

bool DpllSearch::backtrack() {
  while (!frames_.empty()) {
    Frame& top = frames_.back();
    prop_.backtrack(top.mark);
    if (!top.tried_one) {
      top.tried_one = true;
      if (prop_.assign(top.var, true)) return true;
      ++stats_.leaves;
      continue;
    }
    frames_.pop_back();
  }
  return false;
}

std::optional<Assignment> DpllSearch::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    if (!prop_.propagate_root()) {
      ++stats_.leaves;
      done_ = true;
      return std::nullopt;
    }
  } else if (!backtrack()) {
    done_ = true;
    return std::nullopt;
  }
  for (;;) {
    const auto v = pick();
    if (!v) {
      ++stats_.leaves;
      ++stats_.models_emitted;
      return prop_.to_assignment();
    }
    ++stats_.branch_nodes;
    frames_.push_back({*v, prop_.trail_size(), false});
    stats_.max_depth = std::max<std::uint64_t>(stats_.max_depth, frames_.size());
    if (prop_.assign(*v, false)) continue;
    ++stats_.leaves;
    if (!backtrack()) {
      done_ = true;
      return std::nullopt;
    }
  }
}

namespace {

class DpllStream final : public ModelStream {
 public:
  explicit DpllStream(const Formula& f) : search_(f, true) {}
  std::optional<Assignment> next() override { return search_.next(); }
  const EnumStats& stats() const override { return search_.stats(); }

 private:
  DpllSearch search_;
};

}  // namespace
}  // namespace detail

std::optional<Assignment> find_model(const Formula& formula, EnumStats* stats) {
  detail::DpllSearch search(formula, false);
  auto model = search.next();
  if (stats) *stats += search.stats();
  return model;
}

bool decide(const Formula& formula, EnumStats* stats) {
  return find_model(formula, stats).has_value();
}

ModelStreamPtr enumerate(const Formula& formula) {
  return std::make_unique<detail::DpllStream>(formula);
}

std::vector<Assignment> collect(ModelStream& stream) {
  std::vector<Assignment> out;
  while (auto m = stream.next()) out.push_back(std::move(*m));
  return out;
}

}  // namespace abd
