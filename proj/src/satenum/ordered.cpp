#include <algorithm>

#include "abd/satenum.hpp"

namespace abd {

namespace {

class SortedStream final : public ModelStream {
 public:
  SortedStream(std::vector<Assignment> models, EnumStats stats, std::vector<Var> hypotheses)
      : models_(std::move(models)), stats_(stats), hypotheses_(std::move(hypotheses)) {}

  std::optional<Assignment> next() override {
    if (pos_ == models_.size()) return std::nullopt;
    return std::move(models_[pos_++]);
  }
  const EnumStats& stats() const override { return stats_; }
  StreamOrder order() const override { return StreamOrder::weight_non_increasing; }
  const std::vector<Var>& weight_vars() const override { return hypotheses_; }

 private:
  std::vector<Assignment> models_;
  std::size_t pos_ = 0;
  EnumStats stats_;
  std::vector<Var> hypotheses_;
};

}  // namespace

ModelStreamPtr enumerate_weight_ordered(ModelStreamPtr source, std::vector<Var> hypotheses) {
  std::vector<Assignment> models = collect(*source);
  std::vector<std::pair<std::size_t, std::size_t>> keyed;
  keyed.reserve(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) keyed.emplace_back(models[i].weight(hypotheses), i);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Assignment> sorted;
  sorted.reserve(models.size());
  for (const auto& [w, i] : keyed) sorted.push_back(std::move(models[i]));
  return std::make_unique<SortedStream>(std::move(sorted), source->stats(), std::move(hypotheses));
}

ModelStreamPtr enumerate_weight_ordered(const Formula& formula, std::vector<Var> hypotheses) {
  return enumerate_weight_ordered(enumerate(formula), std::move(hypotheses));
}

}  // namespace abd
