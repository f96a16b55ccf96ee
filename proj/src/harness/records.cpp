#include "abd/harness.hpp"

namespace abd {

using nlohmann::json;

json to_json(const EnumStats& stats, double wall_ms) {
  return {{"branch_nodes", stats.branch_nodes},
          {"leaves", stats.leaves},
          {"models_emitted", stats.models_emitted},
          {"max_depth", stats.max_depth},
          {"wall_ms", wall_ms}};
}

json to_json(const ReductionReport& report) {
  return {{"name", report.name},
          {"input_vars", report.input_vars},
          {"output_vars", report.output_vars},
          {"output_constraints", report.output_constraints},
          {"added_vars", report.added_vars},
          {"contract", to_string(report.contract)},
          {"notes", report.notes}};
}

json to_json(const Explanation& e) {
  json lits = json::array();
  for (const Literal& l : e.literals) lits.push_back(l.to_int());
  return {{"kind", to_string(e.kind)}, {"literals", lits}};
}

json to_json(const ExplanationSet& set) {
  json items = json::array();
  for (const auto& e : set.explanations) items.push_back(to_json(e)["literals"]);
  return {{"kind", set.kind == ExplanationSet::Kind::all_full ? "all-full" : "subset-maximal-positive"},
          {"count", set.explanations.size()},
          {"explanations", items}};
}

json result_record(const AbdResult& result, AbdMode mode, double wall_ms,
                   const std::optional<ReductionReport>& reduction) {
  json out = {{"schema", kResultSchema},
              {"algorithm", result.algorithm},
              {"mode", to_string(mode)},
              {"answer", result.answer ? "yes" : "no"},
              {"witness", nullptr},
              {"stats", to_json(result.stats, wall_ms)}};
  if (result.witness) out["witness"] = to_json(*result.witness);
  if (reduction) out["reduction"] = to_json(*reduction);
  return out;
}

json error_record(const std::string& message) {
  return {{"schema", kResultSchema}, {"error", message}};
}

}  // namespace abd
