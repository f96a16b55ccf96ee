#include "common.hpp"

namespace abd {

const char* to_string(AbdMode mode) { return mode == AbdMode::abd ? "abd" : "pabd"; }

namespace detail {

SatDecider resolve_decider(const SatDecider& sat, EnumStats& stats) {
  if (sat) return sat;
  return [&stats](const Formula& f) { return decide(f, &stats); };
}

bool entails_all(const Formula& kb, const std::vector<Var>& manifestations, const SatDecider& sat) {
  for (Var m : manifestations) {
    const Literal neg{m, false};
    if (sat(conjoin_literals(kb, std::span<const Literal>(&neg, 1)))) return false;
  }
  return true;
}

bool violates(const Assignment& sigma, const std::vector<Var>& manifestations) {
  for (Var m : manifestations) {
    if (!sigma[m]) return true;
  }
  return false;
}

std::vector<Literal> positive_literals(const std::vector<Var>& vars) {
  std::vector<Literal> out;
  out.reserve(vars.size());
  for (Var v : vars) out.push_back({v, true});
  return out;
}

AbdResult negative(const char* algorithm) {
  AbdResult r;
  r.algorithm = algorithm;
  return r;
}

AbdResult positive(const char* algorithm, const PreprocessResult& pre, const Explanation& reduced) {
  AbdResult r;
  r.algorithm = algorithm;
  r.answer = true;
  r.witness = pre.lift(reduced);
  return r;
}

}  // namespace detail
}  // namespace abd
