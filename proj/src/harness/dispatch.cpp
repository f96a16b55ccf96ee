#include "abd/harness.hpp"

namespace abd {

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"oracle",    "baseline",  "enum",    "pabd-rec",
                                                 "pabd-enum", "simplesat", "one-valid"};
  return names;
}

const std::vector<std::string>& reduction_names() {
  static const std::vector<std::string> names = {"negimp-to-pos",     "abd-to-simplesat", "abd-to-pabd",
                                                 "eliminate-constants", "kcnf-to-nae",     "abd2cnf-to-cnfsat"};
  return names;
}

namespace {

StreamFactory engine_factory(const std::string& engine) {
  if (engine == "dpll") return [](const Formula& f) { return enumerate(f); };
  if (engine == "sparse") return [](const Formula& f) { return sparse_enumerate(f); };
  throw PreconditionError("unknown engine '" + engine + "' (dpll or sparse)");
}

void require_mode(const SolveOptions& o, AbdMode mode) {
  if (o.mode != mode) {
    throw PreconditionError("algorithm " + o.algorithm + " solves " + to_string(mode) + " only");
  }
}

}  // namespace

AbdResult solve(const AbductionInstance& inst, const SolveOptions& o) {
  const bool abd = o.mode == AbdMode::abd;
  if (o.algorithm == "oracle") return abd ? oracle_abd(inst) : oracle_pabd(inst);
  if (o.algorithm == "baseline") return abd ? baseline_abd(inst) : baseline_pabd(inst);
  if (o.algorithm == "enum") {
    require_mode(o, AbdMode::abd);
    return enum_abd(inst, engine_factory(o.engine)).result;
  }
  if (o.algorithm == "pabd-rec") {
    require_mode(o, AbdMode::pabd);
    return pabd_recursive(inst);
  }
  if (o.algorithm == "pabd-enum") {
    require_mode(o, AbdMode::pabd);
    return pabd_enum(inst, engine_factory(o.engine)).result;
  }
  if (o.algorithm == "simplesat") {
    require_mode(o, AbdMode::abd);
    return abd_kcnf_pos(inst);
  }
  if (o.algorithm == "one-valid") {
    require_mode(o, AbdMode::pabd);
    return pabd_one_valid(inst);
  }
  throw PreconditionError("unknown algorithm '" + o.algorithm + "'");
}

}  // namespace abd
