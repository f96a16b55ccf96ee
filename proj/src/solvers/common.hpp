#pragma once

#include "abd/solvers.hpp"

namespace abd::detail {

// Falls back to satenum::decide, charging its search to stats.
SatDecider resolve_decider(const SatDecider& sat, EnumStats& stats);

// KB ∧ ¬m unsatisfiable for every m.
bool entails_all(const Formula& kb, const std::vector<Var>& manifestations, const SatDecider& sat);

// The assignment falsifies some manifestation.
bool violates(const Assignment& sigma, const std::vector<Var>& manifestations);

std::vector<Literal> positive_literals(const std::vector<Var>& vars);

AbdResult negative(const char* algorithm);

// Answer and witness for a lifted explanation.
AbdResult positive(const char* algorithm, const PreprocessResult& pre, const Explanation& reduced);

}  // namespace abd::detail
