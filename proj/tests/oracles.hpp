#pragma once

// Definitional brute force used as ground truth in the tests. Nothing here
// calls into the library beyond reading relations, scopes and roles.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "abd/core.hpp"

namespace oracle {

using abd::AbductionInstance;
using abd::Formula;
using abd::Literal;
using abd::Relation;
using abd::Var;

// Bit v-1 of `bits` is the value of variable v.
inline bool holds(const Formula& f, std::uint64_t bits) {
  for (const auto& c : f.constraints()) {
    Relation::Tuple t = 0;
    for (std::size_t i = 0; i < c.scope.size(); ++i) {
      if ((bits >> (c.scope[i] - 1)) & 1u) t |= Relation::Tuple{1} << i;
    }
    const auto tuples = c.relation->tuples();
    if (std::find(tuples.begin(), tuples.end(), t) == tuples.end()) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> models(const Formula& f) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars()); ++bits) {
    if (holds(f, bits)) out.push_back(bits);
  }
  return out;
}

inline bool agrees(const std::vector<Literal>& e, std::uint64_t bits) {
  for (const Literal& l : e) {
    if ((((bits >> (l.var - 1)) & 1u) != 0) != l.positive) return false;
  }
  return true;
}

// KB ∧ E satisfiable and every model of KB ∧ E sets all of M.
inline bool is_explanation(const AbductionInstance& inst, const std::vector<Literal>& e) {
  bool consistent = false;
  for (std::uint64_t bits : models(inst.kb)) {
    if (!agrees(e, bits)) continue;
    consistent = true;
    for (Var m : inst.manifestations) {
      if (!((bits >> (m - 1)) & 1u)) return false;
    }
  }
  return consistent;
}

// Every consistent literal set over H: digit 0 = ¬h, 1 = h, 2 = absent.
template <class F>
void for_each_literal_set(const std::vector<Var>& h, F&& f) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < h.size(); ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Literal> e;
    std::uint64_t c = code;
    for (Var v : h) {
      const unsigned d = c % 3;
      c /= 3;
      if (d < 2) e.push_back({v, d == 1});
    }
    f(e);
  }
}

inline bool abd(const AbductionInstance& inst) {
  bool found = false;
  for_each_literal_set(inst.hypotheses, [&](const std::vector<Literal>& e) {
    found = found || is_explanation(inst, e);
  });
  return found;
}

inline std::vector<std::vector<Literal>> positive_explanations(const AbductionInstance& inst) {
  std::vector<std::vector<Literal>> out;
  const auto& h = inst.hypotheses;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << h.size()); ++s) {
    std::vector<Literal> e;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if ((s >> i) & 1u) e.push_back({h[i], true});
    }
    if (is_explanation(inst, e)) out.push_back(e);
  }
  return out;
}

inline bool pabd(const AbductionInstance& inst) { return !positive_explanations(inst).empty(); }

inline std::set<std::vector<Literal>> full_explanations(const AbductionInstance& inst) {
  std::set<std::vector<Literal>> out;
  const auto& h = inst.hypotheses;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << h.size()); ++s) {
    std::vector<Literal> e;
    for (std::size_t i = 0; i < h.size(); ++i) e.push_back({h[i], ((s >> i) & 1u) != 0});
    std::sort(e.begin(), e.end());
    if (is_explanation(inst, e)) out.insert(e);
  }
  return out;
}

inline std::set<std::vector<Literal>> maximal_positive(const AbductionInstance& inst) {
  const auto all = positive_explanations(inst);
  std::set<std::vector<Literal>> out;
  for (const auto& e : all) {
    bool maximal = true;
    for (const auto& f : all) {
      if (f.size() > e.size() && std::includes(f.begin(), f.end(), e.begin(), e.end())) maximal = false;
    }
    if (maximal) out.insert(e);
  }
  return out;
}

// Rank over GF(2) of rows given as bit masks (bit n = right-hand side).
inline unsigned gf2_rank(std::vector<std::uint64_t> rows, unsigned cols, bool* consistent) {
  unsigned rank = 0;
  *consistent = true;
  for (unsigned c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !((rows[pivot] >> c) & 1u)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && ((rows[r] >> c) & 1u)) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  const std::uint64_t lhs = (std::uint64_t{1} << cols) - 1;
  for (std::uint64_t r : rows) {
    if (!(r & lhs) && (r >> cols)) *consistent = false;
  }
  return rank;
}

// ∃X ∀Y: some term holds. Terms are literal lists.
inline bool qbf(unsigned num_vars, const std::vector<Var>& exists, const std::vector<Var>& forall,
                const std::vector<std::vector<Literal>>& terms) {
  (void)num_vars;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << exists.size()); ++x) {
    bool all = true;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << forall.size()) && all; ++y) {
      std::uint64_t bits = 0;
      for (std::size_t i = 0; i < exists.size(); ++i) {
        if ((x >> i) & 1u) bits |= std::uint64_t{1} << (exists[i] - 1);
      }
      for (std::size_t i = 0; i < forall.size(); ++i) {
        if ((y >> i) & 1u) bits |= std::uint64_t{1} << (forall[i] - 1);
      }
      bool some = false;
      for (const auto& t : terms) some = some || agrees(t, bits);
      all = some;
    }
    if (all) return true;
  }
  return false;
}

}  // namespace oracle
