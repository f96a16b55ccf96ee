#include <algorithm>

#include "abd/solvers.hpp"

#ifdef ABD_HAVE_OPENMP
#include <omp.h>
#endif

namespace abd {

namespace {

struct Compiled {
  struct Con {
    const Relation* relation;
    std::vector<unsigned> bits;  // scope as 0-based variable positions
  };
  std::vector<Con> constraints;
  std::vector<unsigned> hyp_bits;
  std::uint64_t man_mask = 0;
  unsigned n = 0;
};

Compiled compile(const AbductionInstance& inst) {
  if (inst.num_vars() > 40) throw PreconditionError("pattern table limited to 40 variables");
  if (inst.hypotheses.size() > 24) throw PreconditionError("pattern table limited to 24 hypotheses");
  Compiled c;
  c.n = inst.num_vars();
  for (const Constraint& k : inst.kb.constraints()) {
    Compiled::Con con{k.relation.get(), {}};
    for (Var v : k.scope) con.bits.push_back(v - 1);
    c.constraints.push_back(std::move(con));
  }
  for (Var h : inst.hypotheses) c.hyp_bits.push_back(h - 1);
  for (Var m : inst.manifestations) c.man_mask |= std::uint64_t{1} << (m - 1);
  return c;
}

inline void scan(const Compiled& c, std::uint64_t begin, std::uint64_t end, std::uint8_t* flags) {
  for (std::uint64_t a = begin; a < end; ++a) {
    bool model = true;
    for (const auto& con : c.constraints) {
      Relation::Tuple t = 0;
      for (std::size_t i = 0; i < con.bits.size(); ++i) t |= static_cast<Relation::Tuple>((a >> con.bits[i]) & 1u) << i;
      if (!con.relation->contains(t)) {
        model = false;
        break;
      }
    }
    if (!model) continue;
    std::size_t p = 0;
    for (std::size_t i = 0; i < c.hyp_bits.size(); ++i) p |= static_cast<std::size_t>((a >> c.hyp_bits[i]) & 1u) << i;
    flags[p] |= PatternTable::kSat;
    if ((a & c.man_mask) != c.man_mask) flags[p] |= PatternTable::kBad;
  }
}

}  // namespace

PatternTable pattern_table_serial(const AbductionInstance& inst) {
  const Compiled c = compile(inst);
  PatternTable table{inst.hypotheses, std::vector<std::uint8_t>(std::size_t{1} << c.hyp_bits.size(), 0)};
  scan(c, 0, std::uint64_t{1} << c.n, table.flags.data());
  return table;
}

bool parallel_kernel_available() {
#ifdef ABD_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

PatternTable pattern_table_parallel(const AbductionInstance& inst) {
#ifdef ABD_HAVE_OPENMP
  const Compiled c = compile(inst);
  const std::size_t patterns = std::size_t{1} << c.hyp_bits.size();
  PatternTable table{inst.hypotheses, std::vector<std::uint8_t>(patterns, 0)};
  const std::int64_t total = std::int64_t{1} << c.n;
  const std::int64_t chunk = 1 << 12;
  const std::int64_t chunks = (total + chunk - 1) / chunk;
#pragma omp parallel
  {
    std::vector<std::uint8_t> local(patterns, 0);
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < chunks; ++i) {
      const auto begin = static_cast<std::uint64_t>(i * chunk);
      const auto end = static_cast<std::uint64_t>(std::min(total, (i + 1) * chunk));
      scan(c, begin, end, local.data());
    }
#pragma omp critical
    for (std::size_t p = 0; p < patterns; ++p) table.flags[p] |= local[p];
  }
  return table;
#else
  return pattern_table_serial(inst);
#endif
}

}  // namespace abd
