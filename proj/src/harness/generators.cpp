#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <numeric>

#include "abd/harness.hpp"

namespace abd {

std::uint64_t default_seed() {
  const char* env = std::getenv("ABD_SEED");
  if (!env || !*env) return kDefaultSeed;
  std::uint64_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [p, ec] = std::from_chars(env, end, v);
  return ec == std::errc() && p == end ? v : kDefaultSeed;
}

namespace {

unsigned uniform(Rng& rng, unsigned lo, unsigned hi) {
  return std::uniform_int_distribution<unsigned>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// k distinct variables from 1..n in random order.
std::vector<Var> pick_vars(Var n, unsigned k, Rng& rng) {
  std::vector<Var> all(n);
  std::iota(all.begin(), all.end(), Var{1});
  for (unsigned i = 0; i < k; ++i) {
    std::swap(all[i], all[uniform(rng, i, n - 1)]);
  }
  all.resize(k);
  return all;
}

// One shared ref per distinct relation.
class Interner {
 public:
  RelationRef operator()(Relation r) {
    if (RelationRef hit = lang_.find(r)) return hit;
    RelationRef ref = make_ref(std::move(r));
    lang_.add(ref);
    return ref;
  }

 private:
  ConstraintLanguage lang_;
};

// Per variable: 40% H, 20% M, 5% both, otherwise neither.
void random_roles(Var n, Rng& rng, std::vector<Var>& h, std::vector<Var>& m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Var v = 1; v <= n; ++v) {
    const double x = u(rng);
    if (x < 0.40) h.push_back(v);
    else if (x < 0.60) m.push_back(v);
    else if (x < 0.65) {
      h.push_back(v);
      m.push_back(v);
    }
  }
}

AbductionInstance with_random_roles(Formula kb, Rng& rng) {
  std::vector<Var> h, m;
  random_roles(kb.num_vars(), rng, h, m);
  return AbductionInstance::make(std::move(kb), std::move(h), std::move(m));
}

unsigned constraint_count(const GenParams& p, unsigned fallback) {
  return p.constraints ? p.constraints : std::max(1u, fallback);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

Generated gen_xsat_chain(const GenParams& p) {
  require(p.n >= 2 && p.n % 2 == 0, "xsat-chain needs an even n >= 2");
  Formula kb(p.n);
  for (Var i = 1; i < p.n; i += 2) kb.add(rel::neq(), {i, i + 1});
  std::vector<Var> h;
  for (Var i = 1; i <= p.n; i += 2) h.push_back(i);
  return {AbductionInstance::make(std::move(kb), std::move(h), {p.n}), std::nullopt};
}

Generated gen_xsat(const GenParams& p, Rng& rng) {
  require(p.n >= 3, "xsat needs n >= 3");
  Interner intern;
  Formula kb(p.n);
  for (unsigned i = 0, c = constraint_count(p, p.n / 2); i < c; ++i) {
    const unsigned k = uniform(rng, 2, 3);
    kb.add(intern(exactly_one_relation(k)), pick_vars(p.n, k, rng));
  }
  return {with_random_roles(std::move(kb), rng), std::nullopt};
}

Generated gen_equations(const GenParams& p, Rng& rng) {
  require(p.n >= 3, "equations needs n >= 3");
  Interner intern;
  Formula kb(p.n);
  const unsigned kmax = std::clamp(p.k, 1u, 3u);
  for (unsigned i = 0, c = constraint_count(p, p.n / 2); i < c;) {
    const unsigned k = uniform(rng, 1, kmax);
    const unsigned mod = uniform(rng, 2, std::min(4u, k + 1));
    const unsigned q = uniform(rng, 0, mod - 1);
    Relation r = equation_relation(k, mod, q);
    if (r.empty() || r.is_full()) continue;
    kb.add(intern(std::move(r)), pick_vars(p.n, k, rng));
    ++i;
  }
  return {with_random_roles(std::move(kb), rng), std::nullopt};
}

Generated gen_aff(const GenParams& p, Rng& rng) {
  require(p.n >= 3, "aff needs n >= 3");
  Interner intern;
  Formula kb(p.n);
  const unsigned kmax = std::clamp(p.k, 1u, 3u);
  for (unsigned i = 0, c = constraint_count(p, p.n / 2); i < c; ++i) {
    const unsigned k = uniform(rng, 1, kmax);
    kb.add(intern(parity_relation(k, coin(rng, 0.5))), pick_vars(p.n, k, rng));
  }
  return {with_random_roles(std::move(kb), rng), std::nullopt};
}

Generated gen_kcnf_pos(const GenParams& p, Rng& rng) {
  require(p.n >= 2 && p.k >= 1, "kcnf-pos needs n >= 2, k >= 1");
  Interner intern;
  Formula kb(p.n);
  const unsigned kmax = std::min<unsigned>(p.k, p.n);
  for (unsigned i = 0, c = constraint_count(p, p.n); i < c; ++i) {
    const unsigned k = uniform(rng, std::min(2u, kmax), kmax);
    kb.add(intern(clause_relation(std::vector<bool>(k, true))), pick_vars(p.n, k, rng));
  }
  return {with_random_roles(std::move(kb), rng), std::nullopt};
}

// Positive 2-clauses along a path plus each extended by m: SimpleSAT sees
// only (1,2)-branchings.
Generated gen_kcnf_pos_chain(const GenParams& p) {
  require(p.n >= 2, "kcnf-pos-chain needs n >= 2");
  const Var m = p.n + 1;
  Interner intern;
  Formula kb(p.n + 1);
  const RelationRef c2 = intern(clause_relation({true, true}));
  const RelationRef c3 = intern(clause_relation({true, true, true}));
  for (Var i = 1; i < p.n; ++i) {
    kb.add(c2, {i, i + 1});
    kb.add(c3, {i, i + 1, m});
  }
  std::vector<Var> h(p.n);
  std::iota(h.begin(), h.end(), Var{1});
  return {AbductionInstance::make(std::move(kb), std::move(h), {m}), std::nullopt};
}

Generated gen_kcnf_neg_imp(const GenParams& p, Rng& rng) {
  require(p.n >= 2 && p.k >= 1, "kcnf-neg-imp needs n >= 2, k >= 1");
  Interner intern;
  Formula kb(p.n);
  const unsigned kmax = std::min<unsigned>(p.k, p.n);
  for (unsigned i = 0, c = constraint_count(p, p.n); i < c; ++i) {
    if (coin(rng, 0.5)) {
      kb.add(intern(imp_relation()), pick_vars(p.n, 2, rng));
    } else {
      const unsigned k = uniform(rng, 1, kmax);
      kb.add(intern(clause_relation(std::vector<bool>(k, false))), pick_vars(p.n, k, rng));
    }
  }
  return {with_random_roles(std::move(kb), rng), std::nullopt};
}

Generated gen_nae(const GenParams& p, Rng& rng) {
  require(p.n >= 3, "nae needs n >= 3");
  Interner intern;
  Formula kb(p.n);
  for (unsigned i = 0, c = constraint_count(p, p.n); i < c; ++i) {
    if (coin(rng, 0.1)) {
      kb.add(coin(rng, 0.5) ? rel::bottom() : rel::top(), {uniform(rng, 1, p.n)});
      continue;
    }
    std::vector<bool> sign(3);
    for (unsigned j = 0; j < 3; ++j) sign[j] = coin(rng, 0.5);
    kb.add(intern(nae_relation(sign)), pick_vars(p.n, 3, rng));
  }
  return {with_random_roles(std::move(kb), rng), std::nullopt};
}

Generated gen_cnf(const GenParams& p, Rng& rng) {
  require(p.n >= 2 && p.k >= 1, "cnf needs n >= 2, k >= 1");
  Cnf cnf{p.n, {}};
  const unsigned kmax = std::min<unsigned>(p.k, p.n);
  for (unsigned i = 0, c = constraint_count(p, p.n); i < c; ++i) {
    Clause clause;
    for (Var v : pick_vars(p.n, uniform(rng, 1, kmax), rng)) clause.push_back({v, coin(rng, 0.5)});
    cnf.clauses.push_back(std::move(clause));
  }
  return {with_random_roles(to_formula(cnf), rng), std::nullopt};
}

// No explanation exists, so a candidate scan over H sees all 2^|H| sets.
Generated gen_full_h(const GenParams& p) {
  require(p.n >= 2, "full-h needs n >= 2");
  Formula kb(p.n);
  const RelationRef imp = make_ref(imp_relation());
  std::vector<Var> h;
  for (Var i = 1; i < p.n; ++i) {
    kb.add(imp, {p.n, i});
    h.push_back(i);
  }
  return {AbductionInstance::make(std::move(kb), std::move(h), {p.n}), std::nullopt};
}

template <class T>
Generated from_reduction(Reduced<T> r) {
  return {std::move(r.output), std::move(r.report)};
}

}  // namespace

Cnf random_cnf(Var n, std::size_t clauses, unsigned k, Rng& rng) {
  require(n >= 1 && k >= 1, "random_cnf needs n, k >= 1");
  Cnf cnf{n, {}};
  const unsigned width = std::min<unsigned>(k, n);
  for (std::size_t i = 0; i < clauses; ++i) {
    Clause clause;
    for (Var v : pick_vars(n, width, rng)) clause.push_back({v, coin(rng, 0.5)});
    std::sort(clause.begin(), clause.end());
    cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

QbfInstance random_qbf(unsigned exists, unsigned forall, unsigned terms, Rng& rng) {
  QbfInstance q;
  q.num_vars = exists + forall;
  for (Var v = 1; v <= exists; ++v) q.exists.push_back(v);
  for (Var v = exists + 1; v <= q.num_vars; ++v) q.forall.push_back(v);
  if (q.num_vars == 0) return q;
  for (unsigned i = 0; i < terms; ++i) {
    std::vector<Literal> term;
    for (Var v : pick_vars(q.num_vars, uniform(rng, 1, std::min<unsigned>(3, q.num_vars)), rng)) {
      term.push_back({v, coin(rng, 0.5)});
    }
    std::sort(term.begin(), term.end());
    q.terms.push_back(std::move(term));
  }
  return q;
}

ColoredGraph random_colored_graph(unsigned vertices, unsigned colors, double edge_prob, Rng& rng) {
  require(colors >= 1, "a colored graph needs at least one colour");
  ColoredGraph g;
  g.num_vertices = vertices;
  g.num_colors = colors;
  for (unsigned v = 0; v < vertices; ++v) g.color.push_back(uniform(rng, 0, colors - 1));
  for (unsigned u = 0; u < vertices; ++u) {
    for (unsigned v = u + 1; v < vertices; ++v) {
      if (coin(rng, edge_prob)) g.edges.push_back({u, v});
    }
  }
  return g;
}

bool has_colorful_clique(const ColoredGraph& g) {
  g.validate();
  require(g.num_vertices <= 24, "colourful clique brute force is limited to 24 vertices");
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << g.num_vertices); ++s) {
    if (static_cast<unsigned>(std::popcount(s)) != g.num_colors) continue;
    std::uint32_t seen = 0;
    bool ok = true;
    for (unsigned u = 0; u < g.num_vertices && ok; ++u) {
      if (!((s >> u) & 1u)) continue;
      if ((seen >> g.color[u]) & 1u) ok = false;
      seen |= std::uint32_t{1} << g.color[u];
      for (unsigned v = u + 1; v < g.num_vertices && ok; ++v) {
        if (((s >> v) & 1u) && !g.adjacent(u, v)) ok = false;
      }
    }
    if (ok) return true;
  }
  return false;
}

const std::vector<std::string>& generator_families() {
  static const std::vector<std::string> names = {
      "xsat-chain", "xsat",   "equations", "aff",     "kcnf-pos",   "kcnf-pos-chain", "kcnf-neg-imp",
      "clique",     "qbf4cnf", "cnfsat-lb", "nae",    "cnf",        "full-h"};
  return names;
}

Generated generate(const GenParams& p) {
  Rng rng(p.seed);
  const std::string& f = p.family;
  if (f == "xsat-chain") return gen_xsat_chain(p);
  if (f == "xsat") return gen_xsat(p, rng);
  if (f == "equations") return gen_equations(p, rng);
  if (f == "aff") return gen_aff(p, rng);
  if (f == "kcnf-pos") return gen_kcnf_pos(p, rng);
  if (f == "kcnf-pos-chain") return gen_kcnf_pos_chain(p);
  if (f == "kcnf-neg-imp") return gen_kcnf_neg_imp(p, rng);
  if (f == "nae") return gen_nae(p, rng);
  if (f == "cnf") return gen_cnf(p, rng);
  if (f == "full-h") return gen_full_h(p);
  if (f == "clique") {
    return from_reduction(clique_to_abd(random_colored_graph(p.n, p.colors, p.edge_prob, rng)));
  }
  if (f == "qbf4cnf") return from_reduction(qbf_to_abd4cnf(random_qbf(p.exists, p.forall, p.terms, rng)));
  if (f == "cnfsat-lb") {
    require(p.n >= 1, "cnfsat-lb needs n >= 1");
    return from_reduction(cnfsat_to_abd_lb(random_cnf(p.n, constraint_count(p, p.n), p.k, rng)));
  }
  throw PreconditionError("unknown family '" + f + "'");
}

}  // namespace abd
