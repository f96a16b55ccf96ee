#include <doctest.h>

#include <cmath>
#include <set>
#include <unordered_set>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "abd/harness.hpp"

using namespace abd;
using namespace fixture;

namespace {

std::uint64_t bits_of(const Assignment& a) {
  std::uint64_t b = 0;
  for (Var v = 1; v <= a.size(); ++v) {
    if (a[v]) b |= std::uint64_t{1} << (v - 1);
  }
  return b;
}

// Model set as bit masks; fails the test on a duplicate emission.
std::vector<std::uint64_t> drain_sorted(ModelStream& s) {
  std::vector<std::uint64_t> out;
  std::unordered_set<Assignment, AssignmentHash> seen;
  while (auto m = s.next()) {
    REQUIRE(seen.insert(*m).second);
    out.push_back(bits_of(*m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RelationRef> pool_of(const ConstraintLanguage& l) {
  std::vector<RelationRef> out;
  for (const auto& r : l.relations()) {
    if (r->arity() > 0) out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("decide examples") {
  Formula diag(1);
  diag.add(rel::neq(), {1, 1});
  CHECK_FALSE(decide(diag));
  CHECK(decide(Formula(3)));
  const auto inst = example1();
  const Literal e1[] = {{A, true}, {D, false}, {E, false}};
  CHECK(decide(conjoin_literals(inst.kb, e1)));
  Formula f0(2);
  f0.add(rel::false0(), {});
  CHECK_FALSE(decide(f0));
}

TEST_CASE("find_model returns a model") {
  std::mt19937_64 rng(2);
  const auto pool = mixed_pool();
  for (int trial = 0; trial < 300; ++trial) {
    const Formula f = random_formula(1 + rng() % 12, rng() % 10, pool, rng);
    const auto m = find_model(f);
    REQUIRE(m.has_value() == !oracle::models(f).empty());
    if (m) REQUIRE(evaluate(f, *m));
  }
}

TEST_CASE("enumerate examples") {
  Formula f(2);
  f.add(rel::neq(), {1, 2});
  CHECK(collect(*enumerate(f)).size() == 2);
  for (Var m = 1; m <= 6; ++m) {
    Formula chain(2 * m);
    for (Var i = 1; i < 2 * m; i += 2) chain.add(rel::neq(), {i, i + 1});
    CHECK(collect(*enumerate(chain)).size() == (std::size_t{1} << m));
  }
  Formula unsat(1);
  unsat.add(rel::bottom(), {1});
  unsat.add(rel::top(), {1});
  CHECK(collect(*enumerate(unsat)).empty());
}

TEST_CASE("dpll enumeration equals brute force") {
  std::mt19937_64 rng(4);
  const auto pool = mixed_pool();
  for (int trial = 0; trial < 300; ++trial) {
    const Formula f = random_formula(1 + rng() % 14, rng() % 12, pool, rng);
    auto s = enumerate(f);
    REQUIRE(drain_sorted(*s) == oracle::models(f));
    const auto& st = s->stats();
    REQUIRE(st.models_emitted <= st.leaves);
  }
}

TEST_CASE("sparse enumeration equals brute force") {
  std::mt19937_64 rng(6);
  const std::vector<ConstraintLanguage> languages = {xsat_family(4), equations(3), aff(3), nae(3)};
  for (const auto& l : languages) {
    std::vector<RelationRef> pool;
    for (const auto& r : pool_of(l)) {
      if (is_non_trivial(*r)) pool.push_back(r);
    }
    for (int trial = 0; trial < 120; ++trial) {
      const Formula f = random_formula(1 + rng() % 14, rng() % 10, pool, rng);
      auto s = sparse_enumerate(f);
      REQUIRE(drain_sorted(*s) == oracle::models(f));
    }
  }
}

TEST_CASE("sparse enumeration on one exactly-one constraint") {
  Formula f(3);
  f.add(make_ref(exactly_one_relation(3)), {1, 2, 3});
  auto s = sparse_enumerate(f);
  CHECK(collect(*s).size() == 3);
  CHECK(s->stats().models_emitted == 3);
  CHECK(s->stats().leaves == 3);
  CHECK(s->stats().branch_nodes == 1);
}

TEST_CASE("sparse enumeration of the inequality chain") {
  for (Var m = 1; m <= 10; ++m) {
    Formula chain(2 * m);
    for (Var i = 1; i < 2 * m; i += 2) chain.add(make_ref(exactly_one_relation(2)), {i, i + 1});
    auto s = sparse_enumerate(chain);
    REQUIRE(collect(*s).size() == (std::size_t{1} << m));
    // Each node branches two ways on one scope: a complete binary tree.
    REQUIRE(s->stats().branch_nodes == (std::uint64_t{1} << m) - 1);
  }
}

TEST_CASE("sparse enumeration rejects relations outside the closure") {
  Formula f(2);
  f.add(rel::neq(), {1, 2});
  const ConstraintLanguage small({rel::bottom()});
  CHECK_THROWS_AS(collect(*sparse_enumerate(f, small)), ContractViolation);
  Formula t(2);
  t.add(make_ref(clause_relation({true, true})), {1, 2});
  t.add(make_ref(Relation(2, {0, 1, 2, 3})), {1, 2});
  CHECK_THROWS(sparse_enumerate(t));
}

TEST_CASE("affine systems match Gaussian elimination") {
  // x1+x2+x3 = 0, x3+x4 = 1.
  Formula f(4);
  f.add(make_ref(parity_relation(3, false)), {1, 2, 3});
  f.add(make_ref(parity_relation(2, true)), {3, 4});
  CHECK(collect(*sparse_enumerate(f)).size() == 4);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const Var n = 1 + rng() % 16;
    Formula g(n);
    std::vector<std::uint64_t> rows;
    const unsigned eqs = rng() % (n + 2);
    for (unsigned e = 0; e < eqs; ++e) {
      const unsigned k = 1 + rng() % std::min<Var>(3, n);
      std::vector<Var> vars(n);
      for (Var v = 0; v < n; ++v) vars[v] = v + 1;
      std::shuffle(vars.begin(), vars.end(), rng);
      vars.resize(k);
      const bool odd = rng() % 2;
      g.add(make_ref(parity_relation(k, odd)), vars);
      std::uint64_t row = odd ? std::uint64_t{1} << n : 0;
      for (Var v : vars) row |= std::uint64_t{1} << (v - 1);
      rows.push_back(row);
    }
    bool consistent = false;
    const unsigned rank = oracle::gf2_rank(rows, n, &consistent);
    const std::size_t expect = consistent ? std::size_t{1} << (n - rank) : 0;
    auto s = sparse_enumerate(g);
    REQUIRE(drain_sorted(*s).size() == expect);
  }
}

TEST_CASE("sparse leaves on random exactly-one instances") {
  for (unsigned n = 10; n <= 24; n += 2) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      GenParams p;
      p.family = "xsat";
      p.n = n;
      p.seed = seed;
      auto s = sparse_enumerate(generate(p).instance.kb);
      collect(*s);
      REQUIRE(static_cast<double>(s->stats().leaves) <= n * n * std::pow(std::sqrt(2.0), n));
    }
  }
}

TEST_CASE("weight ordered enumeration") {
  Formula f(2);
  f.add(make_ref(Relation(2, {0b11, 0b01, 0b00})), {1, 2});
  auto s = enumerate_weight_ordered(f, {1, 2});
  CHECK(s->order() == StreamOrder::weight_non_increasing);
  const Var h[] = {1, 2};
  std::vector<std::size_t> weights;
  while (auto m = s->next()) weights.push_back(m->weight(h));
  CHECK(weights == std::vector<std::size_t>{2, 1, 0});

  const auto inst = example1();
  auto t = enumerate_weight_ordered(inst.kb, inst.hypotheses);
  const auto all = collect(*t);
  std::size_t best = 0;
  for (const auto& m : all) best = std::max(best, m.weight(inst.hypotheses));
  REQUIRE_FALSE(all.empty());
  CHECK(all.front().weight(inst.hypotheses) == best);
  for (std::size_t i = 1; i < all.size(); ++i) {
    CHECK(all[i].weight(inst.hypotheses) <= all[i - 1].weight(inst.hypotheses));
  }
  CHECK(all.size() == oracle::models(inst.kb).size());

  Formula unsat(1);
  unsat.add(rel::false0(), {});
  CHECK(collect(*enumerate_weight_ordered(unsat, {1})).empty());
}

TEST_CASE("weight ordering holds on random formulas") {
  std::mt19937_64 rng(10);
  const auto pool = mixed_pool();
  for (int trial = 0; trial < 100; ++trial) {
    const Var n = 1 + rng() % 10;
    const Formula f = random_formula(n, rng() % 6, pool, rng);
    std::vector<Var> h;
    for (Var v = 1; v <= n; ++v) {
      if (rng() % 2) h.push_back(v);
    }
    auto s = enumerate_weight_ordered(f, h);
    std::size_t prev = h.size() + 1, count = 0;
    while (auto m = s->next()) {
      REQUIRE(m->weight(h) <= prev);
      prev = m->weight(h);
      ++count;
    }
    REQUIRE(count == oracle::models(f).size());
  }
}

TEST_CASE("simplesat examples") {
  SimpleSatInstance a{2, {}, {{{1, 2}}}, 2};
  auto r = solve_simple_sat(a);
  REQUIRE(r.model);
  CHECK_FALSE((*r.model)[1]);
  CHECK_FALSE((*r.model)[2]);

  SimpleSatInstance b{2, {{1, 2}}, {{{1}, {2}}}, 2};
  r = solve_simple_sat(b);
  REQUIRE(r.model);
  CHECK(b.satisfied_by(*r.model));

  SimpleSatInstance c{1, {{1}}, {{{1}}}, 1};
  CHECK_FALSE(solve_simple_sat(c).model);

  SimpleSatInstance bad{2, {{1, 2, 1}}, {}, 2};
  CHECK_THROWS_AS(bad.validate(), StructuralError);
}

TEST_CASE("simplesat agrees with brute force") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    SimpleSatInstance s;
    s.num_vars = 1 + rng() % 10;
    s.p = 1 + rng() % 3;
    for (unsigned c = rng() % 8; c > 0; --c) {
      std::set<Var> clause;
      const unsigned w = 1 + rng() % s.p;
      while (clause.size() < std::min<unsigned>(w, s.num_vars)) clause.insert(1 + rng() % s.num_vars);
      s.positive_clauses.push_back({clause.begin(), clause.end()});
    }
    for (unsigned d = rng() % 3; d > 0; --d) {
      std::vector<std::vector<Var>> dnf;
      for (unsigned t = 1 + rng() % 3; t > 0; --t) {
        std::set<Var> term;
        for (unsigned i = 1 + rng() % 3; i > 0; --i) term.insert(1 + rng() % s.num_vars);
        dnf.push_back({term.begin(), term.end()});
      }
      s.negative_dnfs.push_back(dnf);
    }
    bool sat = false;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << s.num_vars) && !sat; ++bits) {
      bool ok = true;
      for (const auto& cl : s.positive_clauses) {
        bool any = false;
        for (Var v : cl) any = any || ((bits >> (v - 1)) & 1u);
        ok = ok && any;
      }
      for (const auto& dnf : s.negative_dnfs) {
        bool any = false;
        for (const auto& term : dnf) {
          bool all0 = true;
          for (Var v : term) all0 = all0 && !((bits >> (v - 1)) & 1u);
          any = any || all0;
        }
        ok = ok && any;
      }
      sat = ok;
    }
    const auto r = solve_simple_sat(s);
    REQUIRE(r.model.has_value() == sat);
    if (r.model) REQUIRE(s.satisfied_by(*r.model));
  }
}

TEST_CASE("simplesat node count follows the golden ratio on the path family") {
  // Path clauses (x_i ∨ x_{i+1}) with the DNF "some adjacent pair is 0": no
  // model, so the (1,2)-branching explores the whole tree.
  std::vector<double> xs, ys;
  for (Var n = 8; n <= 24; n += 2) {
    SimpleSatInstance s;
    s.num_vars = n;
    s.p = 2;
    std::vector<std::vector<Var>> dnf;
    for (Var i = 1; i < n; ++i) {
      s.positive_clauses.push_back({i, i + 1});
      dnf.push_back({i, i + 1});
    }
    s.negative_dnfs.push_back(dnf);
    const auto r = solve_simple_sat(s);
    REQUIRE_FALSE(r.model);
    xs.push_back(n);
    ys.push_back(static_cast<double>(r.stats.branch_nodes));
  }
  const BaseFit fit = fit_base(xs, ys);
  CHECK(fit.base <= 1.65);
  CHECK(std::abs(fit.base - (1 + std::sqrt(5.0)) / 2) <= 0.01);
}
