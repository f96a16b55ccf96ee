#include <doctest.h>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "abd/harness.hpp"

using namespace abd;
using namespace fixture;

namespace {

bool brute_sat(const Cnf& cnf) {
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.num_vars); ++bits) {
    bool ok = true;
    for (const auto& cl : cnf.clauses) {
      bool any = false;
      for (const Literal& l : cl) any = any || ((((bits >> (l.var - 1)) & 1u) != 0) == l.positive);
      ok = ok && any;
    }
    if (ok) return true;
  }
  return false;
}

Cnf random_cnf_small(Var n, std::size_t m, unsigned k, std::mt19937_64& rng) {
  Cnf cnf{n, {}};
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Var> vars(n);
    for (Var v = 0; v < n; ++v) vars[v] = v + 1;
    std::shuffle(vars.begin(), vars.end(), rng);
    Clause c;
    for (unsigned j = 0; j < std::min<unsigned>(1 + rng() % k, n); ++j) c.push_back({vars[j], rng() % 2 == 0});
    cnf.clauses.push_back(c);
  }
  return cnf;
}

AbductionInstance from_cnf(const Cnf& cnf, std::vector<Var> h, std::vector<Var> m) {
  return AbductionInstance::make(to_formula(cnf), std::move(h), std::move(m));
}

void random_roles(Var n, std::mt19937_64& rng, std::vector<Var>& h, std::vector<Var>& m) {
  for (Var v = 1; v <= n; ++v) {
    const unsigned roll = rng() % 10;
    if (roll < 4) h.push_back(v);
    else if (roll < 6) m.push_back(v);
  }
}

Literal pos(Var v) { return {v, true}; }
Literal neg(Var v) { return {v, false}; }

}  // namespace

TEST_CASE("cnf round trip and fragment recognisers") {
  const Cnf cnf{3, {{pos(1), neg(2)}, {neg(1), neg(3)}, {pos(3)}}};
  const Formula f = to_formula(cnf);
  const auto back = as_cnf(f);
  REQUIRE(back);
  CHECK(back->clauses.size() == 3);
  CHECK(oracle::models(f).size() == oracle::models(to_formula(*back)).size());
  CHECK_FALSE(as_cnf(f, 1));
  CHECK_FALSE(kcnf_pos_width(f));
  CHECK(kcnf_pos_width(to_formula(Cnf{3, {{pos(1), pos(2), pos(3)}, {pos(2)}}})) == 3u);
  CHECK(negimp_width(to_formula(Cnf{3, {{neg(1), neg(2), neg(3)}, {neg(1), pos(2)}}})) == 3u);
  CHECK_FALSE(negimp_width(to_formula(Cnf{2, {{pos(1), pos(2)}}})));
}

TEST_CASE("negative clauses and implications to positive clauses") {
  SUBCASE("single implication") {
    const auto in = from_cnf(Cnf{2, {{neg(1), pos(2)}}}, {1}, {2});
    const auto r = negimp_to_pos(in);
    CHECK(kcnf_pos_width(r.output.kb));
    CHECK(oracle::abd(in));
    CHECK(oracle::abd(r.output));
    CHECK(r.report.added_vars <= 2);
  }
  SUBCASE("conflicting hypotheses") {
    const auto in = from_cnf(Cnf{3, {{neg(1), neg(2)}, {neg(1), pos(3)}}}, {1, 2}, {3});
    const auto r = negimp_to_pos(in);
    CHECK(oracle::abd(in) == oracle::abd(r.output));
    // (h1 ∨ h2) is among the output clauses.
    const auto cnf = as_cnf(r.output.kb);
    REQUIRE(cnf);
    const Clause both{pos(1), pos(2)};
    CHECK(std::find(cnf->clauses.begin(), cnf->clauses.end(), both) != cnf->clauses.end());
  }
  SUBCASE("empty hypothesis set") {
    const auto in = from_cnf(Cnf{2, {{neg(1), pos(2)}}}, {}, {2});
    const auto r = negimp_to_pos(in);
    CHECK_FALSE(oracle::abd(in));
    CHECK_FALSE(oracle::abd(r.output));
  }
  CHECK_THROWS_AS(negimp_to_pos(from_cnf(Cnf{2, {{pos(1), pos(2)}}}, {1}, {2})), FragmentError);
}

TEST_CASE("negative clauses and implications: answers and explanations flip") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 400; ++trial) {
    const Var n = 2 + rng() % 8;
    Cnf cnf{n, {}};
    for (unsigned i = 0; i < 1 + rng() % n; ++i) {
      const Var a = 1 + rng() % n, b = 1 + rng() % n;
      if (a == b) continue;
      if (rng() % 2) cnf.clauses.push_back({neg(a), pos(b)});
      else cnf.clauses.push_back({neg(a), neg(b)});
    }
    std::vector<Var> h, m;
    random_roles(n, rng, h, m);
    const auto in = from_cnf(cnf, h, m);
    const auto r = negimp_to_pos(in);
    REQUIRE(r.report.added_vars <= 2);
    const bool out = oracle::abd(r.output);
    REQUIRE(out == oracle::pabd(in));
    REQUIRE(out == oracle::abd(in));
    if (r.report.added_vars == 0) {
      // E ⊆ H explains the input iff {¬h : h ∈ E} explains the output.
      for (const auto& e : oracle::positive_explanations(in)) {
        std::vector<Literal> flipped;
        for (const Literal& l : e) flipped.push_back(l.negated());
        REQUIRE(oracle::is_explanation(r.output, flipped));
      }
    }
  }
}

TEST_CASE("positive clauses to SimpleSAT") {
  SUBCASE("one usable clause") {
    const auto in = from_cnf(Cnf{2, {{pos(1), pos(2)}}}, {1}, {2});
    const auto r = abd_to_simplesat(in);
    CHECK(r.output.positive_clauses.empty());
    REQUIRE(r.output.negative_dnfs.size() == 1);
    CHECK(r.output.negative_dnfs[0] == std::vector<std::vector<Var>>{{1}});
    CHECK(solve_simple_sat(r.output).model);
    CHECK(oracle::abd(in));
  }
  SUBCASE("manifestation without a usable clause") {
    const auto in = from_cnf(Cnf{3, {{pos(1), pos(2)}, {pos(3), pos(2), pos(1)}}}, {1}, {3});
    // (x3 ∨ x2 ∨ x1) mixes a non-hypothesis, non-manifestation variable.
    const auto r = abd_to_simplesat(in);
    CHECK_FALSE(solve_simple_sat(r.output).model);
    CHECK_FALSE(oracle::abd(in));
  }
  SUBCASE("pure hypothesis clause") {
    const auto in = from_cnf(Cnf{3, {{pos(1), pos(2)}, {pos(1), pos(3)}}}, {1, 2}, {3});
    const auto r = abd_to_simplesat(in);
    const auto model = solve_simple_sat(r.output).model;
    REQUIRE(model);
    CHECK_FALSE((*model)[1]);
    CHECK((*model)[2]);
    CHECK(oracle::is_explanation(in, {neg(1)}));
  }
}

TEST_CASE("positive clauses to SimpleSAT preserve answers") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 400; ++trial) {
    const Var n = 2 + rng() % 10;
    Cnf cnf = random_cnf_small(n, 1 + rng() % 10, 3, rng);
    for (auto& cl : cnf.clauses) {
      for (auto& l : cl) l.positive = true;
    }
    std::vector<Var> h, m;
    random_roles(n, rng, h, m);
    const auto pre = preprocess(from_cnf(cnf, h, m));
    if (pre.verdict == PreprocessVerdict::trivially_no) continue;
    const auto r = abd_to_simplesat(pre.instance);
    const auto model = solve_simple_sat(r.output);
    REQUIRE(model.model.has_value() == oracle::abd(pre.instance));
    for (const auto& cl : r.output.positive_clauses) {
      for (Var v : cl) REQUIRE(std::binary_search(pre.instance.hypotheses.begin(), pre.instance.hypotheses.end(), v));
    }
    if (model.model) {
      std::vector<Literal> e;
      for (Var v : pre.instance.hypotheses) {
        if (!(*model.model)[v]) e.push_back(neg(v));
      }
      REQUIRE(oracle::is_explanation(pre.instance, e));
    }
  }
}

TEST_CASE("colourful clique") {
  ColoredGraph edge{2, 2, {0, 1}, {{0, 1}}};
  auto r = clique_to_abd(edge);
  CHECK(r.output.num_vars() == 4);
  CHECK(oracle::abd(r.output));
  CHECK(oracle::is_explanation(r.output, {pos(1), pos(2)}));

  ColoredGraph none{2, 2, {0, 1}, {}};
  CHECK_FALSE(oracle::abd(clique_to_abd(none).output));

  ColoredGraph one{1, 1, {0}, {}};
  CHECK(oracle::abd(clique_to_abd(one).output));

  ColoredGraph bad{2, 1, {0, 3}, {}};
  CHECK_THROWS_AS(bad.validate(), StructuralError);
}

TEST_CASE("colourful clique answers") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned k = 1 + rng() % 3;
    const ColoredGraph g = random_colored_graph(k + rng() % 5, k, 0.6, rng);
    // Independent check: try every choice of one vertex per colour.
    bool clique = false;
    std::vector<unsigned> pick(k, 0);
    std::function<void(unsigned)> rec = [&](unsigned c) {
      if (clique) return;
      if (c == k) {
        for (unsigned i = 0; i < k; ++i) {
          for (unsigned j = i + 1; j < k; ++j) {
            if (!g.adjacent(pick[i], pick[j])) return;
          }
        }
        clique = true;
        return;
      }
      for (unsigned v = 0; v < g.num_vertices; ++v) {
        if (g.color[v] == c) {
          pick[c] = v;
          rec(c + 1);
        }
      }
    };
    rec(0);
    const auto r = clique_to_abd(g);
    REQUIRE(has_colorful_clique(g) == clique);
    REQUIRE(oracle::abd(r.output) == clique);
    REQUIRE(r.output.num_vars() == g.num_vertices + k);
  }
}

TEST_CASE("QBF to abduction examples") {
  const Var x = 1, y = 2;
  QbfInstance q{2, {x}, {y}, {{pos(x), neg(y)}, {pos(x), pos(y)}}};
  CHECK(qbf_true(q));
  auto r = qbf_to_abd4cnf(q);
  CHECK(r.output.hypotheses == std::vector<Var>{x});
  CHECK(r.output.manifestations == std::vector<Var>{y, 3});
  CHECK(oracle::abd(r.output));
  CHECK(oracle::is_explanation(r.output, {pos(x)}));
  // Model set equals (¬x∨y∨s)∧(¬x∨¬y∨s)∧(¬x∨y)∧(¬s∨y).
  const Cnf expected{3, {{neg(1), pos(2), pos(3)}, {neg(1), neg(2), pos(3)}, {neg(1), pos(2)}, {neg(3), pos(2)}}};
  CHECK(oracle::models(r.output.kb) == oracle::models(to_formula(expected)));

  QbfInstance only{2, {x}, {y}, {{pos(x), neg(y)}}};
  CHECK_FALSE(qbf_true(only));
  CHECK_FALSE(oracle::abd(qbf_to_abd4cnf(only).output));

  QbfInstance taut{1, {}, {1}, {{pos(1)}, {neg(1)}}};
  CHECK(qbf_true(taut));
  const auto t = qbf_to_abd4cnf(taut).output;
  CHECK(oracle::abd(t));
  CHECK(oracle::is_explanation(t, {}));
}

TEST_CASE("QBF evaluation and reduction agree with brute force") {
  Rng rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const unsigned ex = rng() % 4, fa = rng() % 4;
    if (ex + fa == 0) continue;
    const QbfInstance q = random_qbf(ex, fa, 1 + rng() % 4, rng);
    const bool truth = oracle::qbf(q.num_vars, q.exists, q.forall, q.terms);
    REQUIRE(qbf_true(q) == truth);
    const auto r = qbf_to_abd4cnf(q);
    REQUIRE(oracle::abd(r.output) == truth);
    REQUIRE(r.output.num_vars() == q.num_vars + 1);
    REQUIRE(r.output.kb.max_arity() <= 4);
  }
}

TEST_CASE("ABD to P-ABD") {
  const auto in = example1();
  const auto r = abd_to_pabd_4cnf(in);
  CHECK(r.report.added_vars == 3);
  CHECK(r.output.num_vars() == 8);
  CHECK(oracle::abd(in) == oracle::pabd(r.output));

  const auto empty = AbductionInstance::make(in.kb, {}, {C});
  CHECK(oracle::abd(empty) == oracle::pabd(abd_to_pabd_4cnf(empty).output));

  std::mt19937_64 rng(9);
  const auto pool = mixed_pool();
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(2 + rng() % 7, 1 + rng() % 6, pool, rng);
    const auto out = abd_to_pabd_4cnf(inst);
    REQUIRE(out.report.added_vars == inst.hypotheses.size());
    REQUIRE(oracle::pabd(out.output) == oracle::abd(inst));
    for (const auto& e : oracle::positive_explanations(out.output)) {
      const auto lifted = lift_pabd_witness(inst, Explanation::make(e, ExplanationKind::positive));
      REQUIRE(oracle::is_explanation(inst, lifted.literals));
      // x' in E' iff ¬x in the lifted explanation.
      for (std::size_t i = 0; i < inst.hypotheses.size(); ++i) {
        const Var xp = inst.num_vars() + static_cast<Var>(i) + 1;
        const bool has_prime = std::find(e.begin(), e.end(), pos(xp)) != e.end();
        const bool has_neg =
            std::find(lifted.literals.begin(), lifted.literals.end(), neg(inst.hypotheses[i])) != lifted.literals.end();
        REQUIRE(has_prime == has_neg);
      }
    }
  }
}

TEST_CASE("constant elimination") {
  const Relation nae3 = nae_relation({false, false, false});
  SUBCASE("one true constant") {
    Formula kb(4);
    kb.add(make_ref(nae3), {1, 2, 3});
    kb.add(rel::top(), {3});
    const auto in = AbductionInstance::make(kb, {1}, {2});
    const auto r = eliminate_constants(in);
    CHECK(r.report.added_vars == 2);
    CHECK(r.output.num_vars() == 6);
    for (const auto& c : r.output.kb.constraints()) CHECK(c.relation->arity() > 1);
    CHECK(oracle::abd(in) == oracle::abd(r.output));
    CHECK(oracle::pabd(in) == oracle::pabd(r.output));
  }
  SUBCASE("no constants") {
    Formula kb(3);
    kb.add(make_ref(nae3), {1, 2, 3});
    const auto in = AbductionInstance::make(kb, {1, 2}, {3});
    const ConstraintLanguage gamma({make_ref(nae3)});
    const auto r = eliminate_constants(in, gamma);
    CHECK(r.output.kb.size() == 2);
    CHECK(oracle::abd(in) == oracle::abd(r.output));
  }
  SUBCASE("no qualifying relation") {
    Formula kb(2);
    kb.add(make_ref(parity_relation(2, false)), {1, 2});
    kb.add(rel::bottom(), {1});
    CHECK_THROWS_AS(eliminate_constants(AbductionInstance::make(kb, {1}, {2})), PreconditionError);
  }
}

TEST_CASE("constant elimination preserves answers") {
  std::mt19937_64 rng(11);
  const std::vector<RelationRef> pool = {make_ref(nae_relation({false, false, false})),
                                         make_ref(nae_relation({false, true, false})), rel::neq(), rel::bottom(),
                                         rel::top()};
  int applied = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(2 + rng() % 7, 1 + rng() % 6, pool, rng);
    bool qualifying = false;
    for (const auto& c : inst.kb.constraints()) {
      const Relation& r = *c.relation;
      qualifying = qualifying || (r.arity() > 1 && !r.contains(0) && !r.contains(Relation::all_ones(r.arity())));
    }
    if (!qualifying) {
      CHECK_THROWS_AS(eliminate_constants(inst), PreconditionError);
      continue;
    }
    const auto r = eliminate_constants(inst);
    REQUIRE(r.report.added_vars == 2);
    REQUIRE(oracle::abd(inst) == oracle::abd(r.output));
    REQUIRE(oracle::pabd(inst) == oracle::pabd(r.output));
    ++applied;
  }
  CHECK(applied > 150);
}

TEST_CASE("CNF to NAE") {
  SUBCASE("clause shape") {
    const auto in = from_cnf(Cnf{2, {{pos(1), neg(2)}}}, {1}, {2});
    const auto r = kcnf_to_nae(in);
    CHECK(r.report.added_vars == 2);
    const auto& c = r.output.kb.constraints().front();
    REQUIRE(c.relation->arity() == 3);
    CHECK(c.scope.back() == 3);
    // With V0 = 0 the NAE constraint is the clause.
    for (Relation::Tuple t = 0; t < 4; ++t) {
      const bool clause = (t & 1u) || !(t & 2u);
      CHECK(c.relation->contains(t) == clause);
    }
  }
  SUBCASE("empty knowledge base") {
    const auto in = AbductionInstance::make(Formula(2), {1}, {2});
    const auto r = kcnf_to_nae(in);
    CHECK(r.output.kb.size() == 1);
    CHECK(oracle::abd(in) == oracle::abd(r.output));
  }
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const Var n = 2 + rng() % 7;
    std::vector<Var> h, m;
    random_roles(n, rng, h, m);
    const auto in = from_cnf(random_cnf_small(n, 1 + rng() % 8, 2, rng), h, m);
    const auto r = kcnf_to_nae(in);
    REQUIRE(r.report.added_vars == 2);
    REQUIRE(oracle::abd(in) == oracle::abd(r.output));
    REQUIRE(oracle::pabd(in) == oracle::pabd(r.output));
  }
}

TEST_CASE("CNF-SAT lower-bound instances") {
  const auto unit = cnfsat_to_abd_lb(Cnf{1, {{pos(1)}}});
  CHECK(unit.output.num_vars() == 3);
  CHECK(oracle::abd(unit.output));
  CHECK(oracle::is_explanation(unit.output, {pos(1)}));
  CHECK_FALSE(oracle::abd(cnfsat_to_abd_lb(Cnf{1, {{pos(1)}, {neg(1)}}}).output));

  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const Var n = 1 + rng() % 4;
    const Cnf cnf = random_cnf_small(n, 1 + rng() % 8, 3, rng);
    const auto r = cnfsat_to_abd_lb(cnf);
    REQUIRE(r.output.num_vars() == 3 * n);
    REQUIRE(r.output.hypotheses.size() == 2 * r.output.manifestations.size());
    REQUIRE(negimp_width(r.output.kb));
    const bool sat = brute_sat(cnf);
    REQUIRE(oracle::abd(r.output) == sat);
    REQUIRE(oracle::pabd(r.output) == sat);
  }
}

TEST_CASE("2-CNF abduction to CNF-SAT") {
  // (a ∨ m), (b ∨ m) merge into (a ∨ b).
  const auto in = from_cnf(Cnf{3, {{pos(1), pos(3)}, {pos(2), pos(3)}}}, {1, 2}, {3});
  const auto r = abd2cnf_to_cnfsat(in);
  const Clause merged{pos(1), pos(2)};
  CHECK(std::find(r.output.clauses.begin(), r.output.clauses.end(), merged) != r.output.clauses.end());
  CHECK(brute_sat(r.output) == oracle::abd(in));

  const auto absent = AbductionInstance::make(to_formula(Cnf{3, {{pos(1), pos(2)}}}), {1}, {3});
  const auto u = abd2cnf_to_cnfsat(absent);
  CHECK(std::find(u.output.clauses.begin(), u.output.clauses.end(), Clause{}) != u.output.clauses.end());
  CHECK_FALSE(brute_sat(u.output));
  CHECK_FALSE(oracle::abd(absent));
}
