#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <set>

#ifdef ABD_HAVE_OPENMP
#include <omp.h>
#endif

#include "abd/harness.hpp"

namespace abd {

using nlohmann::json;

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

class Checker {
 public:
  Checker(const AbductionInstance& inst, std::string family, std::uint64_t id, VerifyReport& report)
      : inst_(inst), family_(std::move(family)), id_(id), report_(report) {}

  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    ++report_.checks;
    if (!ok) report_.failures.push_back({name, family_, id_, detail, inst_});
  }

  void contract(const std::string& name, bool ok, const std::string& detail) {
    ++report_.contract_checks;
    check("contract:" + name, ok, detail);
  }

  void info(const std::string& name, bool ok, const std::string& detail) {
    ++report_.informational_checks;
    if (!ok) report_.informational.push_back(family_ + "#" + std::to_string(id_) + " " + name + ": " + detail);
  }

  // Runs body; an escaping exception is a failure of `name`.
  template <class F>
  void guarded(const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name, false, std::string("exception: ") + e.what());
    }
  }

  VerifyReport& report() { return report_; }

 private:
  const AbductionInstance& inst_;
  std::string family_;
  std::uint64_t id_;
  VerifyReport& report_;
};

std::string describe_result(const AbdResult& r) {
  return r.algorithm + " answered " + yes_no(r.answer) + (r.witness ? " with " + r.witness->to_string() : "");
}

void check_result(Checker& c, const AbductionInstance& inst, const std::string& name, const AbdResult& got,
                  bool expected, AbdMode mode) {
  c.check(name, got.answer == expected, describe_result(got) + ", oracle " + yes_no(expected));
  if (!got.answer) return;
  if (!got.witness) {
    c.check(name + ":witness", false, "yes without a witness");
    return;
  }
  bool positive = true;
  for (const Literal& l : got.witness->literals) positive = positive && l.positive;
  c.check(name + ":witness", oracle_is_explanation(inst, *got.witness) && (mode == AbdMode::abd || positive),
          "witness " + got.witness->to_string() + " is not a valid " + to_string(mode) + " explanation");
}

bool sparse_applicable(const Formula& kb) {
  for (const auto& c : kb.constraints()) {
    if (c.relation->arity() > 0 && !is_non_trivial(*c.relation)) return false;
  }
  return true;
}

std::string set_diff(const ExplanationSet& got, const ExplanationSet& want) {
  return "solver " + std::to_string(got.explanations.size()) + " explanations, oracle " +
         std::to_string(want.explanations.size());
}

bool brute_sat(const Cnf& cnf) {
  if (cnf.num_vars > 24) throw PreconditionError("brute-force SAT limited to 24 variables");
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.num_vars); ++bits) {
    bool all = true;
    for (const Clause& cl : cnf.clauses) {
      bool sat = false;
      for (const Literal& l : cl) sat = sat || (((bits >> (l.var - 1)) & 1u) != 0) == l.positive;
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

// The reduction answers on outputs too large for the oracle come from the
// baseline scan, which shares no code with the transformers.
bool reference_answer(const AbductionInstance& inst, AbdMode mode) {
  if (inst.num_vars() <= 16 && inst.hypotheses.size() <= 16) {
    return (mode == AbdMode::abd ? oracle_abd(inst) : oracle_pabd(inst)).answer;
  }
  return (mode == AbdMode::abd ? baseline_abd(inst) : baseline_pabd(inst)).answer;
}

void check_reductions(Checker& c, const AbductionInstance& inst, bool abd, bool pabd) {
  const std::size_t n = inst.num_vars();

  if (negimp_width(inst.kb)) {
    c.guarded("negimp-to-pos", [&] {
      const auto r = negimp_to_pos(inst);
      const bool got = reference_answer(r.output, AbdMode::abd);
      c.check("negimp-to-pos:abd", got == abd, "output " + yes_no(got) + ", input ABD " + yes_no(abd));
      c.check("negimp-to-pos:pabd", got == pabd, "output " + yes_no(got) + ", input P-ABD " + yes_no(pabd));
      c.contract("negimp-to-pos", r.report.added_vars <= 2 && r.report.output_vars <= n + 2,
                 "added " + std::to_string(r.report.added_vars) + " variables");
    });
  }

  if (kcnf_pos_width(inst.kb)) {
    c.guarded("abd-to-simplesat", [&] {
      const PreprocessResult pre = preprocess(inst);
      if (pre.verdict == PreprocessVerdict::trivially_no) return;
      const auto r = abd_to_simplesat(pre.instance);
      const bool got = solve_simple_sat(r.output).model.has_value();
      c.check("abd-to-simplesat", got == abd, "SimpleSAT " + yes_no(got) + ", ABD " + yes_no(abd));
      const auto& h = pre.instance.hypotheses;
      bool inside = true;
      auto in_h = [&](Var v) { return std::binary_search(h.begin(), h.end(), v); };
      for (const auto& cl : r.output.positive_clauses) inside = inside && std::all_of(cl.begin(), cl.end(), in_h);
      for (const auto& dnf : r.output.negative_dnfs) {
        for (const auto& t : dnf) inside = inside && std::all_of(t.begin(), t.end(), in_h);
      }
      c.contract("abd-to-simplesat", inside && r.report.output_vars <= h.size(),
                 "SimpleSAT variables escape H");
    });
  }

  if (inst.num_vars() + inst.hypotheses.size() <= 24) {
    c.guarded("abd-to-pabd", [&] {
      const auto r = abd_to_pabd_4cnf(inst);
      const bool got = reference_answer(r.output, AbdMode::pabd);
      c.check("abd-to-pabd", got == abd, "output P-ABD " + yes_no(got) + ", input ABD " + yes_no(abd));
      c.contract("abd-to-pabd", r.report.added_vars == inst.hypotheses.size() &&
                                    r.report.output_vars == n + inst.hypotheses.size(),
                 "added " + std::to_string(r.report.added_vars) + " variables for " +
                     std::to_string(inst.hypotheses.size()) + " hypotheses");
      if (got && r.output.num_vars() <= 16) {
        const AbdResult w = oracle_pabd(r.output);
        const Explanation lifted = lift_pabd_witness(inst, *w.witness);
        c.check("abd-to-pabd:lift", oracle_is_explanation(inst, lifted),
                "lifted witness " + lifted.to_string() + " does not explain the input");
      }
    });
  }

  bool has_constants = false;
  for (const auto& con : inst.kb.constraints()) {
    has_constants = has_constants || *con.relation == *rel::bottom() || *con.relation == *rel::top();
  }
  if (has_constants) {
    std::optional<Reduced<AbductionInstance>> r;
    try {
      r = eliminate_constants(inst);
    } catch (const PreconditionError&) {
      // Not complement-invariant: the construction does not apply.
    }
    if (r) {
      c.guarded("eliminate-constants", [&] {
        const bool got_abd = reference_answer(r->output, AbdMode::abd);
        const bool got_pabd = reference_answer(r->output, AbdMode::pabd);
        c.check("eliminate-constants:abd", got_abd == abd, "output " + yes_no(got_abd) + ", input " + yes_no(abd));
        c.check("eliminate-constants:pabd", got_pabd == pabd,
                "output " + yes_no(got_pabd) + ", input " + yes_no(pabd));
        c.contract("eliminate-constants", r->report.added_vars == 2 && r->report.output_vars == n + 2,
                   "added " + std::to_string(r->report.added_vars) + " variables");
      });
    }
  }

  if (as_cnf(inst.kb)) {
    c.guarded("kcnf-to-nae", [&] {
      const auto r = kcnf_to_nae(inst);
      const bool got_abd = reference_answer(r.output, AbdMode::abd);
      const bool got_pabd = reference_answer(r.output, AbdMode::pabd);
      c.check("kcnf-to-nae:abd", got_abd == abd, "output " + yes_no(got_abd) + ", input " + yes_no(abd));
      c.check("kcnf-to-nae:pabd", got_pabd == pabd, "output " + yes_no(got_pabd) + ", input " + yes_no(pabd));
      c.contract("kcnf-to-nae", r.report.added_vars == 2 && r.report.output_vars == n + 2,
                 "added " + std::to_string(r.report.added_vars) + " variables");
    });
  }

  if (as_cnf(inst.kb, 2)) {
    c.guarded("abd2cnf-to-cnfsat", [&] {
      const auto r = abd2cnf_to_cnfsat(inst);
      const bool got = brute_sat(r.output);
      c.info("abd2cnf-to-cnfsat", got == abd, "CNF-SAT " + yes_no(got) + ", ABD " + yes_no(abd));
      c.contract("abd2cnf-to-cnfsat", r.output.clauses.size() <= n * n,
                 std::to_string(r.output.clauses.size()) + " clauses for n = " + std::to_string(n));
    });
  }
}

}  // namespace

void verify_instance(const AbductionInstance& inst, const std::string& family, std::uint64_t id, bool inject_bug,
                     VerifyReport& report) {
  Checker c(inst, family, id, report);
  ++report.instances;
  bool abd = false;
  bool pabd = false;
  ExplanationSet full, maxpos;
  try {
    abd = oracle_abd(inst).answer;
    pabd = oracle_pabd(inst).answer;
    full = oracle_full_explanations(inst);
    maxpos = oracle_maximal_positive(inst);
  } catch (const std::exception& e) {
    c.check("oracle", false, std::string("exception: ") + e.what());
    return;
  }

  // ABD solvers.
  c.guarded("baseline-abd", [&] {
    AbdResult r = baseline_abd(inst);
    if (inject_bug) r.answer = !r.answer;
    check_result(c, inst, "baseline-abd", r, abd, AbdMode::abd);
  });
  const bool sparse_ok = sparse_applicable(inst.kb);
  for (const char* engine : {"dpll", "sparse"}) {
    if (std::string(engine) == "sparse" && !sparse_ok) continue;
    const std::string name = std::string("enum-abd/") + engine;
    c.guarded(name, [&] {
      const StreamFactory factory = std::string(engine) == "dpll"
                                        ? StreamFactory([](const Formula& f) { return enumerate(f); })
                                        : StreamFactory([](const Formula& f) { return sparse_enumerate(f); });
      const EnumerationResult r = enum_abd(inst, factory);
      check_result(c, inst, name, r.result, abd, AbdMode::abd);
      c.check(name + ":set", r.set.explanations == full.explanations, set_diff(r.set, full));
    });
  }
  if (kcnf_pos_width(inst.kb)) {
    c.guarded("simplesat", [&] { check_result(c, inst, "simplesat", abd_kcnf_pos(inst), abd, AbdMode::abd); });
  }

  // P-ABD solvers.
  c.guarded("baseline-pabd", [&] { check_result(c, inst, "baseline-pabd", baseline_pabd(inst), pabd, AbdMode::pabd); });
  c.guarded("pabd-rec", [&] {
    RecursionAudit audit;
    const AbdResult r = pabd_recursive(inst, {}, {}, &audit);
    check_result(c, inst, "pabd-rec", r, pabd, AbdMode::pabd);
    if (inst.hypotheses.size() <= 12) {
      ++report.audit_checks;
      c.check("pabd-rec:audit", audit.duplicate_visits == 0 && audit.max_depth <= audit.hypotheses + 1,
              std::to_string(audit.duplicate_visits) + " duplicate visits, depth " + std::to_string(audit.max_depth) +
                  " for |H| = " + std::to_string(audit.hypotheses));
    }
  });
  for (const char* engine : {"dpll", "sparse"}) {
    if (std::string(engine) == "sparse" && !sparse_ok) continue;
    const std::string name = std::string("pabd-enum/") + engine;
    c.guarded(name, [&] {
      const StreamFactory factory = std::string(engine) == "dpll"
                                        ? StreamFactory([](const Formula& f) { return enumerate(f); })
                                        : StreamFactory([](const Formula& f) { return sparse_enumerate(f); });
      const EnumerationResult r = pabd_enum(inst, factory);
      check_result(c, inst, name, r.result, pabd, AbdMode::pabd);
      c.check(name + ":set", r.set.explanations == maxpos.explanations, set_diff(r.set, maxpos));
    });
  }
  if (is_one_valid(ConstraintLanguage::of(inst.kb))) {
    c.guarded("one-valid", [&] { check_result(c, inst, "one-valid", pabd_one_valid(inst), pabd, AbdMode::pabd); });
  }

  check_reductions(c, inst, abd, pabd);
}

AbductionInstance minimize_instance(AbductionInstance inst,
                                    const std::function<bool(const AbductionInstance&)>& fails) {
  if (!fails(inst)) return inst;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < inst.kb.size(); ++i) {
      Formula kb(inst.num_vars());
      for (std::size_t j = 0; j < inst.kb.size(); ++j) {
        if (j != i) kb.add(inst.kb.constraints()[j]);
      }
      auto cand = AbductionInstance::make(std::move(kb), inst.hypotheses, inst.manifestations);
      if (fails(cand)) {
        inst = std::move(cand);
        changed = true;
        --i;
      }
    }
    for (int which = 0; which < 2; ++which) {
      for (std::size_t i = 0;; ++i) {
        const auto& list = which == 0 ? inst.hypotheses : inst.manifestations;
        if (i >= list.size()) break;
        auto h = inst.hypotheses;
        auto m = inst.manifestations;
        auto& edit = which == 0 ? h : m;
        edit.erase(edit.begin() + static_cast<std::ptrdiff_t>(i));
        auto cand = AbductionInstance::make(inst.kb, std::move(h), std::move(m));
        if (fails(cand)) {
          inst = std::move(cand);
          changed = true;
          --i;
        }
      }
    }
  }
  return inst;
}

// ----------------------------------------------------------------------------
// Suites

namespace {

struct FamilySpec {
  std::string name;
  std::string generator;
  unsigned k;
};

const std::vector<FamilySpec>& random_families() {
  static const std::vector<FamilySpec> specs = {
      {"xsat", "xsat", 3},           {"equations", "equations", 3}, {"aff", "aff", 3},
      {"2cnf-pos", "kcnf-pos", 2},   {"3cnf-pos", "kcnf-pos", 3},   {"2cnf-neg-imp", "kcnf-neg-imp", 2},
      {"nae3", "nae", 3},            {"2cnf", "cnf", 2},            {"3cnf", "cnf", 3},
      {"clique", "clique", 0},       {"qbf4cnf", "qbf4cnf", 0},     {"cnfsat-lb", "cnfsat-lb", 3}};
  return specs;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

// Source-level checks for the reduction-backed families, then the usual
// solver sweep on the produced instance.
void verify_source_family(const std::string& family, std::uint64_t seed, unsigned max_vars, std::uint64_t id,
                          bool inject_bug, VerifyReport& report) {
  Rng rng(seed);
  AbductionInstance out;
  if (family == "clique") {
    const unsigned colors = std::uniform_int_distribution<unsigned>(1, 3)(rng);
    const unsigned vmax = std::max(colors, std::min(9u, max_vars - colors));
    const unsigned vertices = std::uniform_int_distribution<unsigned>(colors, vmax)(rng);
    const double p = std::uniform_real_distribution<double>(0.3, 0.9)(rng);
    const ColoredGraph g = random_colored_graph(vertices, colors, p, rng);
    const auto r = clique_to_abd(g);
    out = r.output;
    Checker c(out, family, id, report);
    c.guarded("source:clique", [&] {
      const bool want = has_colorful_clique(g);
      const bool got = oracle_abd(out).answer;
      c.check("source:clique", got == want, "ABD " + yes_no(got) + ", colourful clique " + yes_no(want));
      c.contract("clique-to-abd", r.report.output_vars == vertices + colors,
                 std::to_string(r.report.output_vars) + " variables for |V| + k = " +
                     std::to_string(vertices + colors));
    });
  } else if (family == "qbf4cnf") {
    const unsigned total = std::uniform_int_distribution<unsigned>(1, 6)(rng);
    const unsigned exists = std::uniform_int_distribution<unsigned>(0, total)(rng);
    const unsigned terms = std::uniform_int_distribution<unsigned>(0, 4)(rng);
    const QbfInstance q = random_qbf(exists, total - exists, terms, rng);
    const auto r = qbf_to_abd4cnf(q);
    out = r.output;
    Checker c(out, family, id, report);
    c.guarded("source:qbf", [&] {
      const bool want = qbf_true(q);
      const bool got = oracle_abd(out).answer;
      c.check("source:qbf", got == want, "ABD " + yes_no(got) + ", QBF " + yes_no(want));
    });
  } else {
    const Var n = std::uniform_int_distribution<Var>(1, std::max(1u, max_vars / 3))(rng);
    const std::size_t clauses = std::uniform_int_distribution<std::size_t>(1, 2 * n + 1)(rng);
    const unsigned k = std::uniform_int_distribution<unsigned>(1, 3)(rng);
    const Cnf cnf = random_cnf(n, clauses, k, rng);
    const auto r = cnfsat_to_abd_lb(cnf);
    out = r.output;
    Checker c(out, family, id, report);
    c.guarded("source:cnfsat", [&] {
      const bool want = brute_sat(cnf);
      const bool got = oracle_abd(out).answer;
      c.check("source:cnfsat", got == want, "ABD " + yes_no(got) + ", SAT " + yes_no(want));
      c.contract("cnfsat-to-abd", out.num_vars() == 3 * n && out.hypotheses.size() == 2 * out.manifestations.size(),
                 std::to_string(out.num_vars()) + " variables, |H| = " + std::to_string(out.hypotheses.size()) +
                     ", |M| = " + std::to_string(out.manifestations.size()));
    });
  }
  verify_instance(out, family, id, inject_bug, report);
}

void merge(VerifyReport& into, VerifyReport&& from) {
  into.instances += from.instances;
  into.checks += from.checks;
  into.contract_checks += from.contract_checks;
  into.audit_checks += from.audit_checks;
  into.informational_checks += from.informational_checks;
  for (auto& f : from.failures) into.failures.push_back(std::move(f));
  for (auto& s : from.informational) into.informational.push_back(std::move(s));
}

}  // namespace

const std::vector<std::string>& verify_families() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& f : random_families()) out.push_back(f.name);
    return out;
  }();
  return names;
}

std::vector<RelationRef> exhaustive_pool() {
  return {rel::bottom(),
          rel::top(),
          rel::neq(),
          make_ref(parity_relation(2, false).with_name("EQ")),
          make_ref(imp_relation().with_name("IMP")),
          make_ref(clause_relation({true, true}).with_name("OR2")),
          make_ref(clause_relation({false, false}).with_name("NAND2")),
          make_ref(exactly_one_relation(3).with_name("ONE3")),
          make_ref(clause_relation({true, true, true}).with_name("OR3")),
          make_ref(nae_relation({false, false, false}).with_name("NAE3")),
          make_ref(parity_relation(3, true).with_name("ODD3"))};
}

namespace {

// Scopes with pairwise distinct variables, numbered in order of first use.
void canonical_scopes(const std::vector<unsigned>& arities, std::size_t at, std::vector<std::vector<Var>>& scopes,
                      Var used, unsigned max_vars, const std::function<void(Var)>& emit) {
  if (at == arities.size()) {
    emit(used);
    return;
  }
  std::vector<Var> scope;
  std::function<void(Var)> fill = [&](Var next_fresh) {
    if (scope.size() == arities[at]) {
      scopes.push_back(scope);
      canonical_scopes(arities, at + 1, scopes, next_fresh - 1, max_vars, emit);
      scopes.pop_back();
      return;
    }
    for (Var v = 1; v <= next_fresh && v <= max_vars; ++v) {
      if (std::find(scope.begin(), scope.end(), v) != scope.end()) continue;
      scope.push_back(v);
      fill(v == next_fresh ? next_fresh + 1 : next_fresh);
      scope.pop_back();
    }
  };
  fill(used + 1);
}

}  // namespace

std::vector<AbductionInstance> exhaustive_suite(unsigned max_vars) {
  const auto pool = exhaustive_pool();
  std::vector<AbductionInstance> out;
  std::set<std::string> seen;
  // Role splits per KB: every assignment of {none, H, M, both} while there
  // are at most 81 of them (n <= 3 plus the 4-role cap), otherwise a seeded
  // sample of 48 splits.
  Rng rng(kDefaultSeed);
  auto add_kb = [&](const std::vector<std::size_t>& rels, const std::vector<std::vector<Var>>& scopes, Var n) {
    Formula kb(n);
    for (std::size_t i = 0; i < rels.size(); ++i) kb.add(pool[rels[i]], scopes[i]);
    std::vector<std::vector<unsigned>> splits;
    std::uint64_t total = 1;
    for (Var v = 0; v < n; ++v) total *= 4;
    if (total <= 256) {
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<unsigned> s(n);
        std::uint64_t c = code;
        for (Var v = 0; v < n; ++v, c /= 4) s[v] = static_cast<unsigned>(c % 4);
        splits.push_back(std::move(s));
      }
    } else {
      for (int i = 0; i < 48; ++i) {
        std::vector<unsigned> s(n);
        for (auto& x : s) x = std::uniform_int_distribution<unsigned>(0, 3)(rng);
        splits.push_back(std::move(s));
      }
    }
    for (const auto& s : splits) {
      std::vector<Var> h, m;
      for (Var v = 1; v <= n; ++v) {
        if (s[v - 1] & 1u) h.push_back(v);
        if (s[v - 1] & 2u) m.push_back(v);
      }
      auto inst = AbductionInstance::make(kb, std::move(h), std::move(m));
      if (seen.insert(format_instance(inst)).second) out.push_back(std::move(inst));
    }
  };

  const std::size_t p = pool.size();
  std::vector<std::vector<std::size_t>> combos;
  for (std::size_t a = 0; a < p; ++a) combos.push_back({a});
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a; b < p; ++b) combos.push_back({a, b});
  }
  // Three constraints only over the binary and unary part of the pool.
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a; b < p; ++b) {
      for (std::size_t c = b; c < p; ++c) {
        if (pool[a]->arity() <= 2 && pool[b]->arity() <= 2 && pool[c]->arity() <= 2) combos.push_back({a, b, c});
      }
    }
  }
  for (const auto& rels : combos) {
    std::vector<unsigned> arities;
    for (std::size_t r : rels) arities.push_back(pool[r]->arity());
    std::vector<std::vector<Var>> scopes;
    canonical_scopes(arities, 0, scopes, 0, max_vars, [&](Var n) { add_kb(rels, scopes, n); });
  }
  return out;
}

json VerifyReport::to_json() const {
  json fails = json::array();
  for (const auto& f : failures) {
    fails.push_back({{"check", f.check}, {"family", f.family}, {"id", f.id}, {"detail", f.detail}});
  }
  return {{"instances", instances},
          {"checks", checks},
          {"contract_checks", contract_checks},
          {"audit_checks", audit_checks},
          {"informational_checks", informational_checks},
          {"informational_discrepancies", informational.size()},
          {"failures", fails},
          {"passed", passed()},
          {"wall_ms", wall_ms}};
}

VerifyReport run_verify(const VerifyOptions& o) {
  const auto start = std::chrono::steady_clock::now();
#ifdef ABD_HAVE_OPENMP
  if (o.threads) omp_set_num_threads(static_cast<int>(o.threads));
#endif
  struct Job {
    std::string family;
    std::uint64_t id;
    std::uint64_t seed;
    const AbductionInstance* fixed;
  };
  std::vector<Job> jobs;
  std::vector<AbductionInstance> exhaustive;
  if (o.suite == "exhaustive") {
    exhaustive = exhaustive_suite(std::min(o.max_vars, 8u));
    for (std::size_t i = 0; i < exhaustive.size(); ++i) jobs.push_back({"exhaustive", i, 0, &exhaustive[i]});
  } else if (o.suite == "random") {
    if (o.max_vars < 3) throw PreconditionError("random suite needs max_vars >= 3");
    std::vector<std::string> families = o.families.empty() ? verify_families() : o.families;
    for (std::size_t f = 0; f < families.size(); ++f) {
      if (std::find(verify_families().begin(), verify_families().end(), families[f]) == verify_families().end()) {
        throw PreconditionError("unknown verify family '" + families[f] + "'");
      }
      for (unsigned i = 0; i < o.instances; ++i) {
        jobs.push_back({families[f], i, mix(o.seed, std::hash<std::string>{}(families[f]), i), nullptr});
      }
    }
  } else {
    throw PreconditionError("unknown suite '" + o.suite + "' (exhaustive or random)");
  }
  if (jobs.empty()) throw PreconditionError("empty verification suite");

  VerifyReport total;
  const auto run_job = [&](const Job& job, VerifyReport& local) {
    if (job.fixed) {
      verify_instance(*job.fixed, job.family, job.id, o.inject_bug, local);
      return;
    }
    const auto spec = std::find_if(random_families().begin(), random_families().end(),
                                   [&](const FamilySpec& s) { return s.name == job.family; });
    if (spec->generator == "clique" || spec->generator == "qbf4cnf" || spec->generator == "cnfsat-lb") {
      verify_source_family(spec->generator, job.seed, o.max_vars, job.id, o.inject_bug, local);
      return;
    }
    Rng rng(job.seed);
    GenParams p;
    p.family = spec->generator;
    p.k = spec->k;
    p.n = std::uniform_int_distribution<unsigned>(3, o.max_vars)(rng);
    p.constraints = std::uniform_int_distribution<unsigned>(1, p.n)(rng);
    p.seed = rng();
    verify_instance(generate(p).instance, job.family, job.id, o.inject_bug, local);
  };

#ifdef ABD_HAVE_OPENMP
#pragma omp parallel
  {
    VerifyReport local;
#pragma omp for schedule(dynamic, 4)
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(jobs[i], local);
#pragma omp critical(abd_verify_merge)
    merge(total, std::move(local));
  }
#else
  for (const auto& job : jobs) run_job(job, total);
#endif

  std::sort(total.failures.begin(), total.failures.end(), [](const VerifyFailure& a, const VerifyFailure& b) {
    return std::tie(a.family, a.id, a.check) < std::tie(b.family, b.id, b.check);
  });
  std::sort(total.informational.begin(), total.informational.end());

  if (!total.failures.empty() && !o.dump_path.empty()) {
    const VerifyFailure& first = total.failures.front();
    const std::string check = first.check;
    const AbductionInstance small = minimize_instance(first.instance, [&](const AbductionInstance& cand) {
      VerifyReport probe;
      verify_instance(cand, first.family, first.id, o.inject_bug, probe);
      return std::any_of(probe.failures.begin(), probe.failures.end(),
                         [&](const VerifyFailure& f) { return f.check == check; });
    });
    std::ofstream out(o.dump_path);
    out << "# failing check: " << check << " (" << first.family << " #" << first.id << ")\n";
    out << "# " << first.detail << '\n';
    write_instance(out, small);
  }
  total.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return total;
}

}  // namespace abd
