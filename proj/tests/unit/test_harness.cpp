#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "abd/harness.hpp"

using namespace abd;
using nlohmann::json;

namespace {

const std::string kData = ABD_TEST_DATA;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ParseError parse_error(const std::string& text) {
  try {
    parse_instance_string(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError("", 0, 0, "");
}

std::vector<std::string> keys(const json& j) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
  std::sort(out.begin(), out.end());
  return out;
}

GenParams params(const std::string& family, unsigned n, std::uint64_t seed) {
  GenParams p;
  p.family = family;
  p.n = n;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("minimal instance file") {
  for (const char* header : {"", "abd 1\n"}) {
    const auto inst = parse_instance_string(std::string(header) +
                                            "vars 2\nrel NEQ 2 01;10\ncon NEQ 1 2\nhyp 1\nman 2\n");
    CHECK(inst.num_vars() == 2);
    REQUIRE(inst.kb.size() == 1);
    CHECK(*inst.kb.constraints()[0].relation == *rel::neq());
    CHECK(inst.hypotheses == std::vector<Var>{1});
    CHECK(inst.manifestations == std::vector<Var>{2});
  }
}

TEST_CASE("worked example file") {
  const auto inst = read_instance(kData + "/example1.abd");
  CHECK(inst == fixture::example1());
  SolveOptions o;
  o.algorithm = "pabd-enum";
  o.mode = AbdMode::pabd;
  const auto r = solve(inst, o);
  CHECK(r.answer);
  CHECK(oracle::is_explanation(inst, {{fixture::A, true}, {fixture::D, true}}));
}

TEST_CASE("parse errors carry line and column") {
  auto e = parse_error("vars 2\nrel NEQ 2 01;100\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 14);
  e = parse_error("vars 2\ncon NEQ 1 2\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 5);
  e = parse_error("vars 2\nrel NEQ 2 01;10\ncon NEQ 1 3\n");
  CHECK(e.line() == 3);
  CHECK(e.column() == 11);
  e = parse_error("vars 2\nrel NEQ 2 01;10\ncon NEQ 1\n");
  CHECK(e.line() == 3);
  e = parse_error("vars 2\nrel N 1 2\n");
  CHECK(e.line() == 2);
  e = parse_error("vars 2\nbogus 1\n");
  CHECK(e.column() == 1);
  e = parse_error("vars 2\nabd 1\n");
  CHECK(e.line() == 2);
  e = parse_error("hyp 1\n");
  CHECK(e.line() == 1);
  e = parse_error("# empty\n");
  CHECK(std::string(e.what()).find("vars") != std::string::npos);
}

TEST_CASE("comments, constants and the empty relation") {
  const auto inst = parse_instance_string(
      "abd 1\n# comment\nvars 3   # trailing\nrel T0 0 ()\nrel F 2\nrel B 1 0\ncon T0\ncon B 3\nhyp\nman 3\n");
  CHECK(inst.kb.size() == 2);
  CHECK(*inst.kb.constraints()[0].relation == *rel::true0());
  CHECK(parse_instance_string(format_instance(inst)) == inst);
}

TEST_CASE("round trip on every generator family") {
  for (const auto& family : generator_families()) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const unsigned n = family == "xsat-chain" ? 8 : family == "clique" ? 5 : 7;
      const auto g = generate(params(family, n, seed));
      const std::string text = format_instance(g.instance);
      REQUIRE(text.rfind("abd 1\n", 0) == 0);
      REQUIRE(parse_instance_string(text) == g.instance);
      REQUIRE(format_instance(parse_instance_string(text)) == text);
    }
  }
}

TEST_CASE("generators are seed deterministic") {
  for (const auto& family : generator_families()) {
    const unsigned n = family == "xsat-chain" ? 8 : 7;
    const auto a = format_instance(generate(params(family, n, 42)).instance);
    const auto b = format_instance(generate(params(family, n, 42)).instance);
    CHECK(a == b);
  }
  CHECK(format_instance(generate(params("xsat", 12, 1)).instance) !=
        format_instance(generate(params("xsat", 12, 2)).instance));
}

TEST_CASE("generator shapes") {
  const auto chain = generate(params("xsat-chain", 6, 1)).instance;
  CHECK(chain.num_vars() == 6);
  CHECK(oracle::models(chain.kb).size() == 8);

  GenParams c = params("clique", 6, 3);
  c.colors = 3;
  const auto g = generate(c);
  CHECK(g.instance.num_vars() == 6 + 3);
  REQUIRE(g.report);
  CHECK(g.report->name == "clique-to-abd");

  const auto lb = generate(params("cnfsat-lb", 4, 3));
  CHECK(lb.instance.num_vars() == 12);
  CHECK(lb.instance.hypotheses.size() == 8);

  CHECK_THROWS_AS(generate(params("xsat-chain", 5, 1)), PreconditionError);
  CHECK_THROWS_AS(generate(params("nope", 5, 1)), PreconditionError);
}

TEST_CASE("default seed honours ABD_SEED") {
  setenv("ABD_SEED", "77", 1);
  CHECK(default_seed() == 77);
  setenv("ABD_SEED", "x", 1);
  CHECK(default_seed() == kDefaultSeed);
  unsetenv("ABD_SEED");
  CHECK(default_seed() == kDefaultSeed);
}

TEST_CASE("result records share one schema") {
  const auto inst = fixture::example1();
  const std::vector<std::string> top = {"algorithm", "answer", "mode", "schema", "stats", "witness"};
  const std::vector<std::string> stats = {"branch_nodes", "leaves", "max_depth", "models_emitted", "wall_ms"};
  for (const auto& algo : algorithm_names()) {
    for (AbdMode mode : {AbdMode::abd, AbdMode::pabd}) {
      SolveOptions o;
      o.algorithm = algo;
      o.mode = mode;
      AbdResult r;
      try {
        r = solve(inst, o);
      } catch (const PreconditionError&) {
        continue;
      }
      const json j = result_record(r, mode, 1.5);
      CHECK(keys(j) == top);
      CHECK(keys(j["stats"]) == stats);
      CHECK(j["schema"] == kResultSchema);
      CHECK(j["answer"] == "yes");
      REQUIRE(j["witness"].is_object());
      CHECK(keys(j["witness"]) == std::vector<std::string>{"kind", "literals"});
    }
  }
  const json e = error_record("boom");
  CHECK(keys(e) == std::vector<std::string>{"error", "schema"});
  CHECK_FALSE(e.contains("answer"));
}

TEST_CASE("result record golden file") {
  SolveOptions o;
  o.algorithm = "pabd-rec";
  o.mode = AbdMode::pabd;
  const auto r = solve(fixture::example1(), o);
  json j = result_record(r, o.mode, 0.0);
  const json golden = json::parse(slurp(kData + "/example1.pabd-rec.json"));
  CHECK(j == golden);
}

TEST_CASE("base fit") {
  std::vector<double> xs, ys;
  for (int n = 10; n <= 24; n += 2) {
    xs.push_back(n);
    ys.push_back(3.0 * std::pow(1.5, n));
  }
  const BaseFit f = fit_base(xs, ys);
  CHECK(f.base == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(f.intercept == doctest::Approx(std::log2(3.0)).epsilon(1e-9));
  CHECK(f.residual < 1e-9);
  CHECK(f.points == xs.size());
  CHECK_THROWS_AS(fit_base({1}, {2}), PreconditionError);
  CHECK_THROWS_AS(fit_base({3, 3}, {1, 2}), PreconditionError);
}

TEST_CASE("bench sweep") {
  BenchOptions o;
  o.params = params("xsat-chain", 0, 1);
  o.grid = {4, 6, 8, 10, 12};
  o.algorithm = "sparse";
  const auto s = run_bench(o);
  REQUIRE(s.points.size() == 5);
  for (const auto& p : s.points) CHECK(p.models == std::pow(2.0, p.n / 2));
  CHECK(s.to_json()["schema"] == kBenchSchema);
  CHECK(s.to_csv().rfind("family,algorithm,n,", 0) == 0);

  o.grid = {4, 6, 8, 10};
  CHECK_THROWS_AS(run_bench(o), PreconditionError);
  o.grid = {4, 6, 8, 10, 12};
  o.seeds = 4;
  CHECK_THROWS_AS(run_bench(o), PreconditionError);
}

TEST_CASE("baseline node count doubles per hypothesis") {
  BenchOptions o;
  o.params = params("full-h", 0, 1);
  o.grid = {6, 7, 8, 9, 10};
  o.algorithm = "baseline";
  o.metric = "branch_nodes";
  const auto s = run_bench(o);
  CHECK(std::abs(s.fit.base - 2.0) <= 0.1);
}

TEST_CASE("verify passes and catches an injected bug") {
  VerifyOptions o;
  o.families = {"xsat", "2cnf-neg-imp", "nae3"};
  o.instances = 20;
  o.max_vars = 8;
  const auto ok = run_verify(o);
  CHECK(ok.passed());
  CHECK(ok.instances == 60);
  CHECK(ok.checks > 0);

  o.inject_bug = true;
  o.dump_path = "verify-injected.abd";
  const auto bad = run_verify(o);
  CHECK_FALSE(bad.passed());
  const auto dumped = read_instance(o.dump_path);
  std::remove(o.dump_path.c_str());
  CHECK(dumped.kb.size() <= 1);

  o.instances = 0;
  CHECK_THROWS_AS(run_verify(o), PreconditionError);
  o.instances = 5;
  o.families = {"nope"};
  CHECK_THROWS_AS(run_verify(o), PreconditionError);
}

TEST_CASE("minimizer keeps the failure") {
  const auto inst = fixture::example1();
  const auto small = minimize_instance(inst, [](const AbductionInstance& i) { return i.kb.size() >= 2; });
  CHECK(small.kb.size() == 2);
  CHECK(small.hypotheses.empty());
  CHECK(small.manifestations.empty());
}

TEST_CASE("exhaustive suite shape") {
  const auto pool = exhaustive_pool();
  CHECK(pool.size() == 11);
  for (const auto& r : pool) CHECK(r->arity() <= 3);
  const auto suite = exhaustive_suite(4);
  CHECK_FALSE(suite.empty());
  for (const auto& inst : suite) {
    REQUIRE(inst.num_vars() <= 4);
    REQUIRE(inst.kb.size() <= 3);
  }
}

TEST_CASE("dimacs output") {
  const Cnf cnf{3, {{{1, true}, {2, false}}, {{3, true}}}};
  CHECK(format_dimacs(cnf) == "p cnf 3 2\n1 -2 0\n3 0\n");
}
