#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "abd/harness.hpp"

using namespace abd;
using nlohmann::json;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

AbductionInstance load(const std::string& path) {
  if (path == "-") return parse_instance(std::cin, "<stdin>");
  return read_instance(path);
}

// "10..24", "10..24:2" or "10,12,16".
std::vector<unsigned> parse_grid(const std::string& text) {
  std::vector<unsigned> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto colon = text.find(':', dots);
    const unsigned lo = static_cast<unsigned>(std::stoul(text.substr(0, dots)));
    const unsigned hi = static_cast<unsigned>(std::stoul(text.substr(dots + 2, colon - dots - 2)));
    const unsigned step = colon == std::string::npos ? 1 : static_cast<unsigned>(std::stoul(text.substr(colon + 1)));
    if (step == 0 || hi < lo) throw PreconditionError("bad grid '" + text + "'");
    for (unsigned n = lo; n <= hi; n += step) out.push_back(n);
    return out;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(static_cast<unsigned>(std::stoul(item)));
  return out;
}

json simplesat_json(const SimpleSatInstance& s) {
  return {{"num_vars", s.num_vars}, {"p", s.p}, {"positive_clauses", s.positive_clauses},
          {"negative_dnfs", s.negative_dnfs}};
}

void add_gen_flags(CLI::App* app, GenParams& p) {
  app->add_option("--n", p.n, "Size: variables (vertices for clique)");
  app->add_option("--constraints", p.constraints, "Constraint count, 0 for the family default");
  app->add_option("--k", p.k, "Clause width or arity cap");
  app->add_option("--colors", p.colors, "Colours (clique)");
  app->add_option("--edge-prob", p.edge_prob, "Edge probability (clique)");
  app->add_option("--exists", p.exists, "Existential variables (qbf4cnf)");
  app->add_option("--forall", p.forall, "Universal variables (qbf4cnf)");
  app->add_option("--terms", p.terms, "DNF terms (qbf4cnf)");
  app->add_option("--seed", p.seed, "Generator seed (default ABD_SEED or built-in)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Propositional abduction workbench"};
  app.require_subcommand(1);

  // solve
  std::string solve_file;
  SolveOptions solve_opts;
  std::string solve_mode = "abd";
  auto* solve_cmd = app.add_subcommand("solve", "Decide ABD or P-ABD for an instance file");
  solve_cmd->add_option("file", solve_file, "Instance file, - for stdin")->required();
  solve_cmd->add_option("--algo", solve_opts.algorithm, "Algorithm")
      ->check(CLI::IsMember(algorithm_names()));
  solve_cmd->add_option("--mode", solve_mode, "abd or pabd")->check(CLI::IsMember({"abd", "pabd"}));
  solve_cmd->add_option("--engine", solve_opts.engine, "Model stream for enum algorithms")
      ->check(CLI::IsMember({"dpll", "sparse"}));

  // gen
  GenParams gen;
  gen.seed = default_seed();
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--family", gen.family, "Family")->required()->check(CLI::IsMember(generator_families()));
  add_gen_flags(gen_cmd, gen);
  gen_cmd->add_option("-o,--output", gen_out, "Output file (default stdout)");

  // reduce
  std::string reduce_file, reduce_name, reduce_out, reduce_report;
  auto* reduce_cmd = app.add_subcommand("reduce", "Apply an instance transformer");
  reduce_cmd->add_option("file", reduce_file, "Instance file, - for stdin")->required();
  reduce_cmd->add_option("--reduction", reduce_name, "Transformer")
      ->required()
      ->check(CLI::IsMember(reduction_names()));
  reduce_cmd->add_option("-o,--output", reduce_out, "Output file (default stdout)");
  reduce_cmd->add_option("--report", reduce_report, "Write the reduction report JSON here (default stderr)");

  // verify
  VerifyOptions verify;
  verify.seed = default_seed();
  verify.dump_path = "verify-failure.abd";
  std::string verify_json;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check every solver and transformer against the oracles");
  verify_cmd->add_option("--suite", verify.suite, "exhaustive or random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  verify_cmd->add_option("--family", verify.families, "Random-suite families (repeatable)");
  verify_cmd->add_option("--instances", verify.instances, "Instances per family");
  verify_cmd->add_option("--max-vars", verify.max_vars, "Variable cap");
  verify_cmd->add_option("--seed", verify.seed, "Suite seed");
  verify_cmd->add_option("--threads", verify.threads, "Worker threads, 0 for the OpenMP default");
  verify_cmd->add_option("--dump", verify.dump_path, "Where to write the minimised failing instance");
  verify_cmd->add_option("--json", verify_json, "Write the report JSON here (default stdout)");
  verify_cmd->add_flag("--inject-bug", verify.inject_bug, "Flip the baseline answer to test the harness");

  // bench
  BenchOptions bench;
  bench.params.seed = default_seed();
  std::string bench_grid, bench_json, bench_csv;
  auto* bench_cmd = app.add_subcommand("bench", "Fit the exponential base of a solver on a family");
  bench_cmd->add_option("--family", bench.params.family, "Family")
      ->required()
      ->check(CLI::IsMember(generator_families()));
  bench_cmd->add_option("--grid", bench_grid, "Sizes: lo..hi[:step] or a comma list")->required();
  bench_cmd->add_option("--algo", bench.algorithm, "Algorithm")->check(CLI::IsMember(bench_algorithms()));
  bench_cmd->add_option("--metric", bench.metric, "branch_nodes, leaves or models_emitted")
      ->check(CLI::IsMember({"branch_nodes", "leaves", "models_emitted"}));
  bench_cmd->add_option("--seeds", bench.seeds, "Seeds per size (>= 5)");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads, 0 for the OpenMP default");
  bench_cmd->add_option("--json", bench_json, "Write the sweep JSON here (default stdout)");
  bench_cmd->add_option("--csv", bench_csv, "Write the per-size CSV here");
  add_gen_flags(bench_cmd, bench.params);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*solve_cmd) {
      solve_opts.mode = solve_mode == "abd" ? AbdMode::abd : AbdMode::pabd;
      const AbductionInstance inst = load(solve_file);
      const auto start = std::chrono::steady_clock::now();
      const AbdResult r = solve(inst, solve_opts);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::cout << result_record(r, solve_opts.mode, ms).dump(2) << '\n';
      return r.answer ? kExitYes : kExitNo;
    }
    if (*gen_cmd) {
      const Generated g = generate(gen);
      write_text(gen_out, format_instance(g.instance));
      if (g.report) std::cerr << to_json(*g.report).dump() << '\n';
      return 0;
    }
    if (*reduce_cmd) {
      const AbductionInstance inst = load(reduce_file);
      ReductionReport report;
      std::string text;
      if (reduce_name == "negimp-to-pos") {
        auto r = negimp_to_pos(inst);
        text = format_instance(r.output);
        report = r.report;
      } else if (reduce_name == "abd-to-simplesat") {
        const PreprocessResult pre = preprocess(inst);
        if (pre.verdict == PreprocessVerdict::trivially_no) {
          throw PreconditionError("instance is trivially negative after preprocessing");
        }
        auto r = abd_to_simplesat(pre.instance);
        text = simplesat_json(r.output).dump(2) + "\n";
        report = r.report;
      } else if (reduce_name == "abd-to-pabd") {
        auto r = abd_to_pabd_4cnf(inst);
        text = format_instance(r.output);
        report = r.report;
      } else if (reduce_name == "eliminate-constants") {
        auto r = eliminate_constants(inst);
        text = format_instance(r.output);
        report = r.report;
      } else if (reduce_name == "kcnf-to-nae") {
        auto r = kcnf_to_nae(inst);
        text = format_instance(r.output);
        report = r.report;
      } else {
        auto r = abd2cnf_to_cnfsat(inst);
        text = format_dimacs(r.output);
        report = r.report;
      }
      write_text(reduce_out, text);
      const std::string rep = to_json(report).dump(2) + "\n";
      if (reduce_report.empty()) std::cerr << rep;
      else write_text(reduce_report, rep);
      return 0;
    }
    if (*verify_cmd) {
      const VerifyReport report = run_verify(verify);
      write_text(verify_json, report.to_json().dump(2) + "\n");
      for (const auto& f : report.failures) {
        std::cerr << "FAIL " << f.check << " " << f.family << "#" << f.id << ": " << f.detail << '\n';
      }
      if (!report.passed()) std::cerr << "minimised failing instance written to " << verify.dump_path << '\n';
      return report.passed() ? 0 : 1;
    }
    if (*bench_cmd) {
      bench.grid = parse_grid(bench_grid);
      const BenchSweep sweep = run_bench(bench);
      write_text(bench_json, sweep.to_json().dump(2) + "\n");
      if (!bench_csv.empty()) write_text(bench_csv, sweep.to_csv());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cout << error_record(e.what()).dump(2) << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
