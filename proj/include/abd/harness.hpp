#pragma once

// Instance files, result records, generators, verification sweeps and the
// exponent-fitting benchmark runner behind the `abductor` CLI.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "abd/core.hpp"
#include "abd/reductions.hpp"
#include "abd/solvers.hpp"

namespace abd {

// ----------------------------------------------------------------------------
// Instance files (format "abd 1", see docs/format.md)

class ParseError : public StructuralError {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

AbductionInstance parse_instance(std::istream& in, const std::string& source = "<input>");
AbductionInstance parse_instance_string(const std::string& text);
AbductionInstance read_instance(const std::string& path);

// Relations are named by their label when it is a unique identifier,
// otherwise R1, R2, ... in order of first use.
void write_instance(std::ostream& out, const AbductionInstance& inst);
std::string format_instance(const AbductionInstance& inst);
void save_instance(const std::string& path, const AbductionInstance& inst);

std::string format_dimacs(const Cnf& cnf);

// ----------------------------------------------------------------------------
// Result records (schema "abductor.result/1")

inline constexpr const char* kResultSchema = "abductor.result/1";
inline constexpr const char* kBenchSchema = "abductor.bench/1";

nlohmann::json to_json(const EnumStats& stats, double wall_ms);
nlohmann::json to_json(const ReductionReport& report);
nlohmann::json to_json(const Explanation& e);
nlohmann::json to_json(const ExplanationSet& set);
nlohmann::json result_record(const AbdResult& result, AbdMode mode, double wall_ms,
                             const std::optional<ReductionReport>& reduction = std::nullopt);
nlohmann::json error_record(const std::string& message);

// ----------------------------------------------------------------------------
// Generators

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// ABD_SEED if set and numeric, otherwise kDefaultSeed.
std::uint64_t default_seed();

struct GenParams {
  std::string family;
  unsigned n = 10;             // variables (pairs for xsat-chain, vertices for clique)
  unsigned constraints = 0;    // 0 = family default
  unsigned k = 3;              // clause width / arity cap
  unsigned colors = 3;         // clique
  double edge_prob = 0.6;      // clique
  unsigned exists = 2;         // qbf4cnf
  unsigned forall = 2;         // qbf4cnf
  unsigned terms = 3;          // qbf4cnf
  std::uint64_t seed = kDefaultSeed;
};

struct Generated {
  AbductionInstance instance;
  std::optional<ReductionReport> report;
};

const std::vector<std::string>& generator_families();
Generated generate(const GenParams& params);

// Sources for the reduction-backed families.
Cnf random_cnf(Var n, std::size_t clauses, unsigned k, Rng& rng);
QbfInstance random_qbf(unsigned exists, unsigned forall, unsigned terms, Rng& rng);
ColoredGraph random_colored_graph(unsigned vertices, unsigned colors, double edge_prob, Rng& rng);

// Brute-force colourful clique test.
bool has_colorful_clique(const ColoredGraph& g);

// ----------------------------------------------------------------------------
// Dispatch

struct SolveOptions {
  std::string algorithm = "oracle";
  AbdMode mode = AbdMode::abd;
  std::string engine = "dpll";  // model stream for enum / pabd-enum: dpll | sparse
};

const std::vector<std::string>& algorithm_names();
// Throws PreconditionError when the algorithm does not apply to the mode and
// FragmentError when the knowledge base is outside its fragment.
AbdResult solve(const AbductionInstance& inst, const SolveOptions& options);

const std::vector<std::string>& reduction_names();

// ----------------------------------------------------------------------------
// Verification

struct VerifyOptions {
  std::string suite = "random";  // exhaustive | random
  std::vector<std::string> families;  // random suite; empty = all
  unsigned instances = 500;           // per family
  unsigned max_vars = 12;
  std::uint64_t seed = kDefaultSeed;
  bool inject_bug = false;            // flips the baseline answer on purpose
  std::string dump_path;              // minimised failing instance
  unsigned threads = 0;               // 0 = OpenMP default
};

struct VerifyFailure {
  std::string check;
  std::string family;
  std::uint64_t id = 0;
  std::string detail;
  AbductionInstance instance;
};

struct VerifyReport {
  std::uint64_t instances = 0;
  std::uint64_t checks = 0;
  std::uint64_t contract_checks = 0;
  std::uint64_t audit_checks = 0;
  std::vector<VerifyFailure> failures;
  // Checks whose disagreement is expected and logged only.
  std::uint64_t informational_checks = 0;
  std::vector<std::string> informational;
  double wall_ms = 0;

  bool passed() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

const std::vector<std::string>& verify_families();
// Throws PreconditionError on an empty suite.
VerifyReport run_verify(const VerifyOptions& options);

// Per-instance checks, exposed for tests: appends failures to the report.
void verify_instance(const AbductionInstance& inst, const std::string& family, std::uint64_t id,
                     bool inject_bug, VerifyReport& report);

// Shrinks a failing instance by dropping constraints, hypotheses and
// manifestations while `fails` keeps returning true.
AbductionInstance minimize_instance(AbductionInstance inst,
                                    const std::function<bool(const AbductionInstance&)>& fails);

// The fixed relation pool and the instances of the exhaustive suite.
std::vector<RelationRef> exhaustive_pool();
std::vector<AbductionInstance> exhaustive_suite(unsigned max_vars = 8);

// ----------------------------------------------------------------------------
// Benchmarks

struct BaseFit {
  double base = 0;      // 2^slope
  double slope = 0;     // log2 nodes per variable
  double intercept = 0;
  double residual = 0;  // RMS of log2 residuals
  std::size_t points = 0;
};

// Least squares of log2(y) on x. Needs >= 2 positive points.
BaseFit fit_base(const std::vector<double>& xs, const std::vector<double>& ys);

struct BenchOptions {
  GenParams params;           // family and shape; n is overridden by the grid
  std::string algorithm = "sparse";  // sparse | dpll-enum | simplesat | any solve algorithm
  std::string metric = "branch_nodes";  // branch_nodes | leaves | models_emitted
  std::vector<unsigned> grid;
  unsigned seeds = 5;
  unsigned threads = 0;
};

struct BenchPoint {
  unsigned n = 0;
  double branch_nodes = 0;  // medians over seeds
  double leaves = 0;
  double models = 0;
  double wall_ms = 0;
};

struct BenchSweep {
  std::string family;
  std::string algorithm;
  std::string metric;
  std::vector<BenchPoint> points;
  BaseFit fit;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

const std::vector<std::string>& bench_algorithms();
// Throws PreconditionError with fewer than 5 grid points or 5 seeds.
BenchSweep run_bench(const BenchOptions& options);

}  // namespace abd
