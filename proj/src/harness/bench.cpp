#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#ifdef ABD_HAVE_OPENMP
#include <omp.h>
#endif

#include "abd/harness.hpp"

namespace abd {

using nlohmann::json;

BaseFit fit_base(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw PreconditionError("fit_base: size mismatch");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ys[i] > 0) {
      x.push_back(xs[i]);
      y.push_back(std::log2(ys[i]));
    }
  }
  if (x.size() < 2) throw PreconditionError("fit_base needs at least two positive points");
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = k * sxx - sx * sx;
  if (denom == 0) throw PreconditionError("fit_base needs two distinct sizes");
  BaseFit fit;
  fit.slope = (k * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / k;
  fit.base = std::exp2(fit.slope);
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / k);
  fit.points = x.size();
  return fit;
}

const std::vector<std::string>& bench_algorithms() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out = {"sparse", "dpll-enum", "simplesat"};
    for (const auto& a : algorithm_names()) {
      if (a != "simplesat") out.push_back(a);
    }
    return out;
  }();
  return names;
}

namespace {

EnumStats drain(ModelStreamPtr stream) {
  while (stream->next()) {
  }
  return stream->stats();
}

// SimpleSAT search on the instance produced by the positive-clause pipeline.
EnumStats simplesat_stats(const AbductionInstance& inst) {
  const PreprocessResult pre = preprocess(inst);
  if (pre.verdict == PreprocessVerdict::trivially_no) return {};
  return solve_simple_sat(abd_to_simplesat(pre.instance).output).stats;
}

EnumStats run_one(const std::string& algorithm, const AbductionInstance& inst) {
  if (algorithm == "sparse") return drain(sparse_enumerate(inst.kb));
  if (algorithm == "dpll-enum") return drain(enumerate(inst.kb));
  if (algorithm == "simplesat") return simplesat_stats(inst);
  SolveOptions o;
  o.algorithm = algorithm;
  o.mode = algorithm == "pabd-rec" || algorithm == "pabd-enum" || algorithm == "one-valid" ? AbdMode::pabd
                                                                                            : AbdMode::abd;
  return solve(inst, o).stats;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

double metric_of(const BenchPoint& p, const std::string& metric) {
  if (metric == "branch_nodes") return p.branch_nodes;
  if (metric == "leaves") return p.leaves;
  return p.models;
}

}  // namespace

BenchSweep run_bench(const BenchOptions& o) {
  if (o.grid.size() < 5) throw PreconditionError("bench needs at least 5 grid points");
  if (o.seeds < 5) throw PreconditionError("bench needs at least 5 seeds per size");
  if (std::find(bench_algorithms().begin(), bench_algorithms().end(), o.algorithm) == bench_algorithms().end()) {
    throw PreconditionError("unknown bench algorithm '" + o.algorithm + "'");
  }
  if (o.metric != "branch_nodes" && o.metric != "leaves" && o.metric != "models_emitted") {
    throw PreconditionError("unknown metric '" + o.metric + "'");
  }
#ifdef ABD_HAVE_OPENMP
  if (o.threads) omp_set_num_threads(static_cast<int>(o.threads));
#endif
  const std::size_t jobs = o.grid.size() * o.seeds;
  std::vector<EnumStats> stats(jobs);
  std::vector<double> wall(jobs);
  std::vector<std::string> errors(jobs);
  // Results are keyed by job index, so the aggregate does not depend on the
  // schedule.
#ifdef ABD_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (std::size_t j = 0; j < jobs; ++j) {
    try {
      GenParams p = o.params;
      p.n = o.grid[j / o.seeds];
      p.seed = o.params.seed + 1000003ull * p.n + j % o.seeds;
      const AbductionInstance inst = generate(p).instance;
      const auto start = std::chrono::steady_clock::now();
      stats[j] = run_one(o.algorithm, inst);
      wall[j] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    } catch (const std::exception& e) {
      errors[j] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw PreconditionError("bench run failed: " + e);
  }

  BenchSweep sweep;
  sweep.family = o.params.family;
  sweep.algorithm = o.algorithm;
  sweep.metric = o.metric;
  std::vector<double> xs, ys;
  for (std::size_t g = 0; g < o.grid.size(); ++g) {
    std::vector<double> nodes, leaves, models, ms;
    for (unsigned s = 0; s < o.seeds; ++s) {
      const std::size_t j = g * o.seeds + s;
      nodes.push_back(static_cast<double>(stats[j].branch_nodes));
      leaves.push_back(static_cast<double>(stats[j].leaves));
      models.push_back(static_cast<double>(stats[j].models_emitted));
      ms.push_back(wall[j]);
    }
    BenchPoint pt{o.grid[g], median(nodes), median(leaves), median(models), median(ms)};
    sweep.points.push_back(pt);
    xs.push_back(pt.n);
    ys.push_back(metric_of(pt, o.metric));
  }
  sweep.fit = fit_base(xs, ys);
  return sweep;
}

json BenchSweep::to_json() const {
  json pts = json::array();
  for (const auto& p : points) {
    pts.push_back({{"n", p.n},
                   {"branch_nodes", p.branch_nodes},
                   {"leaves", p.leaves},
                   {"models_emitted", p.models},
                   {"wall_ms", p.wall_ms}});
  }
  return {{"schema", kBenchSchema},
          {"family", family},
          {"algorithm", algorithm},
          {"metric", metric},
          {"points", pts},
          {"fit",
           {{"base", fit.base},
            {"slope", fit.slope},
            {"intercept", fit.intercept},
            {"residual", fit.residual},
            {"points", fit.points}}}};
}

std::string BenchSweep::to_csv() const {
  std::ostringstream out;
  out << "family,algorithm,n,branch_nodes,leaves,models_emitted,wall_ms\n";
  for (const auto& p : points) {
    out << family << ',' << algorithm << ',' << p.n << ',' << p.branch_nodes << ',' << p.leaves << ',' << p.models
        << ',' << p.wall_ms << '\n';
  }
  return out.str();
}

}  // namespace abd
