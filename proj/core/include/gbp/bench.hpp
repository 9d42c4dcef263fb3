#pragma once

#include <chrono>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gbp/generators.hpp"
#include "gbp/metrics.hpp"
#include "gbp/solvers.hpp"

namespace gbp {

/*
   key=value lines, '#' comments. Repeated keys accumulate:
     graph=rng:<points> | graph=<instance file with coordinates>
     type=face|cycle|walk
     r=<int>  q=<int>  seed=<int>
     solvers=<name>[,<name>...]
     time_limit_ms=<int>
     parallelism=<int>
*/
struct BenchConfig {
  std::vector<std::string> graphs;
  std::vector<std::string> types;
  std::vector<int> rs;
  std::vector<int> qs;
  std::vector<Seed> seeds;
  std::vector<SolverKind> solvers;
  std::optional<std::chrono::milliseconds> time_limit;
  int parallelism = 1;
};

/// Throws ParseError with the offending line.
BenchConfig parse_bench_config(std::istream &in);
BenchConfig read_bench_config(const std::string &path);

struct BenchmarkRecord {
  std::string instance_id;
  std::string graph;
  std::string habitat_type;
  int r = 0;
  std::optional<int> q;
  Seed seed = 0;
  std::string solver;
  std::string status;
  std::optional<Cost> cost;
  std::optional<Cost> lower_bound;
  double wall_ms = 0;
  double build_ms = 0;
  std::optional<Rational> lambda;
  std::optional<Rational> quality_ratio;
  std::optional<Rational> additive_ratio;
};

extern const char *const csv_header;

std::string csv_escape(const std::string &field);
std::string to_csv_row(const BenchmarkRecord &rec);

/// Runs every (instance, solver) cell and streams CSV rows to `csv` in grid
/// order, flushing after each instance.
std::vector<BenchmarkRecord> run_benchmark(const BenchConfig &config, std::ostream &csv);

struct RuntimeSummary {
  std::string solver;
  Summary ratio_to_best;
};

/// Per solver, wall time divided by the fastest optimal run on the same instance.
std::vector<RuntimeSummary> summarize_runtimes(const std::vector<BenchmarkRecord> &records);
void write_summary(std::ostream &out, const std::vector<BenchmarkRecord> &records);

/// A matplotlib script plotting the CSV at `csv_path`.
void write_plot_script(std::ostream &out, const std::string &csv_path);

/// Default per-solve limit: GBP_TIME_LIMIT_MS if set, otherwise 30 s.
std::chrono::milliseconds default_time_limit();

} // namespace gbp
