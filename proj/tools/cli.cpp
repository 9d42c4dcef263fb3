#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "gbp/bench.hpp"
#include "gbp/errors.hpp"
#include "gbp/generators.hpp"
#include "gbp/io.hpp"
#include "gbp/solvers.hpp"

namespace gbp::cli {

namespace {

// Failure while reading or writing a file named on the command line.
struct FileFailure {
  std::string message;
};

template <class F> auto load(F &&f) {
  try {
    return f();
  } catch (const Error &e) {
    throw FileFailure{e.what()};
  }
}

struct GenerateArgs {
  std::string kind;
  int n = 20;
  int r = 5;
  int q = 5;
  int p = 0;
  Seed seed = 1;
  std::string out = "-";
  std::string in;
  int ell = 0;
  std::string deg_extension = "none";
};

struct SolveArgs {
  std::string solver = "auto";
  std::optional<long long> time_limit_ms;
  std::string in;
  std::string solution_out;
};

struct VerifyArgs {
  std::string in;
  std::string solution;
};

struct BenchArgs {
  std::string config;
  std::string out_csv;
  std::string plot_script;
};

void emit_instance(const std::string &path, const Instance &inst, const Coordinates *coords,
                   std::ostream &out) {
  if (path == "-")
    write_instance(out, inst, coords);
  else
    load([&] {
      write_instance_file(path, inst, coords);
      return 0;
    });
}

int run_generate(const GenerateArgs &a, std::ostream &out) {
  auto cvc = [&] {
    if (a.in.empty())
      throw InputError("--kind " + a.kind + " needs --in with a cubic graph");
    Graph g = load([&] { return read_instance_file(a.in).instance.graph; });
    return CvcInstance{std::move(g), a.p};
  };

  if (a.kind == "rng" || a.kind == "face" || a.kind == "cycle" || a.kind == "walk") {
    PlaneGraph pg = random_plane_graph(a.n, a.seed);
    Instance inst = a.kind == "rng"     ? make_instance(pg.graph, pg.costs, {})
                    : a.kind == "face"  ? gen_face_instance(pg, a.r, a.seed)
                    : a.kind == "cycle" ? gen_cycle_instance(pg.graph, pg.costs, a.r, a.q, a.seed)
                                        : gen_walk_instance(pg.graph, pg.costs, a.r, a.q, a.seed);
    emit_instance(a.out, inst, &pg.coords, out);
  } else if (a.kind == "crown") {
    emit_instance(a.out, crown_instance(a.p, a.q), nullptr, out);
  } else if (a.kind == "cvc-c3") {
    emit_instance(a.out, construct_c3(cvc(), a.ell), nullptr, out);
  } else if (a.kind == "cvc-planar") {
    emit_instance(a.out, construct_planar(cvc(), a.ell), nullptr, out);
  } else if (a.kind == "cvc-deg") {
    static const std::map<std::string, DegExtension> modes{
        {"none", DegExtension::None},
        {"subdivide", DegExtension::Subdivide},
        {"crown", DegExtension::Crown}};
    emit_instance(a.out, construct_deg(cvc(), modes.at(a.deg_extension), a.ell), nullptr, out);
  } else {
    emit_instance(a.out, construct_bintree(cvc(), a.ell != 0), nullptr, out);
  }
  return ok;
}

int run_solve(const SolveArgs &a, std::ostream &out, std::ostream &err) {
  Instance inst = load([&] { return read_instance_file(a.in).instance; });
  SolverKind kind = *parse_solver_kind(a.solver);
  SolveOptions options;
  options.time_limit =
      a.time_limit_ms ? std::chrono::milliseconds(*a.time_limit_ms) : default_time_limit();
  if (kind == SolverKind::Auto)
    kind = choose_solver(inst);

  SolveResult res = solve_with(kind, inst, options);
  out << "solver " << to_string(kind) << '\n' << "status " << to_string(res.status) << '\n';
  switch (res.status) {
  case SolveStatus::InfeasibleInput:
    err << res.message << '\n';
    return negative;
  case SolveStatus::UnsupportedHabitats:
    err << "solver " << to_string(kind) << " does not apply: " << res.message << '\n';
    return usage;
  default:
    break;
  }
  if (!res.solution) {
    err << "time limit reached without a solution\n";
    return timeout;
  }
  out << "cost " << res.solution->total_cost << '\n';
  if (res.lower_bound && !res.optimal())
    out << "lower_bound " << *res.lower_bound << '\n';
  if (!a.solution_out.empty())
    load([&] {
      std::ofstream f(a.solution_out);
      if (!f)
        throw IoError("cannot write " + a.solution_out);
      write_solution(f, *res.solution);
      return 0;
    });
  if (!inst.budget)
    return ok;
  if (res.status == SolveStatus::Feasible && res.solution->total_cost > *inst.budget) {
    out << "decision unknown\n";
    return ok;
  }
  try {
    bool yes = decide(inst, res);
    out << "decision " << (yes ? "yes" : "no") << '\n';
    return yes ? ok : negative;
  } catch (const PreconditionError &) {
    out << "decision unknown\n";
    return timeout;
  }
}

int run_verify(const VerifyArgs &a, std::ostream &out) {
  Instance inst = load([&] { return read_instance_file(a.in).instance; });
  Solution sol = load([&] { return read_solution_file(a.solution, inst); });
  Verification v = verify_solution(inst, sol);
  out << "feasible " << (v.feasible ? "yes" : "no") << '\n' << "cost " << sol.total_cost << '\n';
  if (inst.budget)
    out << "within_budget " << (v.within_budget ? "yes" : "no") << '\n';
  return v.feasible && (!inst.budget || v.within_budget) ? ok : negative;
}

int run_bench(const BenchArgs &a, std::ostream &out) {
  BenchConfig cfg = load([&] { return read_bench_config(a.config); });
  std::vector<BenchmarkRecord> records;
  if (a.out_csv == "-") {
    records = run_benchmark(cfg, out);
  } else {
    std::ofstream csv(a.out_csv);
    if (!csv)
      throw FileFailure{"cannot write " + a.out_csv};
    records = run_benchmark(cfg, csv);
  }
  if (!a.plot_script.empty()) {
    std::ofstream script(a.plot_script);
    if (!script)
      throw FileFailure{"cannot write " + a.plot_script};
    write_plot_script(script, a.out_csv == "-" ? "bench.csv" : a.out_csv);
  }
  if (a.out_csv != "-")
    write_summary(out, records);
  return ok;
}

} // namespace

int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Green bridge placement: generate, solve, verify and benchmark instances", "gbp"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto *generate = app.add_subcommand("generate", "write a generated instance");
  generate->add_option("--kind", gen.kind, "instance family")
      ->required()
      ->check(CLI::IsMember({"rng", "face", "cycle", "walk", "cvc-c3", "cvc-planar", "cvc-deg",
                             "cvc-bintree", "crown"}));
  generate->add_option("--n", gen.n, "number of random points")->capture_default_str();
  generate->add_option("--r", gen.r, "number of habitats")->capture_default_str();
  generate->add_option("--q", gen.q, "habitat size parameter (crown: crown-path length)")
      ->capture_default_str();
  generate->add_option("--p", gen.p, "vertex cover bound (crown: base-path length)")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  generate->add_option("--out", gen.out, "output file, - for stdout")->capture_default_str();
  generate->add_option("--in", gen.in, "cubic graph (instance format) for cvc kinds");
  generate->add_option("--ell", gen.ell, "cycle length of the extended construction, 0 for none")
      ->capture_default_str();
  generate->add_option("--deg-extension", gen.deg_extension, "cvc-deg extension")
      ->check(CLI::IsMember({"none", "subdivide", "crown"}))
      ->capture_default_str();

  SolveArgs sol;
  auto *solve = app.add_subcommand("solve", "solve an instance and print its cost");
  solve->add_option("--solver", sol.solver, "algorithm")
      ->check(CLI::IsMember(
          {"mwm", "mwhm", "generic", "apx", "brute", "tree", "maxdeg2", "k4mwm", "auto"}))
      ->capture_default_str();
  solve->add_option("--time-limit-ms", sol.time_limit_ms, "search time limit")
      ->check(CLI::PositiveNumber);
  solve->add_option("--in", sol.in, "instance file")->required();
  solve->add_option("--solution-out", sol.solution_out, "write the chosen edges here");

  VerifyArgs ver;
  auto *verify = app.add_subcommand("verify", "check a solution against an instance");
  verify->add_option("--in", ver.in, "instance file")->required();
  verify->add_option("--solution", ver.solution, "solution file")->required();

  BenchArgs ben;
  auto *bench = app.add_subcommand("bench", "run a benchmark grid");
  bench->add_option("--config", ben.config, "benchmark configuration")->required();
  bench->add_option("--out-csv", ben.out_csv, "CSV output, - for stdout")->required();
  bench->add_option("--plot-script", ben.plot_script, "write a matplotlib script here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty())
    reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return usage;
  }

  try {
    if (generate->parsed())
      return run_generate(gen, out);
    if (solve->parsed())
      return run_solve(sol, out, err);
    if (verify->parsed())
      return run_verify(ver, out);
    return run_bench(ben, out);
  } catch (const FileFailure &e) {
    err << "error: " << e.message << '\n';
    return io;
  } catch (const GenerationError &e) {
    err << "error: " << e.what() << '\n';
    return negative;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
}

int cli_main(int argc, char **argv) {
  return cli_main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

} // namespace gbp::cli
