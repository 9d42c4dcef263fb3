#include "gbp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "gbp/errors.hpp"
#include "gbp/io.hpp"

namespace gbp {

const char *const csv_header = "instance_id,graph,habitat_type,r,q,seed,solver,status,cost,"
                               "lower_bound,wall_ms,build_ms,lambda,quality_ratio,additive_ratio";

std::chrono::milliseconds default_time_limit() {
  if (const char *env = std::getenv("GBP_TIME_LIMIT_MS")) {
    long long ms = 0;
    std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), ms);
    if (ec != std::errc() || ptr != text.data() + text.size() || ms <= 0)
      throw InputError(std::string("GBP_TIME_LIMIT_MS must be a positive integer, got '") + env +
                       "'");
    return std::chrono::milliseconds(ms);
  }
  return std::chrono::seconds(30);
}

namespace {

template <class T> T config_number(const std::string &text, int line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(line, "expected a number, got '" + text + "'");
  return value;
}

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Cell {
  std::string graph;
  std::string type;
  int r;
  std::optional<int> q;
  Seed seed;
  std::string id;
};

std::string graph_label(const std::string &spec) {
  if (spec.rfind("rng:", 0) == 0)
    return "rng" + spec.substr(4);
  return std::filesystem::path(spec).stem().string();
}

std::vector<Cell> expand(const BenchConfig &cfg) {
  std::vector<Cell> cells;
  for (const auto &graph : cfg.graphs)
    for (const auto &type : cfg.types)
      for (int r : cfg.rs) {
        std::vector<std::optional<int>> qs;
        if (type == "face")
          qs.push_back(std::nullopt);
        else
          qs.assign(cfg.qs.begin(), cfg.qs.end());
        for (auto q : qs)
          for (Seed seed : cfg.seeds) {
            std::string id = graph_label(graph) + "-" + type + "-r" + std::to_string(r);
            if (q)
              id += "-q" + std::to_string(*q);
            id += "-s" + std::to_string(seed);
            cells.push_back({graph, type, r, q, seed, std::move(id)});
          }
      }
  return cells;
}

PlaneGraph load_graph(const std::string &spec, Seed seed) {
  if (spec.rfind("rng:", 0) == 0) {
    int n = 0;
    auto text = spec.substr(4);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw InputError("bad graph spec '" + spec + "'");
    return random_plane_graph(n, seed);
  }
  auto file = read_instance_file(spec);
  PlaneGraph pg;
  pg.graph = std::move(file.instance.graph);
  pg.costs = std::move(file.instance.costs);
  if (file.coords)
    pg.coords = std::move(*file.coords);
  return pg;
}

double to_ms(std::chrono::nanoseconds ns) { return static_cast<double>(ns.count()) / 1e6; }

std::vector<BenchmarkRecord> run_cell(const Cell &cell, const BenchConfig &cfg) {
  std::vector<BenchmarkRecord> rows;
  auto base = [&](SolverKind kind) {
    BenchmarkRecord rec;
    rec.instance_id = cell.id;
    rec.graph = cell.graph;
    rec.habitat_type = cell.type;
    rec.r = cell.r;
    rec.q = cell.q;
    rec.seed = cell.seed;
    rec.solver = to_string(kind);
    return rec;
  };

  std::optional<Instance> inst;
  try {
    PlaneGraph pg = load_graph(cell.graph, cell.seed);
    if (cell.type == "face") {
      if (pg.coords.empty())
        throw GenerationError("face habitats need coordinates");
      inst = gen_face_instance(pg, cell.r, cell.seed);
    } else if (cell.type == "cycle") {
      inst = gen_cycle_instance(pg.graph, pg.costs, cell.r, *cell.q, cell.seed);
    } else {
      inst = gen_walk_instance(pg.graph, pg.costs, cell.r, *cell.q, cell.seed);
    }
  } catch (const Error &) {
    for (SolverKind kind : cfg.solvers) {
      rows.push_back(base(kind));
      rows.back().status = "generation_error";
    }
    return rows;
  }

  std::optional<Rational> lambda;
  try {
    lambda = intersection_rate(*inst);
  } catch (const UndefinedMetricError &) {
  }

  SolveOptions options;
  options.time_limit = cfg.time_limit ? *cfg.time_limit : default_time_limit();
  std::optional<Solution> reference;
  for (SolverKind kind : cfg.solvers) {
    BenchmarkRecord rec = base(kind);
    rec.lambda = lambda;
    try {
      SolveResult res = solve_with(kind, *inst, options);
      rec.status = to_string(res.status);
      rec.cost = res.cost();
      rec.lower_bound = res.lower_bound;
      rec.wall_ms = to_ms(res.wall_time);
      rec.build_ms = to_ms(res.build_time);
      if (res.optimal() && res.solution && !reference)
        reference = res.solution;
    } catch (const GuardError &) {
      rec.status = "guard_exceeded";
    } catch (const Error &) {
      rec.status = "error";
    }
    rows.push_back(std::move(rec));
  }
  if (reference && reference->total_cost > 0 && !inst->habitats.empty()) {
    for (auto &rec : rows) {
      if (!rec.cost)
        continue;
      Ratios ratios = compute_ratios(*rec.cost, reference->total_cost,
                                     static_cast<int>(inst->habitats.size()),
                                     reference->edges.size());
      rec.quality_ratio = ratios.quality;
      rec.additive_ratio = ratios.additive;
    }
  }
  return rows;
}

} // namespace

BenchConfig parse_bench_config(std::istream &in) {
  BenchConfig cfg;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    raw = trim(raw);
    if (raw.empty())
      continue;
    auto eq = raw.find('=');
    if (eq == std::string::npos)
      throw ParseError(line, "expected key=value");
    std::string key = trim(raw.substr(0, eq));
    std::string value = trim(raw.substr(eq + 1));
    if (value.empty())
      throw ParseError(line, "empty value for '" + key + "'");
    if (key == "graph") {
      cfg.graphs.push_back(value);
    } else if (key == "type") {
      if (value != "face" && value != "cycle" && value != "walk")
        throw ParseError(line, "unknown habitat type '" + value + "'");
      cfg.types.push_back(value);
    } else if (key == "r") {
      cfg.rs.push_back(config_number<int>(value, line));
    } else if (key == "q") {
      cfg.qs.push_back(config_number<int>(value, line));
    } else if (key == "seed") {
      cfg.seeds.push_back(config_number<Seed>(value, line));
    } else if (key == "solvers" || key == "solver") {
      std::stringstream ss(value);
      for (std::string name; std::getline(ss, name, ',');) {
        auto kind = parse_solver_kind(trim(name));
        if (!kind)
          throw ParseError(line, "unknown solver '" + trim(name) + "'");
        cfg.solvers.push_back(*kind);
      }
    } else if (key == "time_limit_ms") {
      cfg.time_limit = std::chrono::milliseconds(config_number<long long>(value, line));
    } else if (key == "parallelism") {
      cfg.parallelism = config_number<int>(value, line);
      if (cfg.parallelism < 1)
        throw ParseError(line, "parallelism must be positive");
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }
  auto require = [&](bool ok, const char *what) {
    if (!ok)
      throw ParseError(line + 1, std::string("config lists no ") + what);
  };
  require(!cfg.graphs.empty(), "graph");
  require(!cfg.types.empty(), "type");
  require(!cfg.rs.empty(), "r");
  require(!cfg.seeds.empty(), "seed");
  require(!cfg.solvers.empty(), "solvers");
  bool needs_q = std::any_of(cfg.types.begin(), cfg.types.end(),
                             [](const std::string &t) { return t != "face"; });
  require(!needs_q || !cfg.qs.empty(), "q (needed by cycle/walk)");
  return cfg;
}

BenchConfig read_bench_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open " + path);
  return parse_bench_config(in);
}

std::string csv_escape(const std::string &field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos)
    return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv_row(const BenchmarkRecord &rec) {
  auto opt = [](const auto &v) { return v ? std::to_string(*v) : std::string(); };
  auto ratio = [](const std::optional<Rational> &v) {
    return v ? format_fixed(v->value(), 6) : std::string();
  };
  std::vector<std::string> fields{rec.instance_id,
                                  rec.graph,
                                  rec.habitat_type,
                                  std::to_string(rec.r),
                                  opt(rec.q),
                                  std::to_string(rec.seed),
                                  rec.solver,
                                  rec.status,
                                  opt(rec.cost),
                                  opt(rec.lower_bound),
                                  format_fixed(rec.wall_ms, 3),
                                  format_fixed(rec.build_ms, 3),
                                  rec.lambda ? rec.lambda->str() : std::string(),
                                  ratio(rec.quality_ratio),
                                  ratio(rec.additive_ratio)};
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i)
      row += ',';
    row += csv_escape(fields[i]);
  }
  return row;
}

std::vector<BenchmarkRecord> run_benchmark(const BenchConfig &config, std::ostream &csv) {
  const auto cells = expand(config);
  std::vector<BenchmarkRecord> all;
  csv << csv_header << '\n' << std::flush;
  auto emit = [&](std::vector<BenchmarkRecord> rows) {
    for (auto &rec : rows) {
      csv << to_csv_row(rec) << '\n';
      all.push_back(std::move(rec));
    }
    csv.flush();
  };

  const auto workers = static_cast<std::size_t>(config.parallelism);
  if (workers <= 1 || cells.size() <= 1) {
    for (const Cell &cell : cells)
      emit(run_cell(cell, config));
    return all;
  }

  std::vector<std::optional<std::vector<BenchmarkRecord>>> done(cells.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(workers, cells.size()); ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < cells.size();) {
          auto rows = run_cell(cells[i], config);
          std::lock_guard lock(mu);
          done[i] = std::move(rows);
          ready.notify_all();
        }
      });
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::vector<BenchmarkRecord> rows;
      {
        std::unique_lock lock(mu);
        ready.wait(lock, [&] { return done[i].has_value(); });
        rows = std::move(*done[i]);
      }
      emit(std::move(rows));
    }
  }
  return all;
}

std::vector<RuntimeSummary> summarize_runtimes(const std::vector<BenchmarkRecord> &records) {
  auto solved = [](const BenchmarkRecord &rec) { return rec.status == "optimal" || rec.status == "feasible"; };
  std::map<std::string, double> best;
  for (const auto &rec : records)
    if (solved(rec)) {
      auto [it, fresh] = best.emplace(rec.instance_id, rec.wall_ms);
      if (!fresh)
        it->second = std::min(it->second, rec.wall_ms);
    }
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> ratios;
  for (const auto &rec : records) {
    if (std::find(order.begin(), order.end(), rec.solver) == order.end())
      order.push_back(rec.solver);
    auto it = best.find(rec.instance_id);
    if (!solved(rec) || it == best.end() || it->second <= 0)
      continue;
    ratios[rec.solver].push_back(rec.wall_ms / it->second);
  }
  std::vector<RuntimeSummary> out;
  for (const auto &solver : order)
    out.push_back({solver, summarize(ratios[solver])});
  return out;
}

void write_summary(std::ostream &out, const std::vector<BenchmarkRecord> &records) {
  out << "solver,count,min,max,mean,sd\n";
  for (const auto &s : summarize_runtimes(records))
    out << s.solver << ',' << s.ratio_to_best.count << ',' << format_fixed(s.ratio_to_best.min, 3)
        << ',' << format_fixed(s.ratio_to_best.max, 3) << ','
        << format_fixed(s.ratio_to_best.mean, 3) << ',' << format_fixed(s.ratio_to_best.sd, 3)
        << '\n';
}

void write_plot_script(std::ostream &out, const std::string &csv_path) {
  std::string quoted;
  for (char c : csv_path) {
    if (c == '\\' || c == '\'')
      quoted += '\\';
    quoted += c;
  }
  out << R"(#!/usr/bin/env python3
import csv
import sys
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else ')"
      << quoted << R"('
rows = list(csv.DictReader(open(path, newline="")))

times = defaultdict(list)
quality = defaultdict(list)
for row in rows:
    if row["status"] in ("optimal", "feasible"):
        times[row["solver"]].append(float(row["wall_ms"]))
    if row["solver"] == "apx" and row["quality_ratio"]:
        quality[int(row["r"])].append(float(row["quality_ratio"]))

fig, axes = plt.subplots(1, 2, figsize=(11, 4))
solvers = sorted(times)
axes[0].boxplot([times[s] for s in solvers], labels=solvers)
axes[0].set_yscale("log")
axes[0].set_ylabel("wall time [ms]")
axes[0].set_title("running time per solver")

rs = sorted(quality)
axes[1].boxplot([quality[r] for r in rs], labels=[str(r) for r in rs])
axes[1].set_xlabel("habitats r")
axes[1].set_ylabel("apx / opt")
axes[1].set_title("approximation quality")

fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=150)
print(out)
)";
}

} // namespace gbp
