#include <doctest.h>

#include <sstream>

#include "gbp/bench.hpp"
#include "gbp/errors.hpp"
#include "test_support.hpp"

using namespace gbp;

namespace {

BenchConfig config(const std::string &text) {
  std::istringstream in(text);
  return parse_bench_config(in);
}

int config_error_line(const std::string &text) {
  try {
    config(text);
  } catch (const ParseError &e) {
    return e.line();
  }
  return -1;
}

std::vector<std::string> lines(const std::string &text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);)
    out.push_back(l);
  return out;
}

} // namespace

TEST_SUITE("bench") {

TEST_CASE("config parsing") {
  BenchConfig cfg = config("# grid\ngraph=rng:50\ntype=face\ntype=walk\nr=3\nq=4\nseed=1\nseed=2\n"
                           "solvers=mwm, apx\nsolver=generic\ntime_limit_ms=500\nparallelism=2\n");
  CHECK(cfg.graphs == std::vector<std::string>{"rng:50"});
  CHECK(cfg.types == std::vector<std::string>{"face", "walk"});
  CHECK(cfg.seeds == std::vector<Seed>{1, 2});
  CHECK(cfg.solvers == std::vector<SolverKind>{SolverKind::Mwm, SolverKind::Apx, SolverKind::Generic});
  CHECK(cfg.time_limit == std::chrono::milliseconds(500));
  CHECK(cfg.parallelism == 2);

  CHECK(config_error_line("graph=rng:5\ntype=lake\n") == 2);
  CHECK(config_error_line("graph=rng:5\nsolvers=mwm,cplex\n") == 2);
  CHECK(config_error_line("r\n") == 1);
  CHECK(config_error_line("colour=red\n") == 1);
  CHECK(config_error_line("r=x\n") == 1);
  CHECK(config_error_line("graph=rng:5\ntype=walk\nr=1\nseed=1\nsolvers=apx\n") == 6); // no q
  CHECK_THROWS_AS(read_bench_config("/nonexistent/bench.cfg"), IoError);
}

TEST_CASE("csv quoting and rows") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");

  BenchmarkRecord rec;
  rec.instance_id = "x";
  rec.graph = "rng:5";
  rec.habitat_type = "walk";
  rec.r = 2;
  rec.q = 4;
  rec.seed = 3;
  rec.solver = "generic";
  rec.status = "timeout_incumbent";
  rec.cost = 17;
  rec.lower_bound = 12;
  rec.wall_ms = 1.23456;
  rec.build_ms = 0.5;
  rec.lambda = Rational(6, 5);
  CHECK(to_csv_row(rec) == "x,rng:5,walk,2,4,3,generic,timeout_incumbent,17,12,1.235,0.500,6/5,,");
  rec.quality_ratio = Rational(5, 4);
  rec.additive_ratio = Rational(1, 3);
  CHECK(to_csv_row(rec).ends_with(",1.250000,0.333333"));
  CHECK(std::string(csv_header).starts_with("instance_id,graph,habitat_type,r,q,seed,solver,status"));
}

TEST_CASE("one record per instance and solver in grid order") {
  BenchConfig cfg = config("graph=rng:60\ntype=face\nr=2\nseed=1\nseed=2\nsolvers=mwm,mwhm,apx\n");
  std::ostringstream csv;
  auto records = run_benchmark(cfg, csv);
  CHECK(records.size() == 2 * 3);
  auto rows = lines(csv.str());
  REQUIRE(rows.size() == 1 + 6);
  CHECK(rows[0] == csv_header);
  CHECK(records[0].instance_id == "rng60-face-r2-s1");
  CHECK(records[3].instance_id == "rng60-face-r2-s2");
  CHECK(records[0].solver == "mwm");
  CHECK(records[2].solver == "apx");
  for (const auto &rec : records) {
    CHECK(rec.status != "error");
    REQUIRE(rec.lambda);
    CHECK(Rational(1) <= *rec.lambda);
    REQUIRE(rec.quality_ratio);
    CHECK(Rational(1) <= *rec.quality_ratio);
  }
}

TEST_CASE("unsupported pairings and generation failures become rows") {
  std::ostringstream csv;
  auto walks = run_benchmark(config("graph=rng:40\ntype=walk\nr=5\nq=3\nseed=1\nsolvers=mwm,generic\n"), csv);
  REQUIRE(walks.size() == 2);
  CHECK(walks[0].status == "unsupported_habitats");
  CHECK_FALSE(walks[0].cost.has_value());
  CHECK(walks[1].status == "optimal");

  auto none = run_benchmark(config("graph=rng:40\ntype=cycle\nr=3\nq=40\nseed=1\nsolvers=mwm,apx\n"), csv);
  REQUIRE(none.size() == 2);
  CHECK(none[0].status == "generation_error");
  CHECK(none[1].status == "generation_error");
}

TEST_CASE("parallel runs emit the same rows as sequential ones") {
  std::string grid = "graph=rng:80\ntype=face\ntype=walk\nr=3\nr=6\nq=5\nseed=1\nseed=2\n"
                     "solvers=mwhm,generic,apx\n";
  std::ostringstream seq;
  std::ostringstream par;
  run_benchmark(config(grid), seq);
  run_benchmark(config(grid + "parallelism=3\n"), par);
  CHECK(gbp::testing::mask_timing_columns(seq.str()) == gbp::testing::mask_timing_columns(par.str()));
}

TEST_CASE("runtime summaries") {
  std::vector<BenchmarkRecord> recs(4);
  recs[0] = {"a", "", "face", 1, {}, 1, "mwm", "optimal", 3, {}, 1.0};
  recs[1] = {"a", "", "face", 1, {}, 1, "generic", "optimal", 3, {}, 4.0};
  recs[2] = {"b", "", "face", 1, {}, 2, "mwm", "optimal", 3, {}, 2.0};
  recs[3] = {"b", "", "face", 1, {}, 2, "generic", "optimal", 3, {}, 2.0};
  auto s = summarize_runtimes(recs);
  REQUIRE(s.size() == 2);
  CHECK(s[0].solver == "mwm");
  CHECK(s[0].ratio_to_best.max == 1.0);
  CHECK(s[1].ratio_to_best.min == 1.0);
  CHECK(s[1].ratio_to_best.max == 4.0);
  std::ostringstream out;
  write_summary(out, recs);
  CHECK(out.str().starts_with("solver,count,min,max,mean,sd\nmwm,2,1.000,1.000,1.000,0.000\n"));
  std::ostringstream script;
  write_plot_script(script, "runs.csv");
  CHECK(script.str().find("runs.csv") != std::string::npos);
}

}
