#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "gbp/io.hpp"
#include "test_support.hpp"

using namespace gbp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run gbp_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gbp");
  std::ostringstream out;
  std::ostringstream err;
  int code = cli::cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const char *env = std::getenv("GBP_TMP_DIR");
  fs::path dir = (env ? fs::path(env) : fs::temp_directory_path()) / "gbp_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string &name, const std::string &text) {
  auto path = (scratch() / name).string();
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string k4_file() {
  return write("k4.txt", instance_to_string(make_instance(gbp::testing::complete_graph(4),
                                                          std::vector<Cost>(6, 1), {})));
}

} // namespace

TEST_CASE("help and usage errors") {
  CHECK(gbp_cli({"--help"}).code == cli::ok);
  CHECK(gbp_cli({}).code == cli::usage);
  CHECK(gbp_cli({"solve"}).code == cli::usage);
  CHECK(gbp_cli({"solve", "--in", "x", "--solver", "cplex"}).code == cli::usage);
  CHECK(gbp_cli({"generate", "--kind", "lake"}).code == cli::usage);
  CHECK(gbp_cli({"generate", "--kind", "cvc-c3"}).code == cli::usage); // needs --in
}

TEST_CASE("solve and verify the two-triangle instance") {
  auto inst = write("two.txt", instance_to_string(gbp::testing::two_triangles()));
  auto sol = (scratch() / "two.sol").string();
  Run brute = gbp_cli({"solve", "--solver", "brute", "--in", inst, "--solution-out", sol});
  CHECK(brute.code == cli::ok);
  CHECK(brute.out.find("cost 3\n") != std::string::npos);
  CHECK(brute.out.find("status optimal\n") != std::string::npos);

  Run ok = gbp_cli({"verify", "--in", inst, "--solution", sol});
  CHECK(ok.code == cli::ok);
  CHECK(ok.out.find("feasible yes") != std::string::npos);

  auto tampered = write("tampered.sol", "F 2\n0 1\n");
  Run bad = gbp_cli({"verify", "--in", inst, "--solution", tampered});
  CHECK(bad.code == cli::negative);
  CHECK(bad.out.find("feasible no") != std::string::npos);

  Run autosolve = gbp_cli({"solve", "--in", inst});
  CHECK(autosolve.out.find("solver mwm\n") != std::string::npos);
  CHECK(autosolve.out.find("cost 3\n") != std::string::npos);
  Run apx = gbp_cli({"solve", "--solver", "apx", "--in", inst});
  CHECK(apx.code == cli::ok);
  CHECK(apx.out.find("status feasible\n") != std::string::npos);
}

TEST_CASE("exit codes for bad inputs") {
  CHECK(gbp_cli({"solve", "--in", (scratch() / "missing.txt").string()}).code == cli::io);
  auto garbage = write("garbage.txt", "V 2\nE x\n");
  Run parse = gbp_cli({"solve", "--in", garbage});
  CHECK(parse.code == cli::io);
  CHECK(parse.err.find("line 2") != std::string::npos);

  auto path = write("path.txt", "V 3\nE 2\n0 1 1\n1 2 1\nH 1\n3 0 1 2\n");
  CHECK(gbp_cli({"solve", "--solver", "mwm", "--in", path}).code == cli::usage);
  auto split = write("split.txt", "V 3\nE 2\n0 1 1\n1 2 1\nH 1\n2 0 2\n");
  CHECK(gbp_cli({"solve", "--in", split}).code == cli::negative);
  CHECK(gbp_cli({"generate", "--kind", "cycle", "--n", "5", "--q", "30"}).code == cli::negative);
}

TEST_CASE("vertex cover construction decides yes and no") {
  auto k4 = k4_file();
  for (int p : {2, 3}) {
    auto inst = (scratch() / ("c3_" + std::to_string(p) + ".txt")).string();
    REQUIRE(gbp_cli({"generate", "--kind", "cvc-c3", "--in", k4, "--p", std::to_string(p), "--out", inst})
                .code == cli::ok);
    Run r = gbp_cli({"solve", "--solver", "generic", "--in", inst});
    if (p == 3) {
      CHECK(r.code == cli::ok);
      CHECK(r.out.find("decision yes") != std::string::npos);
    } else {
      CHECK(r.code == cli::negative);
      CHECK(r.out.find("decision no") != std::string::npos);
    }
  }
  Run bintree = gbp_cli({"generate", "--kind", "cvc-bintree", "--in", k4, "--p", "3"});
  CHECK(bintree.code == cli::ok);
  CHECK(bintree.out.find("K ") != std::string::npos);
}

TEST_CASE("generation is reproducible") {
  for (const char *kind : {"rng", "face", "cycle", "walk"}) {
    Run a = gbp_cli({"generate", "--kind", kind, "--n", "80", "--r", "6", "--seed", "12"});
    Run b = gbp_cli({"generate", "--kind", kind, "--n", "80", "--r", "6", "--seed", "12"});
    CHECK(a.code == cli::ok);
    CHECK(a.out == b.out);
    CHECK(a.out.find("C ") != std::string::npos);
  }
  Run crown = gbp_cli({"generate", "--kind", "crown", "--p", "1", "--q", "3"});
  CHECK(crown.out.find("K 8\n") != std::string::npos);
}

TEST_CASE("bench writes csv, summary and plot script") {
  auto cfg = write("grid.cfg", "graph=rng:60\ntype=face\nr=3\nseed=1\nsolvers=mwm,apx\n");
  auto csv = (scratch() / "grid.csv").string();
  auto plot = (scratch() / "grid.py").string();
  Run r = gbp_cli({"bench", "--config", cfg, "--out-csv", csv, "--plot-script", plot});
  CHECK(r.code == cli::ok);
  CHECK(r.out.starts_with("solver,count,min,max,mean,sd\n"));
  CHECK(slurp(csv).starts_with("instance_id,"));
  CHECK(slurp(plot).find("grid.csv") != std::string::npos);
  Run stdout_csv = gbp_cli({"bench", "--config", cfg, "--out-csv", "-"});
  CHECK(stdout_csv.out.starts_with("instance_id,"));
  CHECK(gbp_cli({"bench", "--config", (scratch() / "none.cfg").string(), "--out-csv", "-"}).code ==
        cli::io);
}
