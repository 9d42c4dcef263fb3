#include <doctest.h>

#include <algorithm>

#include "gbp/approx.hpp"
#include "gbp/errors.hpp"
#include "gbp/generators.hpp"
#include "test_support.hpp"

using namespace gbp;
namespace t = gbp::testing;

TEST_SUITE("approx") {

TEST_CASE("spanning trees of induced subgraphs") {
  Graph tri = t::cycle_graph(3);
  std::vector<Cost> c3{1, 2, 3};
  CHECK(mst_on_induced(tri, c3, Habitat({0, 1, 2})) == std::vector<EdgeId>{0, 1});

  Graph path = t::path_graph(4);
  std::vector<Cost> cp{5, 1, 7};
  CHECK(mst_on_induced(path, cp, Habitat({0, 1, 2, 3})) == std::vector<EdgeId>{0, 1, 2});

  Graph c4 = t::cycle_graph(4);
  std::vector<Cost> c4c{1, 2, 3, 4};
  CHECK(mst_on_induced(c4, c4c, Habitat({0, 1, 2, 3})) == std::vector<EdgeId>{0, 1, 2});

  CHECK_THROWS_AS(mst_on_induced(path, cp, Habitat({0, 2})), PreconditionError);
}

TEST_CASE("union of trees") {
  Instance two = t::two_triangles();
  SolveResult r = solve_apx(two);
  REQUIRE(r.solution);
  CHECK(r.status == SolveStatus::Feasible);
  CHECK(r.solution->total_cost == 3);
  CHECK(std::find(r.solution->edges.begin(), r.solution->edges.end(), 0) != r.solution->edges.end());

  Instance c5 = make_instance(t::cycle_graph(5), {3, 1, 4, 1, 5}, {Habitat({0, 1, 2, 3, 4})});
  CHECK(solve_apx(c5).solution->total_cost == *t::naive_optimum(c5));

  Instance split = make_instance(t::path_graph(3), {1, 1}, {Habitat({0, 2})});
  CHECK(solve_apx(split).status == SolveStatus::InfeasibleInput);
}

TEST_CASE("property: feasible, never below the optimum, additive bound on cycles") {
  int cycles = 0;
  for (Seed seed = 1; seed < 1500; ++seed) {
    auto family = static_cast<t::Family>(seed % 3);
    auto inst = t::small_instance(family, seed, 16);
    if (!inst)
      continue;
    SolveResult apx = solve_apx(*inst);
    REQUIRE(apx.solution);
    CHECK(verify_solution(*inst, *apx.solution).feasible);
    Cost opt = *t::naive_optimum(*inst);
    CHECK(apx.solution->total_cost >= opt);
    CHECK(solve_apx(*inst).solution == apx.solution);
    if (family != t::Family::Walk) {
      ++cycles;
      Cost c_max = *std::max_element(inst->costs.begin(), inst->costs.end());
      CHECK(apx.solution->total_cost <= opt + static_cast<Cost>(inst->habitats.size()) * c_max);
    }
  }
  CHECK(cycles >= 200);
}

}
