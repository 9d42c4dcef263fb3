#include <doctest.h>

#include <algorithm>

#include "gbp/approx.hpp"
#include "gbp/errors.hpp"
#include "gbp/generators.hpp"
#include "gbp/solvers.hpp"
#include "test_support.hpp"

using namespace gbp;
namespace t = gbp::testing;

namespace {

Instance triangle(std::vector<Cost> costs) {
  return make_instance(t::cycle_graph(3), std::move(costs), {Habitat({0, 1, 2})});
}

Instance three_triangles_on_one_edge() {
  Graph g(5);
  g.add_edge(0, 1);
  for (Vertex x = 2; x <= 4; ++x) {
    g.add_edge(0, x);
    g.add_edge(1, x);
  }
  return make_instance(std::move(g), std::vector<Cost>(7, 1),
                       {Habitat({0, 1, 2}), Habitat({0, 1, 3}), Habitat({0, 1, 4})});
}

Instance k4_star(Cost c = 1) {
  return make_instance(t::complete_graph(4), std::vector<Cost>(6, c),
                       {Habitat({0, 1, 2}), Habitat({0, 1, 3}), Habitat({0, 2, 3})});
}

void check_optimal(const SolveResult &r, Cost expected, const Instance &inst) {
  REQUIRE(r.solution.has_value());
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.solution->total_cost == expected);
  CHECK(verify_solution(inst, *r.solution).feasible);
}

} // namespace

TEST_SUITE("solvers") {

TEST_CASE("matching solver") {
  Instance two = t::two_triangles();
  check_optimal(solve_mwm(two), 3, two);
  Instance tri = triangle({1, 2, 3});
  check_optimal(solve_mwm(tri), 3, tri);
  CHECK(solve_mwm(tri).solution->edges == std::vector<EdgeId>{0, 1});
  CHECK(solve_mwm(three_triangles_on_one_edge()).status == SolveStatus::UnsupportedHabitats);
  Instance path = make_instance(t::path_graph(3), {1, 1}, {Habitat({0, 1, 2})});
  CHECK(solve_mwm(path).status == SolveStatus::UnsupportedHabitats);
}

TEST_CASE("set packing solver") {
  Instance three = three_triangles_on_one_edge();
  auto oracle = t::naive_optimum(three);
  check_optimal(solve_mwhm(three), *oracle, three);
  Instance two = t::two_triangles();
  CHECK(solve_mwhm(two).cost() == solve_mwm(two).cost());
  Instance none = make_instance(t::cycle_graph(3), {1, 1, 1}, {});
  check_optimal(solve_mwhm(none), 0, none);
  CHECK(solve_mwhm(none).solution->edges.empty());
  Instance path = make_instance(t::path_graph(3), {1, 1}, {Habitat({0, 1, 2})});
  CHECK(solve_mwhm(path).status == SolveStatus::UnsupportedHabitats);
}

TEST_CASE("generic solver") {
  // habitat {0,1,2} on the path 0-1-2 inside a square with diagonal 0-2
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 0);
  g.add_edge(0, 2);
  Instance walk = make_instance(g, {2, 2, 1, 1, 5}, {Habitat({0, 1, 2})});
  check_optimal(solve_generic(walk), *t::naive_optimum(walk), walk);

  Instance p2 = make_instance(t::path_graph(2), {4}, {Habitat({0, 1})});
  check_optimal(solve_generic(p2), 4, p2);
  CHECK(solve_generic(p2).solution->edges == std::vector<EdgeId>{0});

  Instance three = three_triangles_on_one_edge();
  CHECK(solve_generic(three).cost() == solve_mwhm(three).cost());

  Instance split = make_instance(t::path_graph(3), {1, 1}, {Habitat({0, 2})});
  CHECK(solve_generic(split).status == SolveStatus::InfeasibleInput);
}

TEST_CASE("connectivity cut separation") {
  Instance tri = triangle({1, 1, 1});
  const Habitat &h = tri.habitats[0];
  CHECK_FALSE(separate_connectivity_cut(tri, {true, true, false}, h).has_value());
  auto cut = separate_connectivity_cut(tri, {false, false, false}, h);
  REQUIRE(cut);
  CHECK(*cut == std::vector<EdgeId>{0, 2}); // edges at vertex 0

  Instance c4 = make_instance(t::cycle_graph(4), {1, 1, 1, 1}, {Habitat({0, 1, 2, 3})});
  auto opposite = separate_connectivity_cut(c4, {true, false, true, false}, c4.habitats[0]);
  REQUIRE(opposite);
  CHECK(*opposite == std::vector<EdgeId>{1, 3});
}

TEST_CASE("tree habitats") {
  Instance p2 = make_instance(t::path_graph(2), {6}, {Habitat({0, 1})});
  check_optimal(solve_tree_habitats(p2), 6, p2);
  Instance paths = make_instance(t::path_graph(5), {1, 2, 3, 4}, {Habitat({0, 1, 2}), Habitat({1, 2, 3})});
  SolveResult r = solve_tree_habitats(paths);
  check_optimal(r, 6, paths);
  CHECK(r.solution->edges == std::vector<EdgeId>{0, 1, 2});
  CHECK(solve_tree_habitats(triangle({1, 1, 1})).status == SolveStatus::UnsupportedHabitats);
}

TEST_CASE("maximum degree two") {
  Instance c4 = make_instance(t::cycle_graph(4), {1, 2, 3, 4}, {Habitat({0, 1, 2, 3})});
  check_optimal(solve_maxdeg2(c4), 6, c4);
  Instance path = make_instance(t::path_graph(5), {1, 1, 1, 1}, {Habitat({0, 1}), Habitat({2, 3, 4})});
  SolveResult rp = solve_maxdeg2(path);
  check_optimal(rp, 3, path);
  CHECK(rp.solution->edges == std::vector<EdgeId>{0, 2, 3});
  Instance forced = c4;
  forced.habitats.emplace_back(std::vector<Vertex>{3, 0});
  check_optimal(solve_maxdeg2(forced), 7, forced);
  CHECK(solve_maxdeg2(k4_star()).status == SolveStatus::UnsupportedHabitats);
}

TEST_CASE("K4 reduction") {
  Instance k4 = k4_star();
  K4Reduction red = apply_k4_reduction(k4);
  CHECK(red.removed_cost == *t::naive_optimum(k4));
  CHECK(red.removed_cost == 3);
  CHECK(red.reduced.graph.vertex_count() == 0);
  check_optimal(solve_k4_mwm(k4), 3, k4);

  Instance two = t::two_triangles();
  K4Reduction id = apply_k4_reduction(two);
  CHECK(id.removed_cost == 0);
  CHECK(id.reduced.graph.edge_count() == two.graph.edge_count());
  CHECK(id.reduced.habitats == two.habitats);

  // vertex 0 sits in three (repeated) habitats but its neighbourhood is not a K4 component
  Graph g = t::cycle_graph(3);
  g.add_vertex();
  g.add_edge(0, 3);
  Habitat tri({0, 1, 2});
  Instance bad = make_instance(g, std::vector<Cost>(4, 1), {tri, tri, tri});
  CHECK_THROWS_AS(apply_k4_reduction(bad), IntegrityError);
  Graph wide = t::complete_graph(4);
  wide.add_vertex();
  wide.add_edge(3, 4);
  CHECK_THROWS_AS(apply_k4_reduction(make_instance(wide, std::vector<Cost>(7, 1), {})), PreconditionError);
  CHECK_THROWS_AS(apply_k4_reduction(three_triangles_on_one_edge()), PreconditionError);
}

TEST_CASE("brute force") {
  Instance two = t::two_triangles();
  check_optimal(solve_brute_force(two), 3, two);
  Instance p2 = make_instance(t::path_graph(2), {5}, {Habitat({0, 1})});
  check_optimal(solve_brute_force(p2), 5, p2);
  Instance split = make_instance(t::path_graph(3), {1, 1}, {Habitat({0, 2})});
  CHECK(solve_brute_force(split).status == SolveStatus::InfeasibleInput);

  Graph big = t::complete_graph(8);
  Instance dense = make_instance(big, std::vector<Cost>(28, 1), {Habitat({0, 1, 2, 3, 4, 5, 6, 7})});
  CHECK_THROWS_AS(solve_brute_force(dense), GuardError);
}

TEST_CASE("solver selection and names") {
  CHECK(choose_solver(make_instance(t::path_graph(3), {1, 1}, {Habitat({0, 1, 2})})) == SolverKind::Tree);
  CHECK(choose_solver(make_instance(t::cycle_graph(4), {1, 1, 1, 1}, {Habitat({0, 1, 2, 3})})) ==
        SolverKind::MaxDeg2);
  CHECK(choose_solver(t::two_triangles()) == SolverKind::Mwm);
  CHECK(choose_solver(three_triangles_on_one_edge()) == SolverKind::Mwhm);
  Instance mixed = t::two_triangles();
  mixed.habitats.emplace_back(std::vector<Vertex>{0, 1, 2, 3});
  CHECK(choose_solver(mixed) == SolverKind::Generic);
  for (auto kind : {SolverKind::Mwm, SolverKind::Mwhm, SolverKind::Generic, SolverKind::Apx,
                    SolverKind::Brute, SolverKind::Tree, SolverKind::MaxDeg2, SolverKind::K4Mwm,
                    SolverKind::Auto})
    CHECK(parse_solver_kind(to_string(kind)) == kind);
  CHECK_FALSE(parse_solver_kind("gurobi").has_value());
  CHECK(std::string(to_string(SolveStatus::TimeoutIncumbent)) == "timeout_incumbent");
}

TEST_CASE("budget decision") {
  Instance two = t::two_triangles();
  SolveResult r = solve_mwm(two);
  CHECK_THROWS_AS(decide(two, r), PreconditionError);
  for (Cost k = 0; k <= 6; ++k) {
    two.budget = k;
    CHECK(decide(two, r) == (k >= 3));
  }
}

TEST_CASE("property: exact solvers agree with the enumeration oracle") {
  int checked = 0;
  for (Seed seed = 1; checked < 150 && seed < 3000; ++seed) {
    auto family = static_cast<t::Family>(seed % 3);
    auto inst = t::small_instance(family, seed, 16);
    if (!inst)
      continue;
    ++checked;
    auto oracle = t::naive_optimum(*inst);
    REQUIRE(oracle);
    SolveResult brute = solve_brute_force(*inst);
    check_optimal(brute, *oracle, *inst);
    check_optimal(solve_generic(*inst), *oracle, *inst);
    SolveResult mwhm = solve_mwhm(*inst);
    if (mwhm.status != SolveStatus::UnsupportedHabitats)
      check_optimal(mwhm, *oracle, *inst);
    SolveResult mwm = solve_mwm(*inst);
    if (mwm.status != SolveStatus::UnsupportedHabitats)
      check_optimal(mwm, *oracle, *inst);
    check_optimal(solve_with(SolverKind::Auto, *inst), *oracle, *inst);
  }
  CHECK(checked == 150);
}

TEST_CASE("property: special cases agree with the oracle") {
  for (Seed seed = 1; seed <= 150; ++seed) {
    Instance d2 = t::maxdeg2_instance(seed);
    check_optimal(solve_maxdeg2(d2), *t::naive_optimum(d2), d2);
    Instance k4 = t::k4_instance(seed);
    check_optimal(solve_k4_mwm(k4), *t::naive_optimum(k4), k4);
  }
  // tree habitats on random paths inside random plane graphs
  for (Seed seed = 1; seed <= 100; ++seed) {
    PlaneGraph pg = random_plane_graph(9, seed);
    Instance inst = gen_walk_instance(pg.graph, pg.costs, 3, 3, seed);
    if (std::all_of(inst.habitats.begin(), inst.habitats.end(), [&](const Habitat &h) {
          auto s = classify_habitat(inst.graph, h);
          return s == HabitatShape::Tree || s == HabitatShape::P2;
        }))
      check_optimal(solve_tree_habitats(inst), *t::naive_optimum(inst), inst);
  }
}

TEST_CASE("property: decisions are monotone in the budget") {
  for (Seed seed = 1; seed <= 40; ++seed) {
    auto inst = t::small_instance(t::Family::Walk, seed, 16);
    if (!inst)
      continue;
    SolveResult r = solve_generic(*inst);
    bool before = false;
    for (Cost k = 0; k <= 60; ++k) {
      inst->budget = k;
      bool now = decide(*inst, r);
      CHECK((!before || now));
      before = now;
    }
    CHECK(before);
  }
}

TEST_CASE("property: every emitted cut holds for every feasible solution") {
  int checked = 0;
  for (Seed seed = 1; checked < 40 && seed < 500; ++seed) {
    auto inst = t::small_instance(static_cast<t::Family>(seed % 3), seed, 12);
    if (!inst)
      continue;
    ++checked;
    GenericTrace trace;
    solve_generic(*inst, {}, &trace);
    std::vector<EdgeId> covered = covered_edges(*inst);
    for (std::uint32_t mask = 0; mask < (1u << covered.size()); ++mask) {
      bool feasible = std::all_of(inst->habitats.begin(), inst->habitats.end(), [&](const Habitat &h) {
        return t::connected_under(inst->graph, covered, mask, h);
      });
      if (!feasible)
        continue;
      std::vector<bool> in_f(static_cast<std::size_t>(inst->graph.edge_count()), false);
      for (std::size_t i = 0; i < covered.size(); ++i)
        if (mask >> i & 1u)
          in_f[static_cast<std::size_t>(covered[i])] = true;
      for (const auto &cut : trace.cuts)
        CHECK(std::any_of(cut.begin(), cut.end(),
                          [&](EdgeId e) { return in_f[static_cast<std::size_t>(e)]; }));
    }
  }
  CHECK(checked == 40);
}

TEST_CASE("zero time limit still yields a feasible incumbent") {
  PlaneGraph pg = random_plane_graph(200, 4);
  Instance inst = gen_walk_instance(pg.graph, pg.costs, 30, 7, 4);
  SolveOptions opts;
  opts.time_limit = std::chrono::milliseconds(0);
  SolveResult r = solve_generic(inst, opts);
  REQUIRE(r.solution);
  CHECK(verify_solution(inst, *r.solution).feasible);
  if (r.status == SolveStatus::TimeoutIncumbent) {
    REQUIRE(r.lower_bound);
    CHECK(*r.lower_bound <= r.solution->total_cost);
  } else {
    CHECK(r.status == SolveStatus::Optimal);
  }
}

}
