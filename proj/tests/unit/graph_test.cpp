#include <doctest.h>

#include "gbp/errors.hpp"
#include "gbp/generators.hpp"
#include "gbp/graph.hpp"
#include "test_support.hpp"

using namespace gbp;
using gbp::testing::two_triangles;
using gbp::testing::two_triangles_graph;

TEST_SUITE("graph") {

TEST_CASE("graph rejects self-loops, duplicates and bad endpoints") {
  Graph g(3);
  g.add_edge(0, 1);
  CHECK_THROWS_AS(g.add_edge(1, 1), InputError);
  CHECK_THROWS_AS(g.add_edge(1, 0), InputError);
  CHECK_THROWS_AS(g.add_edge(0, 3), InputError);
  CHECK(g.find_edge(1, 0) == 0);
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("induced subgraph keeps exactly the inner edges") {
  Graph tri = gbp::testing::cycle_graph(3);
  std::vector<Vertex> vs{0, 1};
  Subgraph s = induced_subgraph(tri, vs);
  CHECK(s.graph.vertex_count() == 2);
  CHECK(s.graph.edge_count() == 1);

  Subgraph empty = induced_subgraph(tri, std::vector<Vertex>{});
  CHECK(empty.graph.vertex_count() == 0);
  CHECK(empty.graph.edge_count() == 0);

  Graph g = two_triangles_graph();
  std::vector<Vertex> first{0, 1, 2};
  Subgraph t = induced_subgraph(g, first);
  CHECK(t.graph.vertex_count() == 3);
  CHECK(t.graph.edge_count() == 3);
  CHECK(t.parent_edge == std::vector<EdgeId>{0, 1, 2});

  CHECK_THROWS_AS(induced_subgraph(g, std::vector<Vertex>{0, 9}), InputError);
}

TEST_CASE("edge-induced subgraph spans the endpoints") {
  Graph path = gbp::testing::path_graph(3);
  CHECK(edge_induced_subgraph(path, std::vector<EdgeId>{}).graph.vertex_count() == 0);
  Subgraph ab = edge_induced_subgraph(path, std::vector<EdgeId>{0});
  CHECK(ab.graph.vertex_count() == 2);
  CHECK(ab.graph.edge_count() == 1);

  Graph c4 = gbp::testing::cycle_graph(4);
  Subgraph opposite = edge_induced_subgraph(c4, std::vector<EdgeId>{0, 2});
  CHECK(opposite.graph.vertex_count() == 4);
  CHECK(opposite.graph.edge_count() == 2);
  int components = 0;
  connected_components(opposite.graph, &components);
  CHECK(components == 2);

  CHECK_THROWS_AS(edge_induced_subgraph(c4, std::vector<EdgeId>{4}), InputError);
}

TEST_CASE("connectivity of a habitat under an edge set") {
  Graph tri = gbp::testing::cycle_graph(3);
  Habitat h({0, 1, 2});
  CHECK(is_connected_on(tri, std::vector<EdgeId>{0, 1}, h));
  CHECK_FALSE(is_connected_on(tri, std::vector<EdgeId>{0}, h));

  Graph g = two_triangles_graph();
  // edge 0 is 0-1, edge 3 is 0-3
  CHECK_FALSE(is_connected_on(g, std::vector<EdgeId>{0, 3}, Habitat({0, 1, 2})));
}

TEST_CASE("verify_solution reports feasibility and budget") {
  Instance inst = two_triangles();
  Solution f = Solution::from_edges(inst, {0, 1, 3});
  Verification v = verify_solution(inst, f);
  CHECK(v.feasible);
  CHECK(f.total_cost == 3);

  CHECK_FALSE(verify_solution(inst, Solution::from_edges(inst, {})).feasible);

  Instance tight = inst;
  tight.budget = 2;
  Verification over = verify_solution(tight, f);
  CHECK(over.feasible);
  CHECK_FALSE(over.within_budget);

  Solution tampered = f;
  tampered.total_cost = 7;
  CHECK_THROWS_AS(verify_solution(inst, tampered), IntegrityError);
}

TEST_CASE("three is the minimum for the two-triangle instance") {
  CHECK(gbp::testing::naive_optimum(two_triangles()) == 3);
}

TEST_CASE("habitat classification") {
  Graph g = two_triangles_graph();
  CHECK(classify_habitat(g, Habitat({0, 1})) == HabitatShape::P2);
  CHECK(classify_habitat(g, Habitat({0, 1, 2})) == HabitatShape::Cycle);
  Graph path = gbp::testing::path_graph(3);
  CHECK(classify_habitat(path, Habitat({0, 1, 2})) == HabitatShape::Tree);
  CHECK(classify_habitat(path, Habitat({0, 2})) == HabitatShape::Other);
  CHECK(classify_habitat(g, Habitat({0, 1, 2, 3})) == HabitatShape::Other);
}

TEST_CASE("instances validate costs, habitats and budget") {
  Graph g = two_triangles_graph();
  CHECK_THROWS_AS(make_instance(g, {1, 1, 1}, {}), InputError);
  CHECK_THROWS_AS(make_instance(g, {1, 1, 0, 1, 1}, {}), InputError);
  CHECK_THROWS_AS(make_instance(g, {1, 1, 1, 1, 1}, {Habitat({0, 7})}), InputError);
  CHECK_THROWS_AS(make_instance(g, {1, 1, 1, 1, 1}, {}, -1), InputError);
  CHECK_THROWS_AS(Habitat({3}), InputError);
}

TEST_CASE("property: all edges feasible iff every habitat is connected in G") {
  for (Seed seed = 1; seed <= 60; ++seed) {
    PlaneGraph pg = random_plane_graph(9, seed);
    Rng rng(seed);
    std::vector<Habitat> habitats;
    for (int i = 0; i < 3; ++i) {
      std::vector<Vertex> vs;
      for (Vertex v = 0; v < 9; ++v)
        if (rng.below(3) == 0)
          vs.push_back(v);
      if (vs.size() >= 2)
        habitats.emplace_back(vs);
    }
    Instance inst = make_instance(pg.graph, pg.costs, habitats);
    std::vector<EdgeId> all;
    for (EdgeId e = 0; e < inst.graph.edge_count(); ++e)
      all.push_back(e);
    bool expected = std::all_of(habitats.begin(), habitats.end(),
                                [&](const Habitat &h) { return habitat_connected(inst.graph, h); });
    CHECK(verify_solution(inst, Solution::from_edges(inst, all)).feasible == expected);
  }
}

TEST_CASE("property: connectivity is monotone in the edge set") {
  for (Seed seed = 1; seed <= 40; ++seed) {
    PlaneGraph pg = random_plane_graph(8, seed);
    Rng rng(seed + 1000);
    Habitat h({0, 1, 2, 3, 4});
    std::vector<bool> in_f(static_cast<std::size_t>(pg.graph.edge_count()), false);
    bool was = is_connected_on(pg.graph, in_f, h);
    std::vector<EdgeId> order;
    for (EdgeId e = 0; e < pg.graph.edge_count(); ++e)
      order.push_back(e);
    rng.shuffle(order);
    for (EdgeId e : order) {
      in_f[static_cast<std::size_t>(e)] = true;
      bool now = is_connected_on(pg.graph, in_f, h);
      CHECK((!was || now));
      was = now;
    }
  }
}

TEST_CASE("property: a cycle habitat has as many induced edges as vertices") {
  for (Seed seed = 1; seed <= 40; ++seed) {
    PlaneGraph pg = random_plane_graph(10, seed);
    for (const auto &cycle : chordless_cycles(pg.graph, 3, 10)) {
      Habitat h(cycle);
      REQUIRE(classify_habitat(pg.graph, h) == HabitatShape::Cycle);
      CHECK(habitat_edges(pg.graph, h).size() == h.size());
    }
  }
}

}
