#include "gbp/approx.hpp"

#include <algorithm>
#include <string>

#include "gbp/detail/union_find.hpp"
#include "gbp/errors.hpp"

namespace gbp {

std::vector<EdgeId> mst_on_induced(const Graph &g, std::span<const Cost> costs, const Habitat &h) {
  auto edges = habitat_edges(g, h);
  std::stable_sort(edges.begin(), edges.end(), [&](EdgeId a, EdgeId b) {
    return costs[static_cast<std::size_t>(a)] < costs[static_cast<std::size_t>(b)];
  });
  detail::UnionFind uf(static_cast<int>(h.size()));
  std::vector<EdgeId> tree;
  for (EdgeId e : edges) {
    const Edge &ed = g.edge(e);
    if (uf.unite(h.local_index(ed.u), h.local_index(ed.v)))
      tree.push_back(e);
  }
  if (uf.sets() != 1)
    throw PreconditionError("habitat does not induce a connected subgraph");
  std::sort(tree.begin(), tree.end());
  return tree;
}

SolveResult solve_apx(const Instance &inst, const SolveOptions &) {
  auto start = Clock::now();
  SolveResult result;
  std::vector<EdgeId> f;
  for (std::size_t i = 0; i < inst.habitats.size(); ++i) {
    if (!habitat_connected(inst.graph, inst.habitats[i])) {
      result.status = SolveStatus::InfeasibleInput;
      result.message = "habitat " + std::to_string(i) + " is disconnected in the graph";
      result.wall_time = Clock::now() - start;
      return result;
    }
    auto tree = mst_on_induced(inst.graph, inst.costs, inst.habitats[i]);
    f.insert(f.end(), tree.begin(), tree.end());
  }
  result.solution = Solution::from_edges(inst, std::move(f));
  result.status = SolveStatus::Feasible;
  result.wall_time = Clock::now() - start;
  return result;
}

} // namespace gbp
