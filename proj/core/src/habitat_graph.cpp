#include "gbp/habitat_graph.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "gbp/errors.hpp"

namespace gbp {

HabitatGraph build_habitat_graph(const Instance &inst) {
  const Graph &g = inst.graph;
  std::vector<std::vector<int>> sharing(static_cast<std::size_t>(g.edge_count()));
  for (std::size_t i = 0; i < inst.habitats.size(); ++i) {
    const Habitat &h = inst.habitats[i];
    if (classify_habitat(g, h) != HabitatShape::Cycle)
      throw PreconditionError("habitat " + std::to_string(i) + " does not induce a cycle");
    for (EdgeId e : habitat_edges(g, h))
      sharing[static_cast<std::size_t>(e)].push_back(static_cast<int>(i));
  }

  HabitatGraph hg;
  hg.habitat_count = static_cast<int>(inst.habitats.size());
  hg.node_count = hg.habitat_count;
  hg.hyperedge_of_edge.assign(static_cast<std::size_t>(g.edge_count()), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto &owners = sharing[static_cast<std::size_t>(e)];
    if (owners.empty())
      continue;
    Hyperedge he;
    he.origin = e;
    he.weight = inst.costs[static_cast<std::size_t>(e)];
    if (owners.size() == 1) {
      he.pendant = true;
      he.nodes = {owners.front(), hg.node_count++};
    } else {
      he.nodes = owners;
    }
    hg.hyperedge_of_edge[static_cast<std::size_t>(e)] = static_cast<int>(hg.hyperedges.size());
    hg.hyperedges.push_back(std::move(he));
    hg.covered.push_back(e);
    hg.covered_cost += inst.costs[static_cast<std::size_t>(e)];
  }
  return hg;
}

HabitatGraph simplify(const HabitatGraph &hg) {
  std::map<std::vector<int>, int> best;
  for (std::size_t i = 0; i < hg.hyperedges.size(); ++i) {
    auto [it, inserted] = best.emplace(hg.hyperedges[i].nodes, static_cast<int>(i));
    if (!inserted && hg.hyperedges[i].weight > hg.hyperedges[static_cast<std::size_t>(it->second)].weight)
      it->second = static_cast<int>(i);
  }

  HabitatGraph out;
  out.habitat_count = hg.habitat_count;
  out.node_count = hg.node_count;
  out.covered = hg.covered;
  out.covered_cost = hg.covered_cost;
  out.hyperedge_of_edge.assign(hg.hyperedge_of_edge.size(), -1);
  std::vector<int> new_pos(hg.hyperedges.size(), -1);
  for (std::size_t i = 0; i < hg.hyperedges.size(); ++i) {
    if (best.at(hg.hyperedges[i].nodes) != static_cast<int>(i))
      continue;
    new_pos[i] = static_cast<int>(out.hyperedges.size());
    out.hyperedge_of_edge[static_cast<std::size_t>(hg.hyperedges[i].origin)] = new_pos[i];
    out.hyperedges.push_back(hg.hyperedges[i]);
  }

  // Earlier forced edges keep their representative's new position.
  for (std::size_t k = 0; k < hg.forced.size(); ++k) {
    out.forced.push_back(hg.forced[k]);
    out.forced_representative.push_back(
        new_pos[static_cast<std::size_t>(hg.forced_representative[k])]);
  }
  for (std::size_t i = 0; i < hg.hyperedges.size(); ++i) {
    if (new_pos[i] >= 0)
      continue;
    out.forced.push_back(hg.hyperedges[i].origin);
    out.forced_representative.push_back(
        new_pos[static_cast<std::size_t>(best.at(hg.hyperedges[i].nodes))]);
  }
  return out;
}

void check_matching(const HabitatGraph &hg, const Matching &m) {
  std::vector<bool> used(static_cast<std::size_t>(hg.node_count), false);
  Cost weight = 0;
  for (int pos : m.hyperedges) {
    if (pos < 0 || pos >= static_cast<int>(hg.hyperedges.size()))
      throw MatchingError("hyperedge position out of range: " + std::to_string(pos));
    const Hyperedge &he = hg.hyperedges[static_cast<std::size_t>(pos)];
    for (int node : he.nodes) {
      if (used[static_cast<std::size_t>(node)])
        throw MatchingError("hyperedges overlap in node " + std::to_string(node));
      used[static_cast<std::size_t>(node)] = true;
    }
    weight += he.weight;
  }
  if (weight != m.weight)
    throw MatchingError("matching weight " + std::to_string(m.weight) + " does not match " +
                        std::to_string(weight));
}

Matching make_matching(const HabitatGraph &hg, std::vector<int> hyperedges) {
  std::sort(hyperedges.begin(), hyperedges.end());
  Matching m;
  for (int pos : hyperedges) {
    if (pos < 0 || pos >= static_cast<int>(hg.hyperedges.size()))
      throw MatchingError("hyperedge position out of range: " + std::to_string(pos));
    m.weight += hg.hyperedges[static_cast<std::size_t>(pos)].weight;
  }
  m.hyperedges = std::move(hyperedges);
  return m;
}

Solution matching_to_solution(const Instance &inst, const HabitatGraph &hg, const Matching &m) {
  check_matching(hg, m);
  std::vector<bool> removed(static_cast<std::size_t>(inst.graph.edge_count()), false);
  for (int pos : m.hyperedges)
    removed[static_cast<std::size_t>(hg.hyperedges[static_cast<std::size_t>(pos)].origin)] = true;
  std::vector<EdgeId> f;
  f.reserve(hg.covered.size());
  for (EdgeId e : hg.covered)
    if (!removed[static_cast<std::size_t>(e)])
      f.push_back(e);
  Solution sol = Solution::from_edges(inst, std::move(f));
  if (sol.total_cost != hg.covered_cost - m.weight)
    throw IntegrityError("solution cost disagrees with covered cost minus matching weight");
  return sol;
}

Matching solution_to_matching(const Instance &inst, const HabitatGraph &hg,
                              std::span<const EdgeId> f) {
  auto mask = edge_mask(inst.graph, f);
  for (std::size_t i = 0; i < inst.habitats.size(); ++i)
    if (!is_connected_on(inst.graph, mask, inst.habitats[i]))
      throw PreconditionError("edge set does not connect habitat " + std::to_string(i));

  std::vector<int> picked;
  for (std::size_t i = 0; i < hg.hyperedges.size(); ++i)
    if (!mask[static_cast<std::size_t>(hg.hyperedges[i].origin)])
      picked.push_back(static_cast<int>(i));
  // A missing discarded parallel edge stands in for its surviving representative.
  for (std::size_t k = 0; k < hg.forced.size(); ++k)
    if (!mask[static_cast<std::size_t>(hg.forced[k])])
      picked.push_back(hg.forced_representative[k]);
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  Matching m = make_matching(hg, std::move(picked));
  check_matching(hg, m);
  return m;
}

int max_habitats_per_edge(const HabitatGraph &hg) {
  int best = 0;
  for (const Hyperedge &he : hg.hyperedges)
    best = std::max(best, static_cast<int>(he.nodes.size()));
  return best;
}

} // namespace gbp
