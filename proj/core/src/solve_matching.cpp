#include <algorithm>
#include <string>

#include "gbp/detail/solve_util.hpp"
#include "gbp/habitat_graph.hpp"
#include "gbp/matching.hpp"
#include "gbp/set_packing.hpp"
#include "gbp/solvers.hpp"

namespace gbp {

namespace {

std::optional<std::size_t> first_non_cycle(const Instance &inst) {
  for (std::size_t i = 0; i < inst.habitats.size(); ++i)
    if (classify_habitat(inst.graph, inst.habitats[i]) != HabitatShape::Cycle)
      return i;
  return std::nullopt;
}

} // namespace

SolveResult solve_mwm(const Instance &inst, const SolveOptions &) {
  auto start = Clock::now();
  if (auto bad = first_non_cycle(inst))
    return detail::reject(SolveStatus::UnsupportedHabitats,
                          "habitat " + std::to_string(*bad) + " does not induce a cycle", start);
  HabitatGraph hg = simplify(build_habitat_graph(inst));
  if (max_habitats_per_edge(hg) > 2)
    return detail::reject(SolveStatus::UnsupportedHabitats,
                          "an edge is shared by more than two habitats", start);

  SolveResult result;
  result.build_time = Clock::now() - start;

  // A pendant hyperedge competes only for its habitat node, so the heaviest
  // one per habitat suffices; a shared edge worth no more than the best
  // pendants of both its habitats is never needed.
  const int hc = hg.habitat_count;
  std::vector<int> best_pendant(static_cast<std::size_t>(hc), -1);
  auto pendant_weight = [&](int h) {
    int k = best_pendant[static_cast<std::size_t>(h)];
    return k < 0 ? Cost{0} : hg.hyperedges[static_cast<std::size_t>(k)].weight;
  };
  for (std::size_t k = 0; k < hg.hyperedges.size(); ++k) {
    const Hyperedge &he = hg.hyperedges[k];
    int &best = best_pendant[static_cast<std::size_t>(he.nodes[0])];
    if (he.pendant && (best < 0 || he.weight > hg.hyperedges[static_cast<std::size_t>(best)].weight))
      best = static_cast<int>(k);
  }
  std::vector<int> node_of(static_cast<std::size_t>(hc), -1);
  WeightedGraph wg;
  std::vector<int> origin;
  auto node = [&](int h) {
    int &id = node_of[static_cast<std::size_t>(h)];
    if (id < 0)
      id = wg.node_count++;
    return id;
  };
  for (std::size_t k = 0; k < hg.hyperedges.size(); ++k) {
    const Hyperedge &he = hg.hyperedges[k];
    if (he.pendant || he.nodes.size() != 2 ||
        he.weight <= pendant_weight(he.nodes[0]) + pendant_weight(he.nodes[1]))
      continue;
    int a = node(he.nodes[0]);
    int b = node(he.nodes[1]);
    wg.edges.push_back({a, b, he.weight});
    origin.push_back(static_cast<int>(k));
  }
  std::vector<int> picked;
  for (int h = 0; h < hc; ++h) {
    int k = best_pendant[static_cast<std::size_t>(h)];
    if (k < 0)
      continue;
    if (node_of[static_cast<std::size_t>(h)] < 0) {
      picked.push_back(k);
      continue;
    }
    wg.edges.push_back({node_of[static_cast<std::size_t>(h)], wg.node_count++,
                        hg.hyperedges[static_cast<std::size_t>(k)].weight});
    origin.push_back(k);
  }

  GraphMatching gm = max_weight_matching(wg);
  for (int e : gm.edges)
    picked.push_back(origin[static_cast<std::size_t>(e)]);
  std::sort(picked.begin(), picked.end());
  Matching m = make_matching(hg, std::move(picked));
  result.solution = matching_to_solution(inst, hg, m);
  result.lower_bound = result.solution->total_cost;
  result.status = SolveStatus::Optimal;
  result.wall_time = Clock::now() - start - result.build_time;
  return result;
}

SolveResult solve_mwhm(const Instance &inst, const SolveOptions &options) {
  auto start = Clock::now();
  if (auto bad = first_non_cycle(inst))
    return detail::reject(SolveStatus::UnsupportedHabitats,
                          "habitat " + std::to_string(*bad) + " does not induce a cycle", start);
  HabitatGraph hg = simplify(build_habitat_graph(inst));

  SolveResult result;
  result.build_time = Clock::now() - start;
  PackingResult packing = max_weight_set_packing(hg, detail::deadline_from(options));
  result.solution = matching_to_solution(inst, hg, packing.matching);
  result.lower_bound = hg.covered_cost - packing.upper_bound;
  result.status = packing.timed_out ? SolveStatus::TimeoutIncumbent : SolveStatus::Optimal;
  result.wall_time = Clock::now() - start - result.build_time;
  return result;
}

} // namespace gbp
