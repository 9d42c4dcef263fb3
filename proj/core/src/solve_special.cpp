#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "gbp/detail/solve_util.hpp"
#include "gbp/detail/union_find.hpp"
#include "gbp/errors.hpp"
#include "gbp/solvers.hpp"

namespace gbp {

namespace {

SolveResult finish_optimal(const Instance &inst, std::vector<EdgeId> f, Clock::time_point start) {
  SolveResult result;
  result.solution = Solution::from_edges(inst, std::move(f));
  result.lower_bound = result.solution->total_cost;
  result.status = SolveStatus::Optimal;
  result.wall_time = Clock::now() - start;
  return result;
}

// Edges of G[h] whose removal disconnects G[h].
std::vector<EdgeId> habitat_bridges(const Graph &g, const Habitat &h) {
  auto edges = habitat_edges(g, h);
  std::vector<EdgeId> bridges;
  for (EdgeId skip : edges) {
    detail::UnionFind uf(static_cast<int>(h.size()));
    for (EdgeId e : edges)
      if (e != skip)
        uf.unite(h.local_index(g.edge(e).u), h.local_index(g.edge(e).v));
    if (uf.sets() != 1)
      bridges.push_back(skip);
  }
  return bridges;
}

} // namespace

SolveResult solve_tree_habitats(const Instance &inst, const SolveOptions &) {
  auto start = Clock::now();
  for (std::size_t i = 0; i < inst.habitats.size(); ++i) {
    auto shape = classify_habitat(inst.graph, inst.habitats[i]);
    if (shape != HabitatShape::Tree && shape != HabitatShape::P2)
      return detail::reject(SolveStatus::UnsupportedHabitats,
                            "habitat " + std::to_string(i) + " does not induce a tree", start);
  }
  return finish_optimal(inst, covered_edges(inst), start);
}

SolveResult solve_maxdeg2(const Instance &inst, const SolveOptions &) {
  auto start = Clock::now();
  const Graph &g = inst.graph;
  if (g.max_degree() > 2)
    return detail::reject(SolveStatus::UnsupportedHabitats, "maximum degree exceeds two", start);
  if (auto bad = detail::first_disconnected_habitat(inst))
    return detail::reject(SolveStatus::InfeasibleInput,
                          "habitat " + std::to_string(*bad) + " is disconnected in the graph",
                          start);

  int comp_count = 0;
  auto comp = connected_components(g, &comp_count);
  std::vector<bool> forced(static_cast<std::size_t>(g.edge_count()), false);
  std::vector<bool> cycle_required(static_cast<std::size_t>(comp_count), false);
  for (const Habitat &h : inst.habitats) {
    if (classify_habitat(g, h) == HabitatShape::Cycle) {
      // A cycle induced with max degree two is a whole component.
      cycle_required[static_cast<std::size_t>(comp[static_cast<std::size_t>(h.vertices().front())])] = true;
    } else {
      for (EdgeId e : habitat_edges(g, h))
        forced[static_cast<std::size_t>(e)] = true;
    }
  }

  std::vector<EdgeId> f;
  std::vector<EdgeId> omit(static_cast<std::size_t>(comp_count), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    int c = comp[static_cast<std::size_t>(g.edge(e).u)];
    if (!cycle_required[static_cast<std::size_t>(c)] || forced[static_cast<std::size_t>(e)])
      continue;
    EdgeId &slot = omit[static_cast<std::size_t>(c)];
    if (slot < 0 || inst.costs[static_cast<std::size_t>(e)] > inst.costs[static_cast<std::size_t>(slot)])
      slot = e;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    int c = comp[static_cast<std::size_t>(g.edge(e).u)];
    bool take = forced[static_cast<std::size_t>(e)] ||
                (cycle_required[static_cast<std::size_t>(c)] && omit[static_cast<std::size_t>(c)] != e);
    if (take)
      f.push_back(e);
  }
  return finish_optimal(inst, std::move(f), start);
}

SolveResult solve_brute_force(const Instance &inst, const SolveOptions &) {
  auto start = Clock::now();
  if (auto bad = detail::first_disconnected_habitat(inst))
    return detail::reject(SolveStatus::InfeasibleInput,
                          "habitat " + std::to_string(*bad) + " is disconnected in the graph",
                          start);
  const Graph &g = inst.graph;
  auto covered = covered_edges(inst);
  std::vector<bool> is_forced(static_cast<std::size_t>(g.edge_count()), false);
  for (const Habitat &h : inst.habitats)
    for (EdgeId e : habitat_bridges(g, h))
      is_forced[static_cast<std::size_t>(e)] = true;

  std::vector<EdgeId> forced;
  std::vector<EdgeId> free;
  std::vector<int> bit_of(static_cast<std::size_t>(g.edge_count()), -1);
  for (EdgeId e : covered) {
    if (is_forced[static_cast<std::size_t>(e)]) {
      forced.push_back(e);
    } else {
      bit_of[static_cast<std::size_t>(e)] = static_cast<int>(free.size());
      free.push_back(e);
    }
  }
  if (free.size() > static_cast<std::size_t>(brute_force_edge_guard))
    throw GuardError("brute force refuses " + std::to_string(free.size()) +
                     " undetermined edges (limit " + std::to_string(brute_force_edge_guard) + ")");

  // Per habitat: feasibility table over the subsets of its own free edges.
  struct HabitatTable {
    std::vector<int> bits;
    std::vector<bool> feasible;
  };
  std::vector<HabitatTable> tables;
  for (const Habitat &h : inst.habitats) {
    HabitatTable t;
    auto edges = habitat_edges(g, h);
    std::vector<EdgeId> fixed_edges;
    std::vector<EdgeId> local_free;
    for (EdgeId e : edges) {
      if (bit_of[static_cast<std::size_t>(e)] >= 0) {
        t.bits.push_back(bit_of[static_cast<std::size_t>(e)]);
        local_free.push_back(e);
      } else {
        fixed_edges.push_back(e);
      }
    }
    if (t.bits.empty())
      continue; // every induced edge forced: always satisfied
    const std::uint32_t count = 1u << t.bits.size();
    t.feasible.assign(count, false);
    for (std::uint32_t local = 0; local < count; ++local) {
      detail::UnionFind uf(static_cast<int>(h.size()));
      for (EdgeId e : fixed_edges)
        uf.unite(h.local_index(g.edge(e).u), h.local_index(g.edge(e).v));
      for (std::size_t j = 0; j < local_free.size(); ++j)
        if (local >> j & 1u)
          uf.unite(h.local_index(g.edge(local_free[j]).u), h.local_index(g.edge(local_free[j]).v));
      t.feasible[local] = uf.sets() == 1;
    }
    tables.push_back(std::move(t));
  }

  Cost forced_cost = inst.cost_of(forced);
  std::vector<Cost> free_cost;
  for (EdgeId e : free)
    free_cost.push_back(inst.costs[static_cast<std::size_t>(e)]);

  const std::uint32_t total = 1u << free.size();
  Cost best = std::numeric_limits<Cost>::max();
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    Cost cost = forced_cost;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1)
      cost += free_cost[static_cast<std::size_t>(std::countr_zero(rest))];
    if (cost >= best)
      continue;
    bool ok = true;
    for (const HabitatTable &t : tables) {
      std::uint32_t local = 0;
      for (std::size_t j = 0; j < t.bits.size(); ++j)
        local |= (mask >> t.bits[j] & 1u) << j;
      if (!t.feasible[local]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      best = cost;
      best_mask = mask;
    }
  }

  std::vector<EdgeId> f = forced;
  for (std::size_t j = 0; j < free.size(); ++j)
    if (best_mask >> j & 1u)
      f.push_back(free[j]);
  return finish_optimal(inst, std::move(f), start);
}

K4Reduction apply_k4_reduction(const Instance &inst) {
  const Graph &g = inst.graph;
  if (g.max_degree() > 3)
    throw PreconditionError("K4 reduction requires maximum degree three");
  std::vector<int> habitat_count(static_cast<std::size_t>(g.vertex_count()), 0);
  for (std::size_t i = 0; i < inst.habitats.size(); ++i) {
    const Habitat &h = inst.habitats[i];
    if (h.size() != 3 || classify_habitat(g, h) != HabitatShape::Cycle)
      throw PreconditionError("habitat " + std::to_string(i) + " does not induce a triangle");
    for (Vertex v : h.vertices())
      ++habitat_count[static_cast<std::size_t>(v)];
  }

  std::vector<bool> removed(static_cast<std::size_t>(g.vertex_count()), false);
  K4Reduction out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (habitat_count[static_cast<std::size_t>(v)] < 3 || removed[static_cast<std::size_t>(v)])
      continue;
    std::vector<Vertex> closed{v};
    for (const Incidence &inc : g.incident(v))
      closed.push_back(inc.to);
    bool is_k4 = closed.size() == 4;
    for (std::size_t a = 0; is_k4 && a < closed.size(); ++a) {
      if (g.degree(closed[a]) != 3)
        is_k4 = false;
      for (std::size_t b = a + 1; is_k4 && b < closed.size(); ++b)
        if (!g.has_edge(closed[a], closed[b]))
          is_k4 = false;
    }
    if (!is_k4)
      throw IntegrityError("vertex " + std::to_string(v) +
                           " lies in three habitats but its closed neighbourhood is not a K4 component");

    Subgraph sub = induced_subgraph(g, closed);
    std::vector<Cost> sub_costs;
    for (EdgeId e : sub.parent_edge)
      sub_costs.push_back(inst.costs[static_cast<std::size_t>(e)]);
    std::vector<Habitat> sub_habitats;
    Habitat region(closed);
    for (const Habitat &h : inst.habitats) {
      if (!region.contains(h.vertices().front()))
        continue;
      std::vector<Vertex> local;
      for (Vertex w : h.vertices())
        local.push_back(static_cast<Vertex>(
            std::find(sub.parent_vertex.begin(), sub.parent_vertex.end(), w) - sub.parent_vertex.begin()));
      sub_habitats.emplace_back(std::move(local));
    }
    Instance piece = make_instance(sub.graph, std::move(sub_costs), std::move(sub_habitats));
    SolveResult local = solve_brute_force(piece);
    out.removed_cost += local.solution->total_cost;
    for (EdgeId e : local.solution->edges)
      out.removed_solution.push_back(sub.parent_edge[static_cast<std::size_t>(e)]);
    for (Vertex w : closed)
      removed[static_cast<std::size_t>(w)] = true;
  }
  std::sort(out.removed_solution.begin(), out.removed_solution.end());

  std::vector<Vertex> kept;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!removed[static_cast<std::size_t>(v)])
      kept.push_back(v);
  Subgraph rest = induced_subgraph(g, kept);
  out.original_vertex = rest.parent_vertex;
  out.original_edge = rest.parent_edge;
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < kept.size(); ++i)
    local[static_cast<std::size_t>(kept[i])] = static_cast<int>(i);
  std::vector<Cost> costs;
  for (EdgeId e : rest.parent_edge)
    costs.push_back(inst.costs[static_cast<std::size_t>(e)]);
  std::vector<Habitat> habitats;
  for (const Habitat &h : inst.habitats) {
    if (removed[static_cast<std::size_t>(h.vertices().front())])
      continue;
    std::vector<Vertex> vs;
    for (Vertex w : h.vertices())
      vs.push_back(local[static_cast<std::size_t>(w)]);
    habitats.emplace_back(std::move(vs));
  }
  std::optional<Cost> budget;
  if (inst.budget) {
    if (*inst.budget >= out.removed_cost)
      budget = *inst.budget - out.removed_cost;
    else
      out.budget_exhausted = true;
  }
  out.reduced = make_instance(std::move(rest.graph), std::move(costs), std::move(habitats), budget);
  return out;
}

SolveResult solve_k4_mwm(const Instance &inst, const SolveOptions &options) {
  auto start = Clock::now();
  K4Reduction red;
  try {
    red = apply_k4_reduction(inst);
  } catch (const PreconditionError &e) {
    return detail::reject(SolveStatus::UnsupportedHabitats, e.what(), start);
  }
  auto reduced_done = Clock::now();
  SolveResult sub = solve_mwm(red.reduced, options);
  if (!sub.optimal()) {
    sub.wall_time = Clock::now() - start;
    return sub;
  }
  std::vector<EdgeId> f = red.removed_solution;
  for (EdgeId e : sub.solution->edges)
    f.push_back(red.original_edge[static_cast<std::size_t>(e)]);
  SolveResult result = finish_optimal(inst, std::move(f), start);
  result.build_time = (reduced_done - start) + sub.build_time;
  return result;
}

} // namespace gbp
