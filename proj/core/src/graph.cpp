#include "gbp/graph.hpp"

#include <algorithm>
#include <string>

#include "gbp/errors.hpp"

namespace gbp {

Graph::Graph(int vertex_count) {
  if (vertex_count < 0)
    throw InputError("negative vertex count");
  adjacency_.resize(static_cast<std::size_t>(vertex_count));
}

Graph::Graph(int vertex_count, std::span<const Edge> edges) : Graph(vertex_count) {
  edges_.reserve(edges.size());
  for (const Edge &e : edges)
    add_edge(e.u, e.v);
}

Vertex Graph::add_vertex() {
  adjacency_.emplace_back();
  return vertex_count() - 1;
}

std::uint64_t Graph::key(Vertex u, Vertex v) {
  if (u > v)
    std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

EdgeId Graph::add_edge(Vertex u, Vertex v) {
  if (!valid_vertex(u) || !valid_vertex(v))
    throw InputError("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
  if (u == v)
    throw InputError("self-loop at vertex " + std::to_string(u));
  auto [it, inserted] = lookup_.emplace(key(u, v), edge_count());
  if (!inserted)
    throw InputError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  EdgeId id = edge_count();
  edges_.push_back({u, v});
  adjacency_[static_cast<std::size_t>(u)].push_back({v, id});
  adjacency_[static_cast<std::size_t>(v)].push_back({u, id});
  return id;
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto &adj : adjacency_)
    best = std::max(best, static_cast<int>(adj.size()));
  return best;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  auto it = lookup_.find(key(u, v));
  if (it == lookup_.end())
    return std::nullopt;
  return it->second;
}

Habitat::Habitat(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  if (vertices_.size() < 2)
    throw InputError("habitat must contain at least two vertices");
  if (vertices_.front() < 0)
    throw InputError("negative vertex in habitat");
}

bool Habitat::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

int Habitat::local_index(Vertex v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v)
    return -1;
  return static_cast<int>(it - vertices_.begin());
}

void Instance::validate() const {
  if (static_cast<int>(costs.size()) != graph.edge_count())
    throw InputError("cost vector has " + std::to_string(costs.size()) + " entries for " +
                     std::to_string(graph.edge_count()) + " edges");
  for (std::size_t e = 0; e < costs.size(); ++e)
    if (costs[e] < 1)
      throw InputError("edge " + std::to_string(e) + " has non-positive cost");
  for (std::size_t i = 0; i < habitats.size(); ++i)
    for (Vertex v : habitats[i].vertices())
      if (!graph.valid_vertex(v))
        throw InputError("habitat " + std::to_string(i) + " references vertex " +
                         std::to_string(v));
  if (budget && *budget < 0)
    throw InputError("negative budget");
}

Cost Instance::cost_of(std::span<const EdgeId> edges) const {
  Cost total = 0;
  for (EdgeId e : edges) {
    if (!graph.valid_edge(e))
      throw InputError("edge index out of range: " + std::to_string(e));
    total += costs[static_cast<std::size_t>(e)];
  }
  return total;
}

Instance make_instance(Graph graph, std::vector<Cost> costs, std::vector<Habitat> habitats,
                       std::optional<Cost> budget) {
  Instance inst{std::move(graph), std::move(costs), std::move(habitats), budget};
  inst.validate();
  return inst;
}

Solution Solution::from_edges(const Instance &inst, std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Cost total = inst.cost_of(edges);
  return Solution{std::move(edges), total};
}

Subgraph induced_subgraph(const Graph &g, std::span<const Vertex> vs) {
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  Subgraph sub;
  for (Vertex v : vs) {
    if (!g.valid_vertex(v))
      throw InputError("vertex index out of range: " + std::to_string(v));
    if (local[static_cast<std::size_t>(v)] >= 0)
      continue;
    local[static_cast<std::size_t>(v)] = static_cast<int>(sub.parent_vertex.size());
    sub.parent_vertex.push_back(v);
  }
  sub.graph = Graph(static_cast<int>(sub.parent_vertex.size()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge &ed = g.edge(e);
    int a = local[static_cast<std::size_t>(ed.u)];
    int b = local[static_cast<std::size_t>(ed.v)];
    if (a >= 0 && b >= 0) {
      sub.graph.add_edge(a, b);
      sub.parent_edge.push_back(e);
    }
  }
  return sub;
}

Subgraph edge_induced_subgraph(const Graph &g, std::span<const EdgeId> edges) {
  std::vector<EdgeId> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  Subgraph sub;
  auto localize = [&](Vertex v) {
    int &slot = local[static_cast<std::size_t>(v)];
    if (slot < 0) {
      slot = static_cast<int>(sub.parent_vertex.size());
      sub.parent_vertex.push_back(v);
    }
    return slot;
  };
  std::vector<Edge> local_edges;
  for (EdgeId e : sorted) {
    if (!g.valid_edge(e))
      throw InputError("edge index out of range: " + std::to_string(e));
    const Edge &ed = g.edge(e);
    int a = localize(ed.u);
    int b = localize(ed.v);
    local_edges.push_back({a, b});
    sub.parent_edge.push_back(e);
  }
  sub.graph = Graph(static_cast<int>(sub.parent_vertex.size()), local_edges);
  return sub;
}

std::vector<EdgeId> habitat_edges(const Graph &g, const Habitat &h) {
  std::vector<EdgeId> out;
  for (Vertex v : h.vertices()) {
    if (!g.valid_vertex(v))
      throw InputError("habitat vertex out of range: " + std::to_string(v));
    for (const Incidence &inc : g.incident(v))
      if (v < inc.to && h.contains(inc.to))
        out.push_back(inc.edge);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeId> covered_edges(const Instance &inst) {
  std::vector<bool> seen(static_cast<std::size_t>(inst.graph.edge_count()), false);
  for (const Habitat &h : inst.habitats)
    for (EdgeId e : habitat_edges(inst.graph, h))
      seen[static_cast<std::size_t>(e)] = true;
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e)
    if (seen[static_cast<std::size_t>(e)])
      out.push_back(e);
  return out;
}

std::vector<bool> edge_mask(const Graph &g, std::span<const EdgeId> edges) {
  std::vector<bool> mask(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId e : edges) {
    if (!g.valid_edge(e))
      throw InputError("edge index out of range: " + std::to_string(e));
    mask[static_cast<std::size_t>(e)] = true;
  }
  return mask;
}

namespace {

// Traversal from the first habitat vertex through edges accepted by `usable`.
template <typename Usable>
bool habitat_traversal_connected(const Graph &g, const Habitat &h, Usable usable) {
  auto vs = h.vertices();
  std::vector<bool> reached(vs.size(), false);
  std::vector<int> stack{0};
  reached[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (const Incidence &inc : g.incident(vs[static_cast<std::size_t>(i)])) {
      if (!usable(inc.edge))
        continue;
      int j = h.local_index(inc.to);
      if (j < 0 || reached[static_cast<std::size_t>(j)])
        continue;
      reached[static_cast<std::size_t>(j)] = true;
      ++count;
      stack.push_back(j);
    }
  }
  return count == vs.size();
}

} // namespace

bool is_connected_on(const Graph &g, const std::vector<bool> &in_f, const Habitat &h) {
  for (Vertex v : h.vertices())
    if (!g.valid_vertex(v))
      throw InputError("habitat vertex out of range: " + std::to_string(v));
  return habitat_traversal_connected(
      g, h, [&](EdgeId e) { return in_f[static_cast<std::size_t>(e)]; });
}

bool is_connected_on(const Graph &g, std::span<const EdgeId> f, const Habitat &h) {
  return is_connected_on(g, edge_mask(g, f), h);
}

bool habitat_connected(const Graph &g, const Habitat &h) {
  return habitat_traversal_connected(g, h, [](EdgeId) { return true; });
}

Verification verify_solution(const Instance &inst, const Solution &sol) {
  Cost recomputed = inst.cost_of(sol.edges);
  if (recomputed != sol.total_cost)
    throw IntegrityError("solution claims cost " + std::to_string(sol.total_cost) +
                         " but its edges cost " + std::to_string(recomputed));
  auto mask = edge_mask(inst.graph, sol.edges);
  Verification out;
  out.feasible = std::all_of(inst.habitats.begin(), inst.habitats.end(), [&](const Habitat &h) {
    return is_connected_on(inst.graph, mask, h);
  });
  out.within_budget = !inst.budget || recomputed <= *inst.budget;
  return out;
}

const char *to_string(HabitatShape shape) {
  switch (shape) {
  case HabitatShape::P2:
    return "P2";
  case HabitatShape::Tree:
    return "Tree";
  case HabitatShape::Cycle:
    return "Cycle";
  case HabitatShape::Other:
    return "Other";
  }
  return "?";
}

HabitatShape classify_habitat(const Graph &g, const Habitat &h) {
  auto edges = habitat_edges(g, h);
  const std::size_t n = h.size();
  if (!habitat_connected(g, h))
    return HabitatShape::Other;
  if (n == 2 && edges.size() == 1)
    return HabitatShape::P2;
  if (edges.size() + 1 == n)
    return HabitatShape::Tree;
  if (edges.size() == n) {
    std::vector<int> deg(n, 0);
    for (EdgeId e : edges) {
      ++deg[static_cast<std::size_t>(h.local_index(g.edge(e).u))];
      ++deg[static_cast<std::size_t>(h.local_index(g.edge(e).v))];
    }
    if (std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; }))
      return HabitatShape::Cycle;
  }
  return HabitatShape::Other;
}

std::vector<int> connected_components(const Graph &g, int *count) {
  std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), -1);
  int next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0)
      continue;
    label[static_cast<std::size_t>(s)] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (const Incidence &inc : g.incident(v))
        if (label[static_cast<std::size_t>(inc.to)] < 0) {
          label[static_cast<std::size_t>(inc.to)] = next;
          stack.push_back(inc.to);
        }
    }
    ++next;
  }
  if (count)
    *count = next;
  return label;
}

} // namespace gbp
