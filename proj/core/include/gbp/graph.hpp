#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace gbp {

using Vertex = int;
using EdgeId = int;
using Cost = std::int64_t;

struct Edge {
  Vertex u;
  Vertex v;

  Vertex other(Vertex w) const { return w == u ? v : u; }
  friend bool operator==(const Edge &, const Edge &) = default;
};

struct Incidence {
  Vertex to;
  EdgeId edge;
};

/**
   Undirected simple graph. The position of an edge in the edge list is its
   identity; every module exchanges edge indices, never endpoint pairs.
 */
class Graph {
public:
  Graph() = default;
  explicit Graph(int vertex_count);

  /// Throws InputError on self-loops, duplicate pairs or bad endpoints.
  Graph(int vertex_count, std::span<const Edge> edges);

  Vertex add_vertex();
  EdgeId add_edge(Vertex u, Vertex v);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Edge &edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Incidence> incident(Vertex v) const {
    return adjacency_.at(static_cast<std::size_t>(v));
  }
  int degree(Vertex v) const { return static_cast<int>(incident(v).size()); }
  int max_degree() const;

  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }

  bool valid_vertex(Vertex v) const { return v >= 0 && v < vertex_count(); }
  bool valid_edge(EdgeId e) const { return e >= 0 && e < edge_count(); }

private:
  static std::uint64_t key(Vertex u, Vertex v);

  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::unordered_map<std::uint64_t, EdgeId> lookup_;
};

/// Sorted, duplicate-free vertex set of size at least two.
class Habitat {
public:
  explicit Habitat(std::vector<Vertex> vertices);

  std::span<const Vertex> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool contains(Vertex v) const;
  /// Position of v in vertices(), or -1.
  int local_index(Vertex v) const;

  friend bool operator==(const Habitat &, const Habitat &) = default;

private:
  std::vector<Vertex> vertices_;
};

struct Instance {
  Graph graph;
  std::vector<Cost> costs;
  std::vector<Habitat> habitats;
  std::optional<Cost> budget;

  /// Checks cost vector length, positivity, habitat indices and budget sign.
  void validate() const;
  Cost cost_of(std::span<const EdgeId> edges) const;
};

Instance make_instance(Graph graph, std::vector<Cost> costs, std::vector<Habitat> habitats,
                       std::optional<Cost> budget = std::nullopt);

struct Solution {
  std::vector<EdgeId> edges; // sorted, unique
  Cost total_cost = 0;

  static Solution from_edges(const Instance &inst, std::vector<EdgeId> edges);
  friend bool operator==(const Solution &, const Solution &) = default;
};

/// A subgraph together with the maps back into its parent graph.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> parent_vertex;
  std::vector<EdgeId> parent_edge;
};

Subgraph induced_subgraph(const Graph &g, std::span<const Vertex> vs);
Subgraph edge_induced_subgraph(const Graph &g, std::span<const EdgeId> edges);

/// Edges of G[h], ascending.
std::vector<EdgeId> habitat_edges(const Graph &g, const Habitat &h);

/// Union over all habitats of E(G[H]), ascending.
std::vector<EdgeId> covered_edges(const Instance &inst);

std::vector<bool> edge_mask(const Graph &g, std::span<const EdgeId> edges);

bool is_connected_on(const Graph &g, const std::vector<bool> &in_f, const Habitat &h);
bool is_connected_on(const Graph &g, std::span<const EdgeId> f, const Habitat &h);

/// Connectivity of G[h] itself (all edges available).
bool habitat_connected(const Graph &g, const Habitat &h);

struct Verification {
  bool feasible = false;
  bool within_budget = false;
};

/// Throws IntegrityError when sol.total_cost disagrees with the edge costs.
Verification verify_solution(const Instance &inst, const Solution &sol);

enum class HabitatShape { P2, Tree, Cycle, Other };

const char *to_string(HabitatShape shape);
HabitatShape classify_habitat(const Graph &g, const Habitat &h);

/// Component label per vertex, labels dense from 0 in order of lowest vertex.
std::vector<int> connected_components(const Graph &g, int *count = nullptr);

} // namespace gbp
