#pragma once

#include <vector>

#include "gbp/graph.hpp"

namespace gbp {

struct WeightedEdge {
  int u;
  int v;
  Cost weight;
};

/// Simple undirected graph with positive integer edge weights.
struct WeightedGraph {
  int node_count = 0;
  std::vector<WeightedEdge> edges;

  void validate() const;
};

struct GraphMatching {
  std::vector<int> edges; // ascending indices into WeightedGraph::edges
  Cost weight = 0;
};

/**
   Maximum-weight matching in a general graph (Edmonds' blossom algorithm,
   primal-dual, O(n^3)). Not necessarily of maximum cardinality. All dual
   arithmetic is exact: weights are doubled internally so that every dual
   update stays integral.
 */
GraphMatching max_weight_matching(const WeightedGraph &wg);

/// Exhaustive optimum; throws GuardError above 25 edges.
GraphMatching brute_force_matching(const WeightedGraph &wg);

bool is_matching(const WeightedGraph &wg, const std::vector<int> &edges);

} // namespace gbp
