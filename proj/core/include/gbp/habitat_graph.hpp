#pragma once

#include <vector>

#include "gbp/graph.hpp"

namespace gbp {

struct Hyperedge {
  std::vector<int> nodes; // ascending node ids
  Cost weight = 0;
  EdgeId origin = -1;
  bool pendant = false;
};

/**
   Weighted multi-hypergraph over habitat nodes for instances whose habitats
   all induce cycles. Nodes 0..habitat_count-1 stand for the habitats; every
   edge lying in exactly one habitat gets an extra pendant node. A covered
   edge shared by habitats i1..ij becomes the hyperedge {i1..ij}; an edge
   covered by a single habitat i becomes the pendant pair {i, pendant}.
 */
struct HabitatGraph {
  int habitat_count = 0;
  int node_count = 0;
  std::vector<Hyperedge> hyperedges;
  /// Original edge -> hyperedge position, -1 for uncovered or discarded edges.
  std::vector<int> hyperedge_of_edge;
  /// Every habitat-covered edge of the original graph, ascending.
  std::vector<EdgeId> covered;
  /// Edges whose hyperedge was discarded by simplify(); always in the solution.
  std::vector<EdgeId> forced;
  /// For each forced edge, the surviving hyperedge with the same node set.
  std::vector<int> forced_representative;

  Cost covered_cost = 0;
};

struct Matching {
  std::vector<int> hyperedges; // ascending positions
  Cost weight = 0;
};

/// Throws PreconditionError naming the first habitat that does not induce a cycle.
HabitatGraph build_habitat_graph(const Instance &inst);

/// Keeps one maximum-weight hyperedge per distinct node set (lowest index on ties).
HabitatGraph simplify(const HabitatGraph &hg);

/// Throws MatchingError unless m is a valid set of pairwise disjoint hyperedges.
void check_matching(const HabitatGraph &hg, const Matching &m);

Matching make_matching(const HabitatGraph &hg, std::vector<int> hyperedges);

/// F = covered \ origins(m). Throws MatchingError for overlapping hyperedges.
Solution matching_to_solution(const Instance &inst, const HabitatGraph &hg, const Matching &m);

/// Hyperedges whose origin edge is missing from f. Throws PreconditionError
/// when f does not satisfy every habitat.
Matching solution_to_matching(const Instance &inst, const HabitatGraph &hg,
                              std::span<const EdgeId> f);

/// Largest hyperedge cardinality; 2 when every hyperedge is a pendant pair, 0 when empty.
int max_habitats_per_edge(const HabitatGraph &hg);

} // namespace gbp
