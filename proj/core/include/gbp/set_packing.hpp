#pragma once

#include <cstdint>

#include "gbp/deadline.hpp"
#include "gbp/habitat_graph.hpp"

namespace gbp {

struct PackingResult {
  Matching matching;
  bool timed_out = false;
  /// Proven upper bound on the optimum; equals matching.weight when not timed out.
  Cost upper_bound = 0;
  std::uint64_t nodes_explored = 0;
};

/**
   Exact maximum-weight set packing over the hyperedges of a (simplified)
   habitat graph, i.e. the 0/1 program
     max sum w(e) x(e)  s.t.  sum over e containing v of x(e) <= 1.

   Before searching, hyperedges whose nodes outside their private nodes
   coincide are reduced to the heaviest one, and the conflict graph is split
   into independent components. Each component is solved by depth-first
   branch and bound: branch on the heaviest undecided hyperedge (include it
   and drop its conflicts, or exclude it); prune with the fractional bound in
   which each node contributes its best incident undecided w(e)/|e|.

   On deadline expiry the best incumbent is returned with timed_out set.
 */
PackingResult max_weight_set_packing(const HabitatGraph &hg, const Deadline &deadline = Deadline::never());

/// Exhaustive optimum; throws GuardError above 20 hyperedges.
Matching brute_force_set_packing(const HabitatGraph &hg);

} // namespace gbp
