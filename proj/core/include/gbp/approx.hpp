#pragma once

#include <vector>

#include "gbp/solvers.hpp"

namespace gbp {

/// Minimum spanning tree of G[h], ties broken by edge index. Throws
/// PreconditionError when G[h] is disconnected.
std::vector<EdgeId> mst_on_induced(const Graph &g, std::span<const Cost> costs, const Habitat &h);

/// Union of per-habitat minimum spanning trees. On instances whose habitats
/// induce cycles the cost is at most OPT + r * max edge cost.
SolveResult solve_apx(const Instance &inst, const SolveOptions &options = {});

} // namespace gbp
