#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbp/deadline.hpp"
#include "gbp/graph.hpp"

namespace gbp {

/// Feasible marks a completed heuristic run whose result carries no optimality proof.
enum class SolveStatus { Optimal, Feasible, TimeoutIncumbent, InfeasibleInput, UnsupportedHabitats };

const char *to_string(SolveStatus status);

struct SolveOptions {
  /// Limit on search time; model construction is not counted.
  std::optional<std::chrono::milliseconds> time_limit;
};

struct SolveResult {
  std::optional<Solution> solution;
  SolveStatus status = SolveStatus::Optimal;
  /// Time spent after the model was built.
  std::chrono::nanoseconds wall_time{0};
  /// Model construction before the search starts.
  std::chrono::nanoseconds build_time{0};
  std::optional<Cost> lower_bound;
  std::string message;

  bool optimal() const { return status == SolveStatus::Optimal; }
  std::optional<Cost> cost() const {
    return solution ? std::optional<Cost>(solution->total_cost) : std::nullopt;
  }
};

/// Matching-based exact solver for cycle habitats sharing each edge at most twice.
SolveResult solve_mwm(const Instance &inst, const SolveOptions &options = {});

/// Set-packing exact solver for arbitrary cycle habitats.
SolveResult solve_mwhm(const Instance &inst, const SolveOptions &options = {});

struct GenericTrace {
  std::vector<std::vector<EdgeId>> cuts;
  std::uint64_t nodes = 0;
};

/**
   Branch and cut for arbitrary habitats. Variables are the habitat-covered
   edges; the constraints are the connectivity cuts
     sum over e in delta_H(S) of x(e) >= 1   for all H and nonempty S proper in H,
   separated lazily on integral candidates. Optionally records every cut in
   `trace`.
 */
SolveResult solve_generic(const Instance &inst, const SolveOptions &options = {},
                          GenericTrace *trace = nullptr);

/// delta_H(S) for S the component of G[x][h] holding h's lowest vertex, or
/// nothing when h is connected under x.
std::optional<std::vector<EdgeId>> separate_connectivity_cut(const Instance &inst,
                                                             const std::vector<bool> &x,
                                                             const Habitat &h);

/// Every habitat induces a tree: take every induced edge.
SolveResult solve_tree_habitats(const Instance &inst, const SolveOptions &options = {});

/// Graphs of maximum degree two (disjoint paths and cycles).
SolveResult solve_maxdeg2(const Instance &inst, const SolveOptions &options = {});

struct K4Reduction {
  Instance reduced;
  Cost removed_cost = 0;
  /// reduced vertex / edge -> original vertex / edge
  std::vector<Vertex> original_vertex;
  std::vector<EdgeId> original_edge;
  /// Optimal edges (original ids) chosen inside the removed K4 components.
  std::vector<EdgeId> removed_solution;
  /// The original budget was smaller than removed_cost.
  bool budget_exhausted = false;
};

/**
   For max degree three with triangle habitats: every vertex lying in three
   habitats has a closed neighbourhood forming a K4 component, which is
   deleted and paid for with its locally brute-forced optimum. Throws
   PreconditionError outside that scope and IntegrityError when such a
   neighbourhood is not a K4 component.
 */
K4Reduction apply_k4_reduction(const Instance &inst);

/// apply_k4_reduction followed by solve_mwm, mapped back to the input instance.
SolveResult solve_k4_mwm(const Instance &inst, const SolveOptions &options = {});

/**
   Exhaustive optimum. Edges that are bridges of some G[H] are forced; the
   remaining covered edges (at most 22) are enumerated in ascending bitmask
   order and the first minimum-cost feasible subset wins. Throws GuardError.
 */
SolveResult solve_brute_force(const Instance &inst, const SolveOptions &options = {});

inline constexpr int brute_force_edge_guard = 22;

enum class SolverKind { Mwm, Mwhm, Generic, Apx, Brute, Tree, MaxDeg2, K4Mwm, Auto };

const char *to_string(SolverKind kind);
std::optional<SolverKind> parse_solver_kind(const std::string &name);

/// Most specialised applicable solver: tree, then max-degree-two, then mwm,
/// mwhm and finally generic.
SolverKind choose_solver(const Instance &inst);

SolveResult solve_with(SolverKind kind, const Instance &inst, const SolveOptions &options = {});

/// Budget decision from an optimal result: OPT <= k. Requires inst.budget.
bool decide(const Instance &inst, const SolveResult &result);

} // namespace gbp
