#include "gbp/solvers.hpp"

#include <array>
#include <utility>

#include "gbp/approx.hpp"
#include "gbp/errors.hpp"

namespace gbp {

const char *to_string(SolveStatus status) {
  switch (status) {
  case SolveStatus::Optimal:
    return "optimal";
  case SolveStatus::Feasible:
    return "feasible";
  case SolveStatus::TimeoutIncumbent:
    return "timeout_incumbent";
  case SolveStatus::InfeasibleInput:
    return "infeasible_input";
  case SolveStatus::UnsupportedHabitats:
    return "unsupported_habitats";
  }
  return "unknown";
}

namespace {

constexpr std::array<std::pair<SolverKind, const char *>, 9> kind_names{{
    {SolverKind::Mwm, "mwm"},
    {SolverKind::Mwhm, "mwhm"},
    {SolverKind::Generic, "generic"},
    {SolverKind::Apx, "apx"},
    {SolverKind::Brute, "brute"},
    {SolverKind::Tree, "tree"},
    {SolverKind::MaxDeg2, "maxdeg2"},
    {SolverKind::K4Mwm, "k4mwm"},
    {SolverKind::Auto, "auto"},
}};

} // namespace

const char *to_string(SolverKind kind) {
  for (const auto &[k, name] : kind_names)
    if (k == kind)
      return name;
  return "unknown";
}

std::optional<SolverKind> parse_solver_kind(const std::string &name) {
  for (const auto &[k, n] : kind_names)
    if (name == n)
      return k;
  return std::nullopt;
}

SolverKind choose_solver(const Instance &inst) {
  const Graph &g = inst.graph;
  bool trees = true;
  bool cycles = true;
  for (const Habitat &h : inst.habitats) {
    switch (classify_habitat(g, h)) {
    case HabitatShape::P2:
    case HabitatShape::Tree:
      cycles = false;
      break;
    case HabitatShape::Cycle:
      trees = false;
      break;
    case HabitatShape::Other:
      if (!habitat_connected(g, h))
        return SolverKind::Generic;
      trees = cycles = false;
      break;
    }
  }
  if (trees)
    return SolverKind::Tree;
  if (g.max_degree() <= 2)
    return SolverKind::MaxDeg2;
  if (!cycles)
    return SolverKind::Generic;
  std::vector<int> sharing(static_cast<std::size_t>(g.edge_count()), 0);
  for (const Habitat &h : inst.habitats)
    for (EdgeId e : habitat_edges(g, h))
      if (++sharing[static_cast<std::size_t>(e)] > 2)
        return SolverKind::Mwhm;
  return SolverKind::Mwm;
}

SolveResult solve_with(SolverKind kind, const Instance &inst, const SolveOptions &options) {
  switch (kind) {
  case SolverKind::Mwm:
    return solve_mwm(inst, options);
  case SolverKind::Mwhm:
    return solve_mwhm(inst, options);
  case SolverKind::Generic:
    return solve_generic(inst, options);
  case SolverKind::Apx:
    return solve_apx(inst, options);
  case SolverKind::Brute:
    return solve_brute_force(inst, options);
  case SolverKind::Tree:
    return solve_tree_habitats(inst, options);
  case SolverKind::MaxDeg2:
    return solve_maxdeg2(inst, options);
  case SolverKind::K4Mwm:
    return solve_k4_mwm(inst, options);
  case SolverKind::Auto:
    return solve_with(choose_solver(inst), inst, options);
  }
  throw InputError("unknown solver kind");
}

bool decide(const Instance &inst, const SolveResult &result) {
  if (!inst.budget)
    throw PreconditionError("instance has no budget");
  const Cost k = *inst.budget;
  if (result.status == SolveStatus::InfeasibleInput)
    return false;
  if (result.solution && result.solution->total_cost <= k)
    return true;
  if (result.optimal())
    return false;
  if (result.lower_bound && *result.lower_bound > k)
    return false;
  throw PreconditionError(std::string("cannot decide the budget from a ") +
                          to_string(result.status) + " result");
}

} // namespace gbp
