#pragma once

#include <optional>
#include <string>

#include "gbp/solvers.hpp"

namespace gbp::detail {

inline std::optional<std::size_t> first_disconnected_habitat(const Instance &inst) {
  for (std::size_t i = 0; i < inst.habitats.size(); ++i)
    if (!habitat_connected(inst.graph, inst.habitats[i]))
      return i;
  return std::nullopt;
}

inline SolveResult reject(SolveStatus status, std::string message, Clock::time_point start) {
  SolveResult r;
  r.status = status;
  r.message = std::move(message);
  r.wall_time = Clock::now() - start;
  return r;
}

inline Deadline deadline_from(const SolveOptions &options) {
  return options.time_limit ? Deadline::after(*options.time_limit) : Deadline::never();
}

} // namespace gbp::detail
