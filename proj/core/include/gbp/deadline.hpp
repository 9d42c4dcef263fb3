#pragma once

#include <chrono>
#include <optional>

namespace gbp {

using Clock = std::chrono::steady_clock;

/// Cooperative time limit polled by search loops.
class Deadline {
public:
  Deadline() = default;
  static Deadline never() { return Deadline(); }
  static Deadline after(std::chrono::milliseconds budget) {
    Deadline d;
    d.at_ = Clock::now() + budget;
    return d;
  }

  bool bounded() const { return at_.has_value(); }
  bool expired() const { return at_ && Clock::now() >= *at_; }

private:
  std::optional<Clock::time_point> at_;
};

} // namespace gbp
