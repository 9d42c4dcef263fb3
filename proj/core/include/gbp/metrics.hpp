#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "gbp/graph.hpp"

namespace gbp {

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend bool operator==(const Rational &, const Rational &) = default;
  friend bool operator<(const Rational &a, const Rational &b);
  friend bool operator<=(const Rational &a, const Rational &b) { return !(b < a); }

private:
  std::int64_t num_;
  std::int64_t den_;
};

/// Habitat-induced edge incidences over distinct covered edges.
/// Throws UndefinedMetricError when no edge is covered.
Rational intersection_rate(const Instance &inst);

struct Ratios {
  Rational quality;  // apx / opt
  Rational additive; // (apx - opt) / (d r), d = opt / |F*|
};

/// Throws IntegrityError for opt <= 0 while habitats exist, InputError for
/// r < 1 or an empty optimal edge set.
Ratios compute_ratios(Cost apx_cost, Cost opt_cost, int r, std::size_t opt_edge_count);

struct Summary {
  std::size_t count = 0;
  double min = 0;
  double max = 0;
  double mean = 0;
  double sd = 0; // sample standard deviation, 0 for fewer than two values
};

Summary summarize(std::span<const double> values);

} // namespace gbp
