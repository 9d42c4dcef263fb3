#include "gbp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gbp/errors.hpp"

namespace gbp {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0)
    throw InputError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

bool operator<(const Rational &a, const Rational &b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

Rational intersection_rate(const Instance &inst) {
  std::int64_t incidences = 0;
  for (const Habitat &h : inst.habitats)
    incidences += static_cast<std::int64_t>(habitat_edges(inst.graph, h).size());
  auto distinct = static_cast<std::int64_t>(covered_edges(inst).size());
  if (distinct == 0)
    throw UndefinedMetricError("intersection rate needs at least one covered edge");
  return Rational(incidences, distinct);
}

Ratios compute_ratios(Cost apx_cost, Cost opt_cost, int r, std::size_t opt_edge_count) {
  if (r < 1)
    throw InputError("ratios need at least one habitat");
  if (opt_cost <= 0)
    throw IntegrityError("optimum cost " + std::to_string(opt_cost) + " with " +
                         std::to_string(r) + " habitats");
  if (opt_edge_count == 0)
    throw InputError("optimal edge set is empty");
  auto f = static_cast<std::int64_t>(opt_edge_count);
  return {Rational(apx_cost, opt_cost), Rational((apx_cost - opt_cost) * f, opt_cost * r)};
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty())
    return s;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0;
    for (double v : values)
      sq += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

} // namespace gbp
