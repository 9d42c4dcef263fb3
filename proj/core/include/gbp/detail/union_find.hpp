#pragma once

#include <numeric>
#include <vector>

namespace gbp::detail {

class UnionFind {
public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[idx(x)] != x) {
      parent_[idx(x)] = parent_[idx(parent_[idx(x)])];
      x = parent_[idx(x)];
    }
    return x;
  }

  /// Returns false when a and b were already joined.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (a > b)
      std::swap(a, b);
    parent_[idx(b)] = a;
    --sets_;
    return true;
  }

  int sets() const { return sets_; }

private:
  static std::size_t idx(int x) { return static_cast<std::size_t>(x); }
  std::vector<int> parent_;
  int sets_;
};

} // namespace gbp::detail
