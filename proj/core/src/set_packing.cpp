#include "gbp/set_packing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "gbp/errors.hpp"

namespace gbp {

namespace {

struct Item {
  int origin; // position in hg.hyperedges
  Cost weight;
  std::vector<int> nodes;
};

class ComponentSearch {
public:
  ComponentSearch(const std::vector<Item> &items, std::vector<int> members, int node_count,
                  const Deadline &deadline, std::uint64_t &nodes_explored)
      : items_(items), members_(std::move(members)), deadline_(deadline),
        nodes_explored_(nodes_explored), node_best_(static_cast<std::size_t>(node_count), 0.0) {
    std::stable_sort(members_.begin(), members_.end(), [&](int a, int b) {
      return items_[static_cast<std::size_t>(a)].weight > items_[static_cast<std::size_t>(b)].weight;
    });
    const std::size_t k = members_.size();
    local_.reserve(k);
    std::map<int, std::vector<int>> by_node;
    for (std::size_t i = 0; i < k; ++i)
      for (int v : items_[static_cast<std::size_t>(members_[i])].nodes)
        by_node[v].push_back(static_cast<int>(i));
    conflicts_.resize(k);
    for (auto &[v, list] : by_node)
      for (int a : list)
        for (int b : list)
          if (a != b)
            conflicts_[static_cast<std::size_t>(a)].push_back(b);
    for (auto &c : conflicts_) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    state_.assign(k, 0);
  }

  void solve() {
    // Greedy incumbent in weight order.
    std::vector<int> taken(members_.size(), 0);
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (taken[i] != 0)
        continue;
      taken[i] = 1;
      best_weight_ += weight(static_cast<int>(i));
      best_.push_back(static_cast<int>(i));
      for (int c : conflicts_[i])
        if (taken[static_cast<std::size_t>(c)] == 0)
          taken[static_cast<std::size_t>(c)] = 2;
    }
    root_bound_ = static_cast<Cost>(std::floor(bound(0) + 1e-9));
    std::vector<int> chosen;
    dfs(0, 0, chosen);
  }

  bool timed_out() const { return timed_out_; }
  Cost best_weight() const { return best_weight_; }
  Cost upper_bound() const { return timed_out_ ? std::max(root_bound_, best_weight_) : best_weight_; }
  std::vector<int> best_origins() const {
    std::vector<int> out;
    for (int i : best_)
      out.push_back(items_[static_cast<std::size_t>(members_[static_cast<std::size_t>(i)])].origin);
    return out;
  }

private:
  Cost weight(int i) const {
    return items_[static_cast<std::size_t>(members_[static_cast<std::size_t>(i)])].weight;
  }

  double bound(Cost current) {
    Cost remaining = 0;
    touched_.clear();
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (state_[i] != 0)
        continue;
      const Item &it = items_[static_cast<std::size_t>(members_[i])];
      remaining += it.weight;
      double share = static_cast<double>(it.weight) / static_cast<double>(it.nodes.size());
      for (int v : it.nodes) {
        double &slot = node_best_[static_cast<std::size_t>(v)];
        if (slot == 0.0)
          touched_.push_back(v);
        slot = std::max(slot, share);
      }
    }
    double fractional = 0.0;
    for (int v : touched_) {
      fractional += node_best_[static_cast<std::size_t>(v)];
      node_best_[static_cast<std::size_t>(v)] = 0.0;
    }
    return static_cast<double>(current) + std::min(fractional, static_cast<double>(remaining));
  }

  void dfs(std::size_t from, Cost current, std::vector<int> &chosen) {
    if (timed_out_)
      return;
    if ((++nodes_explored_ & 1023u) == 0 && deadline_.expired()) {
      timed_out_ = true;
      return;
    }
    while (from < members_.size() && state_[from] != 0)
      ++from;
    if (from == members_.size()) {
      if (current > best_weight_) {
        best_weight_ = current;
        best_ = chosen;
      }
      return;
    }
    if (static_cast<Cost>(std::floor(bound(current) + 1e-9)) <= best_weight_)
      return;

    // Include the heaviest undecided hyperedge.
    std::vector<int> blocked;
    state_[from] = 1;
    for (int c : conflicts_[from])
      if (state_[static_cast<std::size_t>(c)] == 0) {
        state_[static_cast<std::size_t>(c)] = 2;
        blocked.push_back(c);
      }
    chosen.push_back(static_cast<int>(from));
    dfs(from + 1, current + weight(static_cast<int>(from)), chosen);
    chosen.pop_back();
    for (int c : blocked)
      state_[static_cast<std::size_t>(c)] = 0;

    // Exclude it.
    state_[from] = 2;
    dfs(from + 1, current, chosen);
    state_[from] = 0;
  }

  const std::vector<Item> &items_;
  std::vector<int> members_;
  const Deadline &deadline_;
  std::uint64_t &nodes_explored_;
  std::vector<int> local_;
  std::vector<std::vector<int>> conflicts_;
  std::vector<char> state_; // 0 undecided, 1 chosen, 2 excluded
  std::vector<double> node_best_;
  std::vector<int> touched_;
  std::vector<int> best_;
  Cost best_weight_ = 0;
  Cost root_bound_ = 0;
  bool timed_out_ = false;
};

// Drops hyperedges dominated by a heavier one with the same shared nodes.
// Nodes covered by a single hyperedge never cause conflicts, so two
// hyperedges agreeing on their remaining nodes are interchangeable.
std::vector<Item> reduce(const HabitatGraph &hg) {
  std::vector<Item> items;
  for (std::size_t i = 0; i < hg.hyperedges.size(); ++i)
    items.push_back({static_cast<int>(i), hg.hyperedges[i].weight, hg.hyperedges[i].nodes});

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> degree(static_cast<std::size_t>(hg.node_count), 0);
    for (const Item &it : items)
      for (int v : it.nodes)
        ++degree[static_cast<std::size_t>(v)];
    std::map<std::vector<int>, std::size_t> keep;
    std::vector<bool> drop(items.size(), false);
    for (std::size_t i = 0; i < items.size(); ++i) {
      std::vector<int> shared;
      for (int v : items[i].nodes)
        if (degree[static_cast<std::size_t>(v)] > 1)
          shared.push_back(v);
      if (shared.empty())
        continue;
      auto [pos, inserted] = keep.emplace(std::move(shared), i);
      if (inserted)
        continue;
      std::size_t &held = pos->second;
      if (items[i].weight > items[held].weight) {
        drop[held] = true;
        held = i;
      } else {
        drop[i] = true;
      }
      changed = true;
    }
    if (changed) {
      std::vector<Item> next;
      for (std::size_t i = 0; i < items.size(); ++i)
        if (!drop[i])
          next.push_back(std::move(items[i]));
      items = std::move(next);
    }
  }
  return items;
}

} // namespace

PackingResult max_weight_set_packing(const HabitatGraph &hg, const Deadline &deadline) {
  PackingResult result;
  std::vector<Item> items = reduce(hg);

  // Components of the conflict structure via union-find over nodes.
  std::vector<int> parent(static_cast<std::size_t>(hg.node_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const Item &it : items)
    for (std::size_t j = 1; j < it.nodes.size(); ++j) {
      int a = find(it.nodes[0]);
      int b = find(it.nodes[j]);
      if (a != b)
        parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::map<int, std::vector<int>> components;
  for (std::size_t i = 0; i < items.size(); ++i)
    components[find(items[i].nodes.front())].push_back(static_cast<int>(i));

  std::vector<int> picked;
  for (auto &[root, members] : components) {
    ComponentSearch search(items, std::move(members), hg.node_count, deadline,
                           result.nodes_explored);
    search.solve();
    result.timed_out = result.timed_out || search.timed_out();
    result.upper_bound += search.upper_bound();
    for (int origin : search.best_origins())
      picked.push_back(origin);
  }
  result.matching = make_matching(hg, std::move(picked));
  if (!result.timed_out)
    result.upper_bound = result.matching.weight;
  return result;
}

Matching brute_force_set_packing(const HabitatGraph &hg) {
  constexpr std::size_t guard = 20;
  if (hg.hyperedges.size() > guard)
    throw GuardError("brute-force set packing refuses " + std::to_string(hg.hyperedges.size()) +
                     " hyperedges (limit " + std::to_string(guard) + ")");
  const std::size_t k = hg.hyperedges.size();
  Matching best;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<bool> used(static_cast<std::size_t>(hg.node_count), false);
    Cost weight = 0;
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (!(mask >> i & 1u))
        continue;
      for (int v : hg.hyperedges[i].nodes) {
        if (used[static_cast<std::size_t>(v)]) {
          ok = false;
          break;
        }
        used[static_cast<std::size_t>(v)] = true;
      }
      weight += hg.hyperedges[i].weight;
    }
    if (ok && weight > best.weight) {
      best.weight = weight;
      best.hyperedges.clear();
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1u)
          best.hyperedges.push_back(static_cast<int>(i));
    }
  }
  return best;
}

} // namespace gbp
