#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "gbp/approx.hpp"
#include "gbp/detail/solve_util.hpp"
#include "gbp/detail/union_find.hpp"
#include "gbp/solvers.hpp"

namespace gbp {

std::optional<std::vector<EdgeId>> separate_connectivity_cut(const Instance &inst,
                                                             const std::vector<bool> &x,
                                                             const Habitat &h) {
  const Graph &g = inst.graph;
  auto vs = h.vertices();
  std::vector<bool> in_s(vs.size(), false);
  std::vector<int> stack{0};
  in_s[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (const Incidence &inc : g.incident(vs[static_cast<std::size_t>(i)])) {
      if (!x[static_cast<std::size_t>(inc.edge)])
        continue;
      int j = h.local_index(inc.to);
      if (j < 0 || in_s[static_cast<std::size_t>(j)])
        continue;
      in_s[static_cast<std::size_t>(j)] = true;
      ++reached;
      stack.push_back(j);
    }
  }
  if (reached == vs.size())
    return std::nullopt;
  std::vector<EdgeId> cut;
  for (EdgeId e : habitat_edges(g, h)) {
    bool a = in_s[static_cast<std::size_t>(h.local_index(g.edge(e).u))];
    bool b = in_s[static_cast<std::size_t>(h.local_index(g.edge(e).v))];
    if (a != b)
      cut.push_back(e);
  }
  return cut;
}

namespace {

// Exact search over the covered edges of one group of habitats that share
// edges only among themselves.
class BranchAndCut {
  struct Split {
    int size = 0;
    std::vector<int> vars;
    std::vector<std::pair<int, int>> ends; // local endpoints within the habitat
    std::vector<double> share;
    std::vector<int> order; // by share
  };

public:
  BranchAndCut(const Instance &inst, std::vector<int> habitats, std::vector<EdgeId> vars,
               GenericTrace *trace)
      : inst_(&inst), habitats_(std::move(habitats)), vars_(std::move(vars)), trace_(trace) {
    const auto m = static_cast<std::size_t>(inst.graph.edge_count());
    local_.assign(m, -1);
    for (std::size_t i = 0; i < vars_.size(); ++i)
      local_[static_cast<std::size_t>(vars_[i])] = static_cast<int>(i);
    value_.assign(vars_.size(), -1);
    x_one_.assign(m, false);
    x_open_.assign(m, false);
    for (EdgeId e : vars_)
      x_open_[static_cast<std::size_t>(e)] = true;

    // Star cuts delta_H({v}) seed the pool.
    for (int hi : habitats_) {
      const Habitat &h = inst.habitats[static_cast<std::size_t>(hi)];
      for (Vertex v : h.vertices()) {
        std::vector<EdgeId> star;
        for (const Incidence &inc : inst.graph.incident(v))
          if (h.contains(inc.to))
            star.push_back(inc.edge);
        add_cut(star);
      }
    }

    for (int hi : habitats_) {
      const Habitat &h = inst.habitats[static_cast<std::size_t>(hi)];
      Split split;
      split.size = static_cast<int>(h.size());
      for (EdgeId e : habitat_edges(inst.graph, h)) {
        split.vars.push_back(local_[static_cast<std::size_t>(e)]);
        split.ends.emplace_back(h.local_index(inst.graph.edge(e).u),
                                h.local_index(inst.graph.edge(e).v));
      }
      splits_.push_back(std::move(split));
    }
    in_union_.assign(vars_.size(), 0);
    init_shares();

    // Spanning-tree union as the first incumbent.
    std::vector<EdgeId> f;
    for (int hi : habitats_) {
      auto tree = mst_on_induced(inst.graph, inst.costs, inst.habitats[static_cast<std::size_t>(hi)]);
      f.insert(f.end(), tree.begin(), tree.end());
    }
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    best_ = f;
    best_cost_ = inst.cost_of(f);
  }

  void run(Deadline deadline) {
    deadline_ = deadline;
    root_bound_ = -1;
    tune_shares();
    dfs();
  }

  bool timed_out() const { return timed_out_; }
  const std::vector<EdgeId> &best() const { return best_; }
  Cost best_cost() const { return best_cost_; }
  Cost lower_bound() const {
    return timed_out_ ? std::min(std::max<Cost>(root_bound_, 0), best_cost_) : best_cost_;
  }
  std::uint64_t nodes() const { return nodes_; }

private:
  Cost cost(int var) const { return inst_->costs[static_cast<std::size_t>(vars_[static_cast<std::size_t>(var)])]; }

  std::size_t add_cut(std::vector<EdgeId> edges) {
    std::sort(edges.begin(), edges.end());
    auto [it, fresh] = seen_.emplace(edges, pool_.size());
    if (!fresh)
      return it->second;
    if (trace_)
      trace_->cuts.push_back(edges);
    std::vector<int> local;
    for (EdgeId e : edges)
      local.push_back(local_[static_cast<std::size_t>(e)]);
    pool_.push_back(std::move(local));
    return pool_.size() - 1;
  }

  void assign(int var, signed char val) {
    value_[static_cast<std::size_t>(var)] = val;
    auto e = static_cast<std::size_t>(vars_[static_cast<std::size_t>(var)]);
    x_one_[e] = val == 1;
    x_open_[e] = val != 0;
    if (val == 1)
      fixed_cost_ += cost(var);
    trail_.push_back(var);
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      int var = trail_.back();
      trail_.pop_back();
      if (value_[static_cast<std::size_t>(var)] == 1)
        fixed_cost_ -= cost(var);
      value_[static_cast<std::size_t>(var)] = -1;
      auto e = static_cast<std::size_t>(vars_[static_cast<std::size_t>(var)]);
      x_one_[e] = false;
      x_open_[e] = true;
    }
  }

  // Unit propagation over the pool; false on an all-zero cut.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto &cut : pool_) {
        int free_var = -1;
        int free_count = 0;
        bool satisfied = false;
        for (int var : cut) {
          signed char v = value_[static_cast<std::size_t>(var)];
          if (v == 1) {
            satisfied = true;
            break;
          }
          if (v == -1) {
            ++free_count;
            free_var = var;
          }
        }
        if (satisfied)
          continue;
        if (free_count == 0)
          return false;
        if (free_count == 1) {
          assign(free_var, 1);
          changed = true;
        }
      }
    }
    return true;
  }

  // Dual ascent on the unsatisfied pool cuts: a feasible solution of the
  // covering LP dual, hence a valid lower bound on the remaining cost.
  Cost dual_bound() {
    std::vector<std::pair<int, std::size_t>> open;
    for (std::size_t c = 0; c < pool_.size(); ++c) {
      int free_count = 0;
      bool satisfied = false;
      for (int var : pool_[c]) {
        signed char v = value_[static_cast<std::size_t>(var)];
        if (v == 1) {
          satisfied = true;
          break;
        }
        free_count += v == -1;
      }
      if (!satisfied)
        open.emplace_back(free_count, c);
    }
    std::sort(open.begin(), open.end());
    residual_.resize(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i)
      residual_[i] = cost(static_cast<int>(i));
    Cost bound = 0;
    for (const auto &[count, c] : open) {
      Cost step = std::numeric_limits<Cost>::max();
      for (int var : pool_[c])
        if (value_[static_cast<std::size_t>(var)] == -1)
          step = std::min(step, residual_[static_cast<std::size_t>(var)]);
      if (step <= 0 || step == std::numeric_limits<Cost>::max())
        continue;
      bound += step;
      for (int var : pool_[c])
        if (value_[static_cast<std::size_t>(var)] == -1)
          residual_[static_cast<std::size_t>(var)] -= step;
    }
    return bound;
  }

  // Every edge cost is split among the habitats containing it; the sum over
  // habitats of a minimum spanning tree under its shares (respecting the
  // current fixings) bounds the cost of any completion from below.
  void init_shares() {
    std::vector<int> multiplicity(vars_.size(), 0);
    for (const Split &sp : splits_)
      for (int var : sp.vars)
        ++multiplicity[static_cast<std::size_t>(var)];
    for (Split &sp : splits_) {
      sp.share.clear();
      for (int var : sp.vars)
        sp.share.push_back(static_cast<double>(cost(var)) / multiplicity[static_cast<std::size_t>(var)]);
    }
    sort_splits();
  }

  void sort_splits() {
    for (Split &sp : splits_) {
      sp.order.resize(sp.vars.size());
      for (std::size_t i = 0; i < sp.order.size(); ++i)
        sp.order[i] = static_cast<int>(i);
      std::stable_sort(sp.order.begin(), sp.order.end(), [&](int a, int b) {
        return sp.share[static_cast<std::size_t>(a)] < sp.share[static_cast<std::size_t>(b)];
      });
    }
  }

  // Spanning tree weight of one habitat under its shares; marks used edges.
  double split_tree(const Split &sp, std::vector<char> *used) {
    detail::UnionFind uf(sp.size);
    double total = 0;
    for (std::size_t i = 0; i < sp.vars.size(); ++i)
      if (value_[static_cast<std::size_t>(sp.vars[i])] == 1) {
        uf.unite(sp.ends[i].first, sp.ends[i].second);
        total += sp.share[i];
        if (used)
          (*used)[i] = 1;
      }
    for (int i : sp.order) {
      auto k = static_cast<std::size_t>(i);
      if (value_[static_cast<std::size_t>(sp.vars[k])] != -1)
        continue;
      if (uf.unite(sp.ends[k].first, sp.ends[k].second)) {
        total += sp.share[k];
        if (used)
          (*used)[k] = 1;
      }
    }
    return total;
  }

  // Also offers the union of the trees, which satisfies every habitat, as an incumbent.
  Cost split_bound() {
    double total = 0;
    std::vector<char> used;
    std::fill(in_union_.begin(), in_union_.end(), 0);
    Cost union_cost = 0;
    for (const Split &sp : splits_) {
      used.assign(sp.vars.size(), 0);
      total += split_tree(sp, &used);
      for (std::size_t i = 0; i < used.size(); ++i) {
        auto var = static_cast<std::size_t>(sp.vars[i]);
        if (used[i] && !in_union_[var]) {
          in_union_[var] = 1;
          union_cost += cost(static_cast<int>(var));
        }
      }
    }
    if (union_cost < best_cost_) {
      best_cost_ = union_cost;
      best_.clear();
      for (std::size_t var = 0; var < vars_.size(); ++var)
        if (in_union_[var])
          best_.push_back(vars_[var]);
    }
    return static_cast<Cost>(std::ceil(total - 1e-6));
  }

  // Subgradient steps at the root: move cost share towards the habitats
  // whose tree uses an edge, away from those that do not.
  void tune_shares() {
    double best = -1;
    std::vector<std::vector<double>> best_shares;
    double step = 0;
    for (int var = 0; var < static_cast<int>(vars_.size()); ++var)
      step = std::max(step, static_cast<double>(cost(var)) / 2);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> users(vars_.size()), idle(vars_.size());
    std::vector<std::vector<char>> used(splits_.size());
    for (int iter = 0; iter < 40 && step > 1e-3; ++iter) {
      double total = 0;
      for (std::size_t h = 0; h < splits_.size(); ++h) {
        used[h].assign(splits_[h].vars.size(), 0);
        total += split_tree(splits_[h], &used[h]);
      }
      if (total > best + 1e-9) {
        best = total;
        best_shares.clear();
        for (const Split &sp : splits_)
          best_shares.push_back(sp.share);
      } else {
        step /= 2;
      }
      for (auto &u : users)
        u.clear();
      for (auto &u : idle)
        u.clear();
      for (std::size_t h = 0; h < splits_.size(); ++h)
        for (std::size_t i = 0; i < splits_[h].vars.size(); ++i)
          (used[h][i] ? users : idle)[static_cast<std::size_t>(splits_[h].vars[i])].emplace_back(h, i);
      bool moved = false;
      for (std::size_t var = 0; var < vars_.size(); ++var) {
        if (users[var].empty() || idle[var].empty())
          continue;
        double pool = 0;
        for (auto [h, i] : idle[var]) {
          double &sh = splits_[h].share[i];
          double take = std::min(step, sh);
          sh -= take;
          pool += take;
        }
        for (auto [h, i] : users[var])
          splits_[h].share[i] += pool / static_cast<double>(users[var].size());
        moved = moved || pool > 0;
      }
      if (!moved)
        break;
      sort_splits();
    }
    if (!best_shares.empty()) {
      for (std::size_t h = 0; h < splits_.size(); ++h)
        splits_[h].share = best_shares[h];
      sort_splits();
    }
  }

  void dfs() {
    if (timed_out_)
      return;
    ++nodes_;
    if ((nodes_ & 63u) == 0 && deadline_.expired()) {
      timed_out_ = true;
      return;
    }
    const std::size_t mark = trail_.size();
    std::optional<std::size_t> branch_cut;
    for (int round = 0; round < 4; ++round) {
      if (!propagate()) {
        undo_to(mark);
        return;
      }
      // Relaxation: every non-zero edge available.
      for (int hi : habitats_) {
        auto cut = separate_connectivity_cut(*inst_, x_open_, inst_->habitats[static_cast<std::size_t>(hi)]);
        if (cut) {
          add_cut(std::move(*cut));
          undo_to(mark);
          return;
        }
      }
      Cost bound = std::max(fixed_cost_ + dual_bound(), split_bound());
      if (root_bound_ < 0)
        root_bound_ = bound;
      if (bound >= best_cost_) {
        undo_to(mark);
        return;
      }
      // Integral candidate: exactly the edges fixed to one.
      branch_cut.reset();
      for (int hi : habitats_) {
        auto cut = separate_connectivity_cut(*inst_, x_one_, inst_->habitats[static_cast<std::size_t>(hi)]);
        if (!cut)
          continue;
        std::size_t id = add_cut(std::move(*cut));
        if (!branch_cut)
          branch_cut = id;
      }
      if (!branch_cut) {
        // Fixed-one edges already satisfy every habitat; the rest stay out.
        if (fixed_cost_ < best_cost_) {
          best_cost_ = fixed_cost_;
          best_.clear();
          for (std::size_t i = 0; i < vars_.size(); ++i)
            if (value_[i] == 1)
              best_.push_back(vars_[i]);
        }
        undo_to(mark);
        return;
      }
    }

    int pick = -1;
    for (int var : pool_[*branch_cut])
      if (value_[static_cast<std::size_t>(var)] == -1 && (pick < 0 || cost(var) < cost(pick)))
        pick = var;
    if (pick < 0) {
      undo_to(mark);
      return;
    }
    const std::size_t branch_mark = trail_.size();
    assign(pick, 1);
    dfs();
    undo_to(branch_mark);
    assign(pick, 0);
    dfs();
    undo_to(mark);
  }

  const Instance *inst_;
  std::vector<int> habitats_;
  std::vector<Split> splits_;
  std::vector<char> in_union_;
  std::vector<EdgeId> vars_;
  Deadline deadline_;
  GenericTrace *trace_;
  std::vector<int> local_;
  std::vector<signed char> value_; // -1 free, 0 excluded, 1 included
  std::vector<bool> x_one_;
  std::vector<bool> x_open_;
  std::vector<int> trail_;
  std::vector<std::vector<int>> pool_;
  std::map<std::vector<EdgeId>, std::size_t> seen_;
  std::vector<Cost> residual_;
  Cost fixed_cost_ = 0;
  std::vector<EdgeId> best_;
  Cost best_cost_ = 0;
  Cost root_bound_ = -1;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

} // namespace

SolveResult solve_generic(const Instance &inst, const SolveOptions &options, GenericTrace *trace) {
  auto start = Clock::now();
  if (auto bad = detail::first_disconnected_habitat(inst))
    return detail::reject(SolveStatus::InfeasibleInput,
                          "habitat " + std::to_string(*bad) + " is disconnected in the graph",
                          start);

  // Habitats interact only through shared covered edges.
  const Graph &g = inst.graph;
  const int r = static_cast<int>(inst.habitats.size());
  std::vector<int> owner(static_cast<std::size_t>(g.edge_count()), -1);
  detail::UnionFind groups(r);
  for (int i = 0; i < r; ++i)
    for (EdgeId e : habitat_edges(g, inst.habitats[static_cast<std::size_t>(i)])) {
      int &o = owner[static_cast<std::size_t>(e)];
      if (o < 0)
        o = i;
      else
        groups.unite(o, i);
    }
  std::map<int, std::pair<std::vector<int>, std::vector<EdgeId>>> parts;
  for (int i = 0; i < r; ++i)
    parts[groups.find(i)].first.push_back(i);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (owner[static_cast<std::size_t>(e)] >= 0)
      parts[groups.find(owner[static_cast<std::size_t>(e)])].second.push_back(e);

  std::vector<BranchAndCut> searches;
  searches.reserve(parts.size());
  for (auto &[root, part] : parts)
    searches.emplace_back(inst, std::move(part.first), std::move(part.second), trace);

  SolveResult result;
  result.build_time = Clock::now() - start;
  Deadline deadline = detail::deadline_from(options);
  std::vector<EdgeId> f;
  Cost lower = 0;
  bool timed_out = false;
  for (auto &search : searches) {
    search.run(deadline);
    timed_out = timed_out || search.timed_out();
    lower += search.lower_bound();
    f.insert(f.end(), search.best().begin(), search.best().end());
    if (trace)
      trace->nodes += search.nodes();
  }
  result.solution = Solution::from_edges(inst, std::move(f));
  result.lower_bound = lower;
  result.status = timed_out ? SolveStatus::TimeoutIncumbent : SolveStatus::Optimal;
  result.wall_time = Clock::now() - start - result.build_time;
  return result;
}

} // namespace gbp
