#include "gbp/matching.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "gbp/errors.hpp"

namespace gbp {

void WeightedGraph::validate() const {
  if (node_count < 0)
    throw InputError("negative node count");
  std::set<std::pair<int, int>> seen;
  for (const WeightedEdge &e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= node_count || e.v >= node_count)
      throw InputError("matching edge endpoint out of range");
    if (e.u == e.v)
      throw InputError("self-loop in weighted graph");
    if (e.weight < 1)
      throw InputError("matching weights must be positive");
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second)
      throw InputError("parallel edge in weighted graph");
  }
}

bool is_matching(const WeightedGraph &wg, const std::vector<int> &edges) {
  std::vector<bool> used(static_cast<std::size_t>(wg.node_count), false);
  for (int k : edges) {
    if (k < 0 || k >= static_cast<int>(wg.edges.size()))
      return false;
    const WeightedEdge &e = wg.edges[static_cast<std::size_t>(k)];
    if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)])
      return false;
    used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = true;
  }
  return true;
}

namespace {

// Primal-dual blossom algorithm. Vertices are 0..n-1, blossoms n..2n-1.
// Endpoint p of edge k is 2k (the u side) or 2k+1 (the v side); mate[] and
// labelend[] store endpoints so that p ^ 1 is the opposite end.
class BlossomMatcher {
public:
  explicit BlossomMatcher(const WeightedGraph &wg)
      : n_(wg.node_count), m_(static_cast<int>(wg.edges.size())) {
    Cost max_weight = 0;
    for (const WeightedEdge &e : wg.edges) {
      u_.push_back(e.u);
      v_.push_back(e.v);
      w_.push_back(2 * e.weight);
      max_weight = std::max(max_weight, 2 * e.weight);
    }
    endpoint_.resize(static_cast<std::size_t>(2 * m_));
    for (int p = 0; p < 2 * m_; ++p)
      endpoint_[at(p)] = (p % 2 == 0) ? u_[at(p / 2)] : v_[at(p / 2)];
    neighbend_.resize(at(n_));
    for (int k = 0; k < m_; ++k) {
      neighbend_[at(u_[at(k)])].push_back(2 * k + 1);
      neighbend_[at(v_[at(k)])].push_back(2 * k);
    }
    mate_.assign(at(n_), -1);
    label_.assign(at(2 * n_), 0);
    labelend_.assign(at(2 * n_), -1);
    inblossom_.resize(at(n_));
    for (int v = 0; v < n_; ++v)
      inblossom_[at(v)] = v;
    blossomparent_.assign(at(2 * n_), -1);
    blossomchilds_.assign(at(2 * n_), {});
    blossombase_.assign(at(2 * n_), -1);
    for (int v = 0; v < n_; ++v)
      blossombase_[at(v)] = v;
    blossomendps_.assign(at(2 * n_), {});
    bestedge_.assign(at(2 * n_), -1);
    blossombestedges_.assign(at(2 * n_), {});
    has_bestedges_.assign(at(2 * n_), false);
    for (int b = n_; b < 2 * n_; ++b)
      unused_.push_back(b);
    dualvar_.assign(at(2 * n_), 0);
    for (int v = 0; v < n_; ++v)
      dualvar_[at(v)] = max_weight;
    allowedge_.assign(at(m_), false);
  }

  std::vector<int> run();

private:
  static std::size_t at(int i) { return static_cast<std::size_t>(i); }
  static int wrap(int j, int len) { return ((j % len) + len) % len; }

  Cost slack(int k) const {
    return dualvar_[at(u_[at(k)])] + dualvar_[at(v_[at(k)])] - 2 * w_[at(k)];
  }

  void leaves(int b, std::vector<int> &out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[at(b)])
      leaves(t, out);
  }
  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p);
  int scan_blossom(int v, int w);
  void add_blossom(int base, int k);
  void expand_blossom(int b, bool endstage);
  void augment_blossom(int b, int v);
  void augment_matching(int k);

  int n_;
  int m_;
  std::vector<int> u_, v_;
  std::vector<Cost> w_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<bool> has_bestedges_;
  std::vector<int> unused_;
  std::vector<Cost> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<int> queue_;
};

void BlossomMatcher::assign_label(int w, int t, int p) {
  int b = inblossom_[at(w)];
  label_[at(w)] = label_[at(b)] = t;
  labelend_[at(w)] = labelend_[at(b)] = p;
  bestedge_[at(w)] = bestedge_[at(b)] = -1;
  if (t == 1) {
    leaves(b, queue_);
  } else if (t == 2) {
    int base = blossombase_[at(b)];
    int mb = mate_[at(base)];
    assign_label(endpoint_[at(mb)], 1, mb ^ 1);
  }
}

// Trace back from v and w to find either a new blossom base or an
// augmenting path (returns -1).
int BlossomMatcher::scan_blossom(int v, int w) {
  std::vector<int> path;
  int base = -1;
  while (v != -1 || w != -1) {
    int b = inblossom_[at(v)];
    if (label_[at(b)] & 4) {
      base = blossombase_[at(b)];
      break;
    }
    path.push_back(b);
    label_[at(b)] = 5;
    if (labelend_[at(b)] == -1) {
      v = -1;
    } else {
      v = endpoint_[at(labelend_[at(b)])];
      b = inblossom_[at(v)];
      v = endpoint_[at(labelend_[at(b)])];
    }
    if (w != -1)
      std::swap(v, w);
  }
  for (int b : path)
    label_[at(b)] = 1;
  return base;
}

void BlossomMatcher::add_blossom(int base, int k) {
  int v = u_[at(k)];
  int w = v_[at(k)];
  int bb = inblossom_[at(base)];
  int bv = inblossom_[at(v)];
  int bw = inblossom_[at(w)];
  int b = unused_.back();
  unused_.pop_back();
  blossombase_[at(b)] = base;
  blossomparent_[at(b)] = -1;
  blossomparent_[at(bb)] = b;
  std::vector<int> path;
  std::vector<int> endps;
  while (bv != bb) {
    blossomparent_[at(bv)] = b;
    path.push_back(bv);
    endps.push_back(labelend_[at(bv)]);
    v = endpoint_[at(labelend_[at(bv)])];
    bv = inblossom_[at(v)];
  }
  path.push_back(bb);
  std::reverse(path.begin(), path.end());
  std::reverse(endps.begin(), endps.end());
  endps.push_back(2 * k);
  while (bw != bb) {
    blossomparent_[at(bw)] = b;
    path.push_back(bw);
    endps.push_back(labelend_[at(bw)] ^ 1);
    w = endpoint_[at(labelend_[at(bw)])];
    bw = inblossom_[at(w)];
  }
  blossomchilds_[at(b)] = path;
  blossomendps_[at(b)] = endps;
  label_[at(b)] = 1;
  labelend_[at(b)] = labelend_[at(bb)];
  dualvar_[at(b)] = 0;
  for (int leaf : leaves(b)) {
    if (label_[at(inblossom_[at(leaf)])] == 2)
      queue_.push_back(leaf);
    inblossom_[at(leaf)] = b;
  }

  std::vector<int> bestedgeto(at(2 * n_), -1);
  for (int sub : path) {
    std::vector<std::vector<int>> nblists;
    if (!has_bestedges_[at(sub)]) {
      for (int leaf : leaves(sub)) {
        std::vector<int> list;
        for (int p : neighbend_[at(leaf)])
          list.push_back(p / 2);
        nblists.push_back(std::move(list));
      }
    } else {
      nblists.push_back(blossombestedges_[at(sub)]);
    }
    for (const auto &nblist : nblists) {
      for (int kk : nblist) {
        int i = u_[at(kk)];
        int j = v_[at(kk)];
        if (inblossom_[at(j)] == b)
          std::swap(i, j);
        int bj = inblossom_[at(j)];
        if (bj != b && label_[at(bj)] == 1 &&
            (bestedgeto[at(bj)] == -1 || slack(kk) < slack(bestedgeto[at(bj)])))
          bestedgeto[at(bj)] = kk;
      }
    }
    blossombestedges_[at(sub)].clear();
    has_bestedges_[at(sub)] = false;
    bestedge_[at(sub)] = -1;
  }
  auto &best = blossombestedges_[at(b)];
  best.clear();
  for (int kk : bestedgeto)
    if (kk != -1)
      best.push_back(kk);
  has_bestedges_[at(b)] = true;
  bestedge_[at(b)] = -1;
  for (int kk : best)
    if (bestedge_[at(b)] == -1 || slack(kk) < slack(bestedge_[at(b)]))
      bestedge_[at(b)] = kk;
}

void BlossomMatcher::expand_blossom(int b, bool endstage) {
  for (int s : blossomchilds_[at(b)]) {
    blossomparent_[at(s)] = -1;
    if (s < n_) {
      inblossom_[at(s)] = s;
    } else if (endstage && dualvar_[at(s)] == 0) {
      expand_blossom(s, endstage);
    } else {
      for (int leaf : leaves(s))
        inblossom_[at(leaf)] = s;
    }
  }
  if (!endstage && label_[at(b)] == 2) {
    const auto childs = blossomchilds_[at(b)];
    const auto endps = blossomendps_[at(b)];
    const int len = static_cast<int>(childs.size());
    int entrychild = inblossom_[at(endpoint_[at(labelend_[at(b)] ^ 1)])];
    int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
    int jstep;
    int endptrick;
    if (j & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    int p = labelend_[at(b)];
    while (j != 0) {
      label_[at(endpoint_[at(p ^ 1)])] = 0;
      label_[at(endpoint_[at(endps[at(wrap(j - endptrick, len))] ^ endptrick ^ 1)])] = 0;
      assign_label(endpoint_[at(p ^ 1)], 2, p);
      allowedge_[at(endps[at(wrap(j - endptrick, len))] / 2)] = true;
      j += jstep;
      p = endps[at(wrap(j - endptrick, len))] ^ endptrick;
      allowedge_[at(p / 2)] = true;
      j += jstep;
    }
    int bv = childs[at(wrap(j, len))];
    label_[at(endpoint_[at(p ^ 1)])] = label_[at(bv)] = 2;
    labelend_[at(endpoint_[at(p ^ 1)])] = labelend_[at(bv)] = p;
    bestedge_[at(bv)] = -1;
    j += jstep;
    while (childs[at(wrap(j, len))] != entrychild) {
      bv = childs[at(wrap(j, len))];
      if (label_[at(bv)] == 1) {
        j += jstep;
        continue;
      }
      int found = -1;
      for (int leaf : leaves(bv))
        if (label_[at(leaf)] != 0) {
          found = leaf;
          break;
        }
      if (found >= 0) {
        label_[at(found)] = 0;
        label_[at(endpoint_[at(mate_[at(blossombase_[at(bv)])])])] = 0;
        assign_label(found, 2, labelend_[at(found)]);
      }
      j += jstep;
    }
  }
  label_[at(b)] = labelend_[at(b)] = -1;
  blossomchilds_[at(b)].clear();
  blossomendps_[at(b)].clear();
  blossombase_[at(b)] = -1;
  blossombestedges_[at(b)].clear();
  has_bestedges_[at(b)] = false;
  bestedge_[at(b)] = -1;
  unused_.push_back(b);
}

// Swap matched/unmatched edges along the even path from v to the base of b.
void BlossomMatcher::augment_blossom(int b, int v) {
  int t = v;
  while (blossomparent_[at(t)] != b)
    t = blossomparent_[at(t)];
  if (t >= n_)
    augment_blossom(t, v);
  auto &childs = blossomchilds_[at(b)];
  auto &endps = blossomendps_[at(b)];
  const int len = static_cast<int>(childs.size());
  const int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
  int j = i;
  int jstep;
  int endptrick;
  if (i & 1) {
    j -= len;
    jstep = 1;
    endptrick = 0;
  } else {
    jstep = -1;
    endptrick = 1;
  }
  while (j != 0) {
    j += jstep;
    t = childs[at(wrap(j, len))];
    int p = endps[at(wrap(j - endptrick, len))] ^ endptrick;
    if (t >= n_)
      augment_blossom(t, endpoint_[at(p)]);
    j += jstep;
    t = childs[at(wrap(j, len))];
    if (t >= n_)
      augment_blossom(t, endpoint_[at(p ^ 1)]);
    mate_[at(endpoint_[at(p)])] = p ^ 1;
    mate_[at(endpoint_[at(p ^ 1)])] = p;
  }
  std::rotate(childs.begin(), childs.begin() + i, childs.end());
  std::rotate(endps.begin(), endps.begin() + i, endps.end());
  blossombase_[at(b)] = blossombase_[at(childs.front())];
}

void BlossomMatcher::augment_matching(int k) {
  const std::pair<int, int> sides[2] = {{u_[at(k)], 2 * k + 1}, {v_[at(k)], 2 * k}};
  for (auto [s, p] : sides) {
    while (true) {
      int bs = inblossom_[at(s)];
      if (bs >= n_)
        augment_blossom(bs, s);
      mate_[at(s)] = p;
      if (labelend_[at(bs)] == -1)
        break;
      int t = endpoint_[at(labelend_[at(bs)])];
      int bt = inblossom_[at(t)];
      s = endpoint_[at(labelend_[at(bt)])];
      int j = endpoint_[at(labelend_[at(bt)] ^ 1)];
      if (bt >= n_)
        augment_blossom(bt, j);
      mate_[at(j)] = labelend_[at(bt)];
      p = labelend_[at(bt)] ^ 1;
    }
  }
}

std::vector<int> BlossomMatcher::run() {
  for (int stage = 0; stage < n_; ++stage) {
    std::fill(label_.begin(), label_.end(), 0);
    std::fill(bestedge_.begin(), bestedge_.end(), -1);
    for (int b = n_; b < 2 * n_; ++b) {
      blossombestedges_[at(b)].clear();
      has_bestedges_[at(b)] = false;
    }
    std::fill(allowedge_.begin(), allowedge_.end(), false);
    queue_.clear();
    for (int v = 0; v < n_; ++v)
      if (mate_[at(v)] == -1 && label_[at(inblossom_[at(v)])] == 0)
        assign_label(v, 1, -1);

    bool augmented = false;
    while (true) {
      while (!queue_.empty() && !augmented) {
        int v = queue_.back();
        queue_.pop_back();
        for (int p : neighbend_[at(v)]) {
          int k = p / 2;
          int w = endpoint_[at(p)];
          if (inblossom_[at(v)] == inblossom_[at(w)])
            continue;
          Cost kslack = 0;
          if (!allowedge_[at(k)]) {
            kslack = slack(k);
            if (kslack <= 0)
              allowedge_[at(k)] = true;
          }
          if (allowedge_[at(k)]) {
            if (label_[at(inblossom_[at(w)])] == 0) {
              assign_label(w, 2, p ^ 1);
            } else if (label_[at(inblossom_[at(w)])] == 1) {
              int base = scan_blossom(v, w);
              if (base >= 0) {
                add_blossom(base, k);
              } else {
                augment_matching(k);
                augmented = true;
                break;
              }
            } else if (label_[at(w)] == 0) {
              label_[at(w)] = 2;
              labelend_[at(w)] = p ^ 1;
            }
          } else if (label_[at(inblossom_[at(w)])] == 1) {
            int b = inblossom_[at(v)];
            if (bestedge_[at(b)] == -1 || kslack < slack(bestedge_[at(b)]))
              bestedge_[at(b)] = k;
          } else if (label_[at(w)] == 0) {
            if (bestedge_[at(w)] == -1 || kslack < slack(bestedge_[at(w)]))
              bestedge_[at(w)] = k;
          }
        }
      }
      if (augmented)
        break;

      // Dual adjustment; without the cardinality requirement the vertex
      // duals bound delta, so delta type 1 always exists.
      int deltatype = 1;
      Cost delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
      int deltaedge = -1;
      int deltablossom = -1;
      for (int v = 0; v < n_; ++v) {
        if (label_[at(inblossom_[at(v)])] == 0 && bestedge_[at(v)] != -1) {
          Cost d = slack(bestedge_[at(v)]);
          if (d < delta) {
            delta = d;
            deltatype = 2;
            deltaedge = bestedge_[at(v)];
          }
        }
      }
      for (int b = 0; b < 2 * n_; ++b) {
        if (blossomparent_[at(b)] == -1 && label_[at(b)] == 1 && bestedge_[at(b)] != -1) {
          Cost kslack = slack(bestedge_[at(b)]);
          if (kslack % 2 != 0)
            throw IntegrityError("odd slack between two outer blossoms");
          Cost d = kslack / 2;
          if (d < delta) {
            delta = d;
            deltatype = 3;
            deltaedge = bestedge_[at(b)];
          }
        }
      }
      for (int b = n_; b < 2 * n_; ++b) {
        if (blossombase_[at(b)] >= 0 && blossomparent_[at(b)] == -1 && label_[at(b)] == 2 &&
            dualvar_[at(b)] < delta) {
          delta = dualvar_[at(b)];
          deltatype = 4;
          deltablossom = b;
        }
      }

      for (int v = 0; v < n_; ++v) {
        int lb = label_[at(inblossom_[at(v)])];
        if (lb == 1)
          dualvar_[at(v)] -= delta;
        else if (lb == 2)
          dualvar_[at(v)] += delta;
      }
      for (int b = n_; b < 2 * n_; ++b) {
        if (blossombase_[at(b)] >= 0 && blossomparent_[at(b)] == -1) {
          if (label_[at(b)] == 1)
            dualvar_[at(b)] += delta;
          else if (label_[at(b)] == 2)
            dualvar_[at(b)] -= delta;
        }
      }

      if (deltatype == 1) {
        break;
      } else if (deltatype == 2) {
        allowedge_[at(deltaedge)] = true;
        int i = u_[at(deltaedge)];
        int j = v_[at(deltaedge)];
        if (label_[at(inblossom_[at(i)])] == 0)
          std::swap(i, j);
        queue_.push_back(i);
      } else if (deltatype == 3) {
        allowedge_[at(deltaedge)] = true;
        queue_.push_back(u_[at(deltaedge)]);
      } else {
        expand_blossom(deltablossom, false);
      }
    }
    if (!augmented)
      break;

    for (int b = n_; b < 2 * n_; ++b)
      if (blossomparent_[at(b)] == -1 && blossombase_[at(b)] >= 0 && label_[at(b)] == 1 &&
          dualvar_[at(b)] == 0)
        expand_blossom(b, true);
  }

  std::vector<int> matched;
  for (int v = 0; v < n_; ++v)
    if (mate_[at(v)] >= 0 && v < endpoint_[at(mate_[at(v)])])
      matched.push_back(mate_[at(v)] / 2);
  std::sort(matched.begin(), matched.end());
  return matched;
}

} // namespace

GraphMatching max_weight_matching(const WeightedGraph &wg) {
  wg.validate();
  GraphMatching out;
  if (wg.edges.empty())
    return out;
  BlossomMatcher matcher(wg);
  out.edges = matcher.run();
  for (int k : out.edges)
    out.weight += wg.edges[static_cast<std::size_t>(k)].weight;
  return out;
}

GraphMatching brute_force_matching(const WeightedGraph &wg) {
  constexpr std::size_t guard = 25;
  if (wg.edges.size() > guard)
    throw GuardError("brute-force matching refuses " + std::to_string(wg.edges.size()) +
                     " edges (limit " + std::to_string(guard) + ")");
  wg.validate();
  GraphMatching best;
  std::vector<int> current;
  std::vector<bool> used(static_cast<std::size_t>(wg.node_count), false);
  // Include-first DFS over edges in index order.
  auto dfs = [&](auto &self, std::size_t k, Cost weight) -> void {
    if (k == wg.edges.size()) {
      if (weight > best.weight) {
        best.weight = weight;
        best.edges = current;
      }
      return;
    }
    const WeightedEdge &e = wg.edges[k];
    auto a = static_cast<std::size_t>(e.u);
    auto b = static_cast<std::size_t>(e.v);
    if (!used[a] && !used[b]) {
      used[a] = used[b] = true;
      current.push_back(static_cast<int>(k));
      self(self, k + 1, weight + e.weight);
      current.pop_back();
      used[a] = used[b] = false;
    }
    self(self, k + 1, weight);
  };
  dfs(dfs, 0, 0);
  return best;
}

} // namespace gbp
