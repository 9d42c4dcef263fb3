#include "gbp/generators.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <string>

#include "gbp/errors.hpp"

namespace gbp {

Rng::Rng(Seed seed) : engine_(seed) {}

std::uint64_t Rng::bits() { return engine_(); }

double Rng::uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0)
    throw InputError("Rng::below needs a positive bound");
  // Rejection keeps the result unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  std::uint64_t x;
  do
    x = bits();
  while (x > limit);
  return x % n;
}

int Rng::between(int lo, int hi) {
  if (hi < lo)
    throw InputError("Rng::between with an empty range");
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

namespace {

Seed derive(Seed seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Habitat habitat_of(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return Habitat(std::move(vs));
}

template <class T> std::vector<T> sample(std::vector<T> items, int r, Seed seed) {
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  order.resize(std::min(order.size(), static_cast<std::size_t>(r)));
  std::sort(order.begin(), order.end());
  std::vector<T> picked;
  for (std::size_t i : order)
    picked.push_back(std::move(items[i]));
  return picked;
}

void require_positive_r(int r) {
  if (r < 1)
    throw InputError("habitat count r must be positive, got " + std::to_string(r));
}

std::vector<Vertex> add_path(Graph &g, Vertex a, Vertex b, int length) {
  std::vector<Vertex> path{a};
  Vertex prev = a;
  for (int i = 1; i < length; ++i) {
    Vertex v = g.add_vertex();
    g.add_edge(prev, v);
    path.push_back(v);
    prev = v;
  }
  if (!g.has_edge(prev, b))
    g.add_edge(prev, b);
  path.push_back(b);
  return path;
}

std::vector<Vertex> join(std::initializer_list<std::span<const Vertex>> parts) {
  std::vector<Vertex> out;
  for (auto part : parts)
    out.insert(out.end(), part.begin(), part.end());
  return out;
}

Instance unit_instance(Graph g, std::vector<Habitat> habitats, Cost budget) {
  std::vector<Cost> costs(static_cast<std::size_t>(g.edge_count()), 1);
  return make_instance(std::move(g), std::move(costs), std::move(habitats), budget);
}

void require_budget_base(const CvcInstance &cvc) {
  require_cubic(cvc.graph);
  if (cvc.p < 0)
    throw InputError("vertex cover bound p must be nonnegative");
}

} // namespace

Coordinates random_points(int n, Seed seed) {
  if (n < 1)
    throw InputError("need at least one point");
  Rng rng(seed);
  Coordinates pts(static_cast<std::size_t>(n));
  for (Point &pt : pts) {
    pt.x = rng.uniform();
    pt.y = rng.uniform();
  }
  return pts;
}

Graph rng_graph(const Coordinates &points) {
  const int n = static_cast<int>(points.size());
  {
    Coordinates sorted = points;
    std::sort(sorted.begin(), sorted.end(),
              [](const Point &a, const Point &b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw GeometryError("duplicate points in relative neighbourhood graph input");
  }
  std::vector<double> d2(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  auto at = [&](int a, int b) -> double & {
    return d2[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)];
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double dx = points[static_cast<std::size_t>(a)].x - points[static_cast<std::size_t>(b)].x;
      double dy = points[static_cast<std::size_t>(a)].y - points[static_cast<std::size_t>(b)].y;
      at(a, b) = dx * dx + dy * dy;
    }
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double duv = at(u, v);
      bool blocked = false;
      for (int w = 0; w < n && !blocked; ++w)
        blocked = w != u && w != v && std::max(at(u, w), at(v, w)) < duv;
      if (!blocked)
        g.add_edge(u, v);
    }
  return g;
}

std::vector<Cost> assign_costs(const Graph &g, Seed seed, Cost lo, Cost hi) {
  if (lo < 1 || hi < lo)
    throw InputError("cost range must satisfy 1 <= lo <= hi");
  Rng rng(seed);
  std::vector<Cost> costs(static_cast<std::size_t>(g.edge_count()));
  for (Cost &c : costs)
    c = lo + static_cast<Cost>(rng.below(static_cast<std::uint64_t>(hi - lo) + 1));
  return costs;
}

PlaneGraph random_plane_graph(int n, Seed seed) {
  PlaneGraph pg;
  pg.coords = random_points(n, derive(seed, 0));
  pg.graph = rng_graph(pg.coords);
  pg.costs = assign_costs(pg.graph, derive(seed, 1));
  return pg;
}

Instance gen_face_instance(const PlaneGraph &pg, int r, Seed seed) {
  require_positive_r(r);
  auto faces = enumerate_faces(pg.graph, rotation_system_from_coordinates(pg.graph, pg.coords),
                               pg.coords);
  std::vector<Habitat> candidates;
  for (const Face &f : faces) {
    if (f.is_outer || !f.is_simple_cycle())
      continue;
    Habitat h = habitat_of(f.boundary);
    if (classify_habitat(pg.graph, h) == HabitatShape::Cycle)
      candidates.push_back(std::move(h));
  }
  if (candidates.empty())
    throw GenerationError("no inner face induces a cycle");
  return make_instance(pg.graph, pg.costs, sample(std::move(candidates), r, seed));
}

std::vector<std::vector<Vertex>> chordless_cycles(const Graph &g, int min_len, int max_len,
                                                  std::size_t cap) {
  std::vector<std::vector<Vertex>> found;
  const int n = g.vertex_count();
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<bool> on_path(static_cast<std::size_t>(n), false);
  std::vector<Vertex> path;

  for (Vertex s = 0; s < n && found.size() < cap; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    std::vector<Vertex> queue{s};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const Incidence &inc : g.incident(queue[i]))
        if (inc.to > s && dist[static_cast<std::size_t>(inc.to)] < 0) {
          dist[static_cast<std::size_t>(inc.to)] = dist[static_cast<std::size_t>(queue[i])] + 1;
          queue.push_back(inc.to);
        }

    std::function<void()> extend = [&] {
      const std::size_t k = path.size() - 1;
      for (const Incidence &inc : g.incident(path.back())) {
        if (found.size() >= cap)
          return;
        const Vertex w = inc.to;
        if (w <= s || on_path[static_cast<std::size_t>(w)])
          continue;
        bool chord = false;
        for (std::size_t i = 1; i < k && !chord; ++i)
          chord = g.has_edge(w, path[i]);
        if (chord)
          continue;
        const int len = static_cast<int>(path.size()) + 1;
        if (k >= 1 && g.has_edge(w, s)) {
          if (len >= min_len && len <= max_len && path[1] < w) {
            found.push_back(path);
            found.back().push_back(w);
          }
          continue;
        }
        if (len + dist[static_cast<std::size_t>(w)] - 1 > max_len)
          continue;
        on_path[static_cast<std::size_t>(w)] = true;
        path.push_back(w);
        extend();
        path.pop_back();
        on_path[static_cast<std::size_t>(w)] = false;
      }
    };
    path.assign(1, s);
    on_path[static_cast<std::size_t>(s)] = true;
    extend();
    on_path[static_cast<std::size_t>(s)] = false;
  }
  return found;
}

Instance gen_cycle_instance(const Graph &g, std::vector<Cost> costs, int r, int q, Seed seed) {
  require_positive_r(r);
  if (q < 4)
    throw InputError("cycle habitats need q >= 4");
  std::vector<Habitat> candidates;
  for (auto &cycle : chordless_cycles(g, q - 1, q + 1))
    candidates.push_back(habitat_of(std::move(cycle)));
  if (candidates.empty())
    throw GenerationError("no chordless cycle with " + std::to_string(q - 1) + ".." +
                          std::to_string(q + 1) + " vertices");
  return make_instance(g, std::move(costs), sample(std::move(candidates), r, seed));
}

Instance gen_walk_instance(const Graph &g, std::vector<Cost> costs, int r, int q, Seed seed) {
  require_positive_r(r);
  if (q < 3)
    throw InputError("walk habitats need q >= 3");
  if (g.vertex_count() == 0)
    throw GenerationError("empty graph");
  Rng rng(seed);
  const int budget = 100 * r;
  int restarts = 0;
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  std::vector<Habitat> habitats;
  while (static_cast<int>(habitats.size()) < r) {
    const int target = rng.between(q - 1, q + 1);
    std::vector<Vertex> walk{static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(g.vertex_count())))};
    seen[static_cast<std::size_t>(walk[0])] = true;
    while (static_cast<int>(walk.size()) < target) {
      std::vector<Vertex> next;
      for (const Incidence &inc : g.incident(walk.back()))
        if (!seen[static_cast<std::size_t>(inc.to)])
          next.push_back(inc.to);
      if (next.empty())
        break;
      Vertex v = next[static_cast<std::size_t>(rng.below(next.size()))];
      seen[static_cast<std::size_t>(v)] = true;
      walk.push_back(v);
    }
    for (Vertex v : walk)
      seen[static_cast<std::size_t>(v)] = false;
    if (static_cast<int>(walk.size()) == target) {
      habitats.push_back(habitat_of(std::move(walk)));
    } else if (++restarts > budget) {
      throw GenerationError("random walks kept dead-ending after " + std::to_string(budget) +
                            " restarts");
    }
  }
  return make_instance(g, std::move(costs), std::move(habitats));
}

Crowning crown(Graph &g, Vertex a, Vertex b, int p, int q) {
  if (!g.valid_vertex(a) || !g.valid_vertex(b))
    throw InputError("crowning endpoint out of range");
  if (a == b)
    throw InputError("crowning needs two distinct endpoints");
  if (p < 0 || q < 0)
    throw InputError("crowning parameters must be nonnegative");
  auto base = add_path(g, a, b, p + 1);
  auto c1 = add_path(g, a, b, q + 1);
  auto c2 = add_path(g, a, b, q + 1);
  Habitat h1 = habitat_of(join({base, c1}));
  Habitat h2 = habitat_of(join({base, c2}));
  return Crowning{std::move(base), std::move(c1), std::move(c2), {std::move(h1), std::move(h2)}};
}

Instance crown_instance(int p, int q) {
  Graph g(2);
  auto c = crown(g, 0, 1, p, q);
  return unit_instance(std::move(g), {c.habitats[0], c.habitats[1]}, p + 2 * q + 1);
}

void require_cubic(const Graph &g) {
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != 3)
      throw InputError("graph is not cubic: vertex " + std::to_string(v) + " has degree " +
                       std::to_string(g.degree(v)));
}

int cvc_brute_force(const Graph &g) {
  const int n = g.vertex_count();
  if (n > 16)
    throw GuardError("vertex cover enumeration limited to 16 vertices, got " + std::to_string(n));
  int best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = std::popcount(mask);
    if (size >= best)
      continue;
    bool covers = true;
    for (const Edge &e : g.edges())
      if (!(mask >> e.u & 1u) && !(mask >> e.v & 1u)) {
        covers = false;
        break;
      }
    if (covers)
      best = size;
  }
  return best;
}

Instance construct_c3(const CvcInstance &cvc, int ell) {
  require_budget_base(cvc);
  if (ell != 0 && ell < 3)
    throw InputError("c3 extension needs ell >= 3");
  const Graph &base = cvc.graph;
  const int n = base.vertex_count();
  const int m = base.edge_count();
  Graph g(n);
  const Vertex x = g.add_vertex();
  std::vector<Habitat> habitats;
  if (ell == 0) {
    for (const Edge &e : base.edges())
      g.add_edge(e.u, e.v);
    for (Vertex v = 0; v < n; ++v)
      g.add_edge(x, v);
    for (const Edge &e : base.edges())
      habitats.push_back(habitat_of({e.u, e.v}));
    for (const Edge &e : base.edges())
      habitats.push_back(habitat_of({e.u, e.v, x}));
    return unit_instance(std::move(g), std::move(habitats), m + cvc.p);
  }
  for (Vertex v = 0; v < n; ++v)
    g.add_edge(x, v);
  for (const Edge &e : base.edges()) {
    auto c = crown(g, e.u, e.v, ell - 3, 1);
    habitats.push_back(c.habitats[0]);
    habitats.push_back(c.habitats[1]);
    auto cycle = c.base;
    cycle.push_back(x);
    habitats.push_back(habitat_of(std::move(cycle)));
  }
  return unit_instance(std::move(g), std::move(habitats), static_cast<Cost>(m) * ell + cvc.p);
}

Instance construct_planar(const CvcInstance &cvc, int ell) {
  require_budget_base(cvc);
  if (ell != 0 && (ell < 4 || ell == 5))
    throw InputError("planar extension needs ell = 4 or ell >= 6");
  const Graph &base = cvc.graph;
  const int n = base.vertex_count();
  Graph g(n);
  const Vertex x = g.add_vertex();
  const Vertex y = g.add_vertex();
  std::vector<Habitat> habitats;
  if (ell == 0) {
    for (Vertex v = 0; v < n; ++v) {
      g.add_edge(x, v);
      g.add_edge(y, v);
    }
    for (Vertex v = 0; v < n; ++v)
      habitats.push_back(habitat_of({v, x}));
    for (const Edge &e : base.edges())
      habitats.push_back(habitat_of({e.u, e.v, x, y}));
    return unit_instance(std::move(g), std::move(habitats), n + cvc.p);
  }
  for (Vertex v = 0; v < n; ++v)
    g.add_edge(y, v);
  // Per vertex: the base path(s) from v to x; odd ell uses two parallel crownings.
  std::vector<std::vector<Vertex>> first(static_cast<std::size_t>(n));
  std::vector<std::vector<Vertex>> second(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Crowning> parts;
    if (ell % 2 == 0) {
      parts.push_back(crown(g, v, x, ell / 2 - 2, ell / 2));
    } else {
      parts.push_back(crown(g, v, x, (ell - 1) / 2 - 2, (ell + 1) / 2));
      parts.push_back(crown(g, v, x, (ell + 1) / 2 - 2, (ell - 1) / 2));
    }
    for (const Crowning &c : parts) {
      habitats.push_back(c.habitats[0]);
      habitats.push_back(c.habitats[1]);
    }
    first[static_cast<std::size_t>(v)] = parts.front().base;
    second[static_cast<std::size_t>(v)] = parts.back().base;
  }
  const Cost per_vertex = ell % 2 == 0 ? 3 * ell / 2 - 1 : 3 * ell - 2;
  for (const Edge &e : base.edges()) {
    Vertex a = std::min(e.u, e.v);
    Vertex b = std::max(e.u, e.v);
    auto cycle = join({first[static_cast<std::size_t>(a)], second[static_cast<std::size_t>(b)]});
    cycle.push_back(y);
    habitats.push_back(habitat_of(std::move(cycle)));
  }
  return unit_instance(std::move(g), std::move(habitats), per_vertex * n + cvc.p);
}

Instance construct_deg(const CvcInstance &cvc, DegExtension ext, int ell) {
  require_budget_base(cvc);
  if (ext != DegExtension::None && ell < 4)
    throw InputError("deg extensions need ell >= 4");
  const Graph &base = cvc.graph;
  const int n = base.vertex_count();
  const int m = base.edge_count();
  Graph g(2 * n);
  auto star = [n](Vertex v) { return v + n; };
  std::vector<Habitat> habitats;
  Cost budget = 0;

  if (ext == DegExtension::None) {
    for (const Edge &e : base.edges())
      g.add_edge(e.u, e.v);
    for (const Edge &e : base.edges())
      g.add_edge(star(e.u), star(e.v));
    for (Vertex v = 0; v < n; ++v)
      g.add_edge(v, star(v));
    for (const Edge &e : base.edges())
      habitats.push_back(habitat_of({e.u, e.v}));
    for (const Edge &e : base.edges())
      habitats.push_back(habitat_of({star(e.u), star(e.v)}));
    for (const Edge &e : base.edges())
      habitats.push_back(habitat_of({e.u, e.v, star(e.u), star(e.v)}));
    return unit_instance(std::move(g), std::move(habitats), 2 * m + cvc.p);
  }

  for (Vertex v = 0; v < n; ++v)
    g.add_edge(v, star(v));
  std::vector<Habitat> cycles;
  for (const Edge &e : base.edges()) {
    std::vector<Vertex> upper;
    if (ext == DegExtension::Subdivide) {
      upper = add_path(g, e.u, e.v, ell - 3);
      for (std::size_t i = 0; i + 1 < upper.size(); ++i)
        habitats.push_back(habitat_of({upper[i], upper[i + 1]}));
      g.add_edge(star(e.u), star(e.v));
      habitats.push_back(habitat_of({star(e.u), star(e.v)}));
    } else {
      auto c = crown(g, e.u, e.v, ell - 4, 2);
      auto d = crown(g, star(e.u), star(e.v), 0, ell - 2);
      upper = c.base;
      for (const Crowning *k : {&c, &d}) {
        habitats.push_back(k->habitats[0]);
        habitats.push_back(k->habitats[1]);
      }
    }
    upper.push_back(star(e.u));
    upper.push_back(star(e.v));
    cycles.push_back(habitat_of(std::move(upper)));
  }
  habitats.insert(habitats.end(), cycles.begin(), cycles.end());
  budget = ext == DegExtension::Subdivide ? static_cast<Cost>(m) * (ell - 2)
                                          : static_cast<Cost>(m) * (3 * ell - 2);
  return unit_instance(std::move(g), std::move(habitats), budget + cvc.p);
}

Instance construct_bintree(const CvcInstance &cvc, bool crowned) {
  require_budget_base(cvc);
  const Graph &base = cvc.graph;
  const int n = base.vertex_count();
  const int leaves = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max(n, 2))));
  const int tree_size = 2 * leaves - 1;
  // Heap index k in 1..tree_size; T uses vertices 0..tree_size-1, T' the next block.
  auto node = [](int k) { return static_cast<Vertex>(k - 1); };
  auto mirror = [tree_size](int k) { return static_cast<Vertex>(tree_size + k - 1); };

  Graph g(2 * tree_size);
  std::vector<std::pair<Vertex, Vertex>> tree_edges;
  for (int k = 2; k <= tree_size; ++k)
    tree_edges.emplace_back(node(k / 2), node(k));
  for (int k = 2; k <= tree_size; ++k)
    tree_edges.emplace_back(mirror(k / 2), mirror(k));
  for (auto [a, b] : tree_edges)
    g.add_edge(a, b);
  for (int i = 0; i < leaves; ++i)
    g.add_edge(node(leaves + i), mirror(leaves + i));

  std::vector<Habitat> habitats;
  for (auto [a, b] : tree_edges) {
    if (crowned) {
      auto c = crown(g, a, b, 0, 1);
      habitats.push_back(c.habitats[0]);
      habitats.push_back(c.habitats[1]);
    } else {
      habitats.push_back(habitat_of({a, b}));
    }
  }
  for (const Edge &e : base.edges()) {
    std::vector<Vertex> cycle;
    int a = leaves + e.u;
    int b = leaves + e.v;
    while (a != b) {
      for (int k : {a, b}) {
        cycle.push_back(node(k));
        cycle.push_back(mirror(k));
      }
      a /= 2;
      b /= 2;
    }
    cycle.push_back(node(a));
    cycle.push_back(mirror(a));
    habitats.push_back(habitat_of(std::move(cycle)));
  }
  const Cost tree_cost = static_cast<Cost>(tree_edges.size()) * (crowned ? 3 : 1);
  return unit_instance(std::move(g), std::move(habitats), tree_cost + cvc.p);
}

} // namespace gbp
