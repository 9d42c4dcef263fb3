#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "gbp/graph.hpp"
#include "gbp/planar.hpp"

namespace gbp {

using Seed = std::uint64_t;

/// Seeded generator with platform-independent output: mt19937_64 bits fed
/// through fixed conversions instead of the std distributions.
class Rng {
public:
  explicit Rng(Seed seed);

  std::uint64_t bits();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in [0, n), unbiased. n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  int between(int lo, int hi);

  template <class T> void shuffle(std::vector<T> &items) {
    for (std::size_t i = items.size(); i > 1; --i)
      std::swap(items[i - 1], items[static_cast<std::size_t>(below(i))]);
  }

private:
  std::mt19937_64 engine_;
};

Coordinates random_points(int n, Seed seed);

/// Relative neighbourhood graph. Throws GeometryError on coincident points.
Graph rng_graph(const Coordinates &points);

/// Uniform integer costs in [lo, hi] per edge.
std::vector<Cost> assign_costs(const Graph &g, Seed seed, Cost lo = 1, Cost hi = 8);

struct PlaneGraph {
  Graph graph;
  Coordinates coords;
  std::vector<Cost> costs;
};

/// random_points, rng_graph and assign_costs with seeds derived from `seed`.
PlaneGraph random_plane_graph(int n, Seed seed);

/// Inner faces whose boundary induces a cycle, sampled without replacement.
Instance gen_face_instance(const PlaneGraph &pg, int r, Seed seed);

/// Chordless cycles with q-1..q+1 vertices, DFS order, at most `cap` of them.
std::vector<std::vector<Vertex>> chordless_cycles(const Graph &g, int min_len, int max_len,
                                                  std::size_t cap = 100000);

Instance gen_cycle_instance(const Graph &g, std::vector<Cost> costs, int r, int q, Seed seed);
Instance gen_walk_instance(const Graph &g, std::vector<Cost> costs, int r, int q, Seed seed);

struct Crowning {
  std::vector<Vertex> base;   // a .. b
  std::vector<Vertex> crown1; // a .. b
  std::vector<Vertex> crown2;
  std::array<Habitat, 2> habitats;
};

/// Connects a and b by a base path of length p+1 and two crown paths of
/// length q+1. A path of length one is the a-b edge itself.
Crowning crown(Graph &g, Vertex a, Vertex b, int p, int q);

/// Two fresh vertices joined by a single (p,q)-crowning, unit costs.
Instance crown_instance(int p, int q);

struct CvcInstance {
  Graph graph;
  int p = 0;
};

/// Throws InputError unless every vertex has degree three.
void require_cubic(const Graph &g);

/// Minimum vertex cover size by subset enumeration; GuardError above 16 vertices.
int cvc_brute_force(const Graph &g);

/// ell = 0 builds the plain construction; otherwise every habitat is a cycle of length ell.
Instance construct_c3(const CvcInstance &cvc, int ell = 0);
Instance construct_planar(const CvcInstance &cvc, int ell = 0);

enum class DegExtension { None, Subdivide, Crown };
Instance construct_deg(const CvcInstance &cvc, DegExtension ext = DegExtension::None, int ell = 0);

Instance construct_bintree(const CvcInstance &cvc, bool crowned = false);

} // namespace gbp
