#pragma once

#include <vector>

#include "gbp/graph.hpp"

namespace gbp {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point &, const Point &) = default;
};

using Coordinates = std::vector<Point>;

/// Per-vertex counterclockwise cyclic order of incident edges.
struct Embedding {
  std::vector<std::vector<EdgeId>> rotation;
};

struct Face {
  std::vector<Vertex> boundary;  // closed walk, first vertex not repeated at the end
  std::vector<EdgeId> edges;     // sorted, unique
  double signed_area = 0.0;
  bool is_outer = false;

  /// No vertex repeats along the walk and the walk has at least three vertices.
  bool is_simple_cycle() const;
};

/// Orders the incident edges of every vertex by the polar angle of the
/// neighbour. Throws GeometryError when adjacent vertices coincide.
Embedding rotation_system_from_coordinates(const Graph &g, const Coordinates &coords);

/**
   Traces every face of a plane graph by walking the rotation system. Each
   directed edge is used by exactly one face walk. In every connected
   component the walk of largest absolute area (ties: longer boundary) is
   flagged as that component's outer face.

   Throws EmbeddingError when the rotation is not consistent with the graph.
 */
std::vector<Face> enumerate_faces(const Graph &g, const Embedding &emb, const Coordinates &coords);

bool is_face_habitat(const std::vector<Face> &faces, const Habitat &h);

struct FaceCounts {
  int total = 0;
  int inner = 0;
};

FaceCounts count_faces(const std::vector<Face> &faces);

/// True if two edges without a shared endpoint cross in the straight-line drawing.
bool has_crossing(const Graph &g, const Coordinates &coords);

} // namespace gbp
