#include "gbp/planar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gbp/errors.hpp"

namespace gbp {

bool Face::is_simple_cycle() const {
  if (boundary.size() < 3)
    return false;
  std::vector<Vertex> sorted = boundary;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

Embedding rotation_system_from_coordinates(const Graph &g, const Coordinates &coords) {
  if (static_cast<int>(coords.size()) != g.vertex_count())
    throw InputError("expected " + std::to_string(g.vertex_count()) + " coordinates, got " +
                     std::to_string(coords.size()));
  for (const Point &p : coords)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw GeometryError("non-finite coordinate");

  Embedding emb;
  emb.rotation.resize(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const Point &pv = coords[static_cast<std::size_t>(v)];
    std::vector<std::pair<double, EdgeId>> order;
    for (const Incidence &inc : g.incident(v)) {
      const Point &pw = coords[static_cast<std::size_t>(inc.to)];
      if (pw == pv)
        throw GeometryError("adjacent vertices " + std::to_string(v) + " and " +
                            std::to_string(inc.to) + " share a coordinate");
      order.emplace_back(std::atan2(pw.y - pv.y, pw.x - pv.x), inc.edge);
    }
    std::sort(order.begin(), order.end());
    auto &rot = emb.rotation[static_cast<std::size_t>(v)];
    for (const auto &[angle, e] : order)
      rot.push_back(e);
  }
  return emb;
}

std::vector<Face> enumerate_faces(const Graph &g, const Embedding &emb, const Coordinates &coords) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  if (static_cast<int>(emb.rotation.size()) != n)
    throw EmbeddingError("rotation system has wrong vertex count");
  if (static_cast<int>(coords.size()) != n)
    throw InputError("coordinate count does not match vertex count");

  // Half-edge h = 2e + side, side 0 leaves edge(e).u, side 1 leaves edge(e).v.
  // rot_pos[h] = index of e in the rotation of the tail of h.
  std::vector<int> rot_pos(static_cast<std::size_t>(2 * m), -1);
  for (Vertex v = 0; v < n; ++v) {
    const auto &rot = emb.rotation[static_cast<std::size_t>(v)];
    if (static_cast<int>(rot.size()) != g.degree(v))
      throw EmbeddingError("rotation at vertex " + std::to_string(v) + " has " +
                           std::to_string(rot.size()) + " entries, degree is " +
                           std::to_string(g.degree(v)));
    for (std::size_t i = 0; i < rot.size(); ++i) {
      EdgeId e = rot[i];
      if (!g.valid_edge(e))
        throw EmbeddingError("rotation references unknown edge " + std::to_string(e));
      const Edge &ed = g.edge(e);
      int side = ed.u == v ? 0 : (ed.v == v ? 1 : -1);
      if (side < 0)
        throw EmbeddingError("edge " + std::to_string(e) + " is not incident to vertex " +
                             std::to_string(v));
      int &slot = rot_pos[static_cast<std::size_t>(2 * e + side)];
      if (slot >= 0)
        throw EmbeddingError("edge " + std::to_string(e) + " repeated at vertex " +
                             std::to_string(v));
      slot = static_cast<int>(i);
    }
  }

  auto tail = [&](int h) { const Edge &ed = g.edge(h / 2); return h % 2 == 0 ? ed.u : ed.v; };
  auto head = [&](int h) { const Edge &ed = g.edge(h / 2); return h % 2 == 0 ? ed.v : ed.u; };
  auto half_from = [&](EdgeId e, Vertex v) { return 2 * e + (g.edge(e).u == v ? 0 : 1); };

  std::vector<bool> used(static_cast<std::size_t>(2 * m), false);
  std::vector<Face> faces;
  for (int start = 0; start < 2 * m; ++start) {
    if (used[static_cast<std::size_t>(start)])
      continue;
    Face face;
    int h = start;
    do {
      used[static_cast<std::size_t>(h)] = true;
      face.boundary.push_back(tail(h));
      face.edges.push_back(h / 2);
      // Arriving at v along e, leave along the edge preceding e in v's
      // counterclockwise order: the face stays on the left of the walk.
      Vertex v = head(h);
      const auto &rot = emb.rotation[static_cast<std::size_t>(v)];
      int twin = h ^ 1;
      int idx = rot_pos[static_cast<std::size_t>(twin)];
      int k = static_cast<int>(rot.size());
      EdgeId next = rot[static_cast<std::size_t>((idx + k - 1) % k)];
      h = half_from(next, v);
    } while (h != start);

    double area2 = 0.0;
    const std::size_t len = face.boundary.size();
    for (std::size_t i = 0; i < len; ++i) {
      const Point &a = coords[static_cast<std::size_t>(face.boundary[i])];
      const Point &b = coords[static_cast<std::size_t>(face.boundary[(i + 1) % len])];
      area2 += a.x * b.y - b.x * a.y;
    }
    face.signed_area = area2 / 2.0;
    std::sort(face.edges.begin(), face.edges.end());
    face.edges.erase(std::unique(face.edges.begin(), face.edges.end()), face.edges.end());
    faces.push_back(std::move(face));
  }

  int comp_count = 0;
  auto comp = connected_components(g, &comp_count);
  std::vector<int> outer(static_cast<std::size_t>(comp_count), -1);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    int c = comp[static_cast<std::size_t>(faces[i].boundary.front())];
    int &best = outer[static_cast<std::size_t>(c)];
    if (best < 0) {
      best = static_cast<int>(i);
      continue;
    }
    const Face &cur = faces[static_cast<std::size_t>(best)];
    double a = std::abs(faces[i].signed_area);
    double b = std::abs(cur.signed_area);
    if (a > b || (a == b && faces[i].boundary.size() > cur.boundary.size()))
      best = static_cast<int>(i);
  }
  for (int idx : outer)
    if (idx >= 0)
      faces[static_cast<std::size_t>(idx)].is_outer = true;
  return faces;
}

bool is_face_habitat(const std::vector<Face> &faces, const Habitat &h) {
  for (const Face &f : faces) {
    if (f.is_outer || f.boundary.size() != h.size() || !f.is_simple_cycle())
      continue;
    std::vector<Vertex> vs = f.boundary;
    std::sort(vs.begin(), vs.end());
    if (std::equal(vs.begin(), vs.end(), h.vertices().begin()))
      return true;
  }
  return false;
}

FaceCounts count_faces(const std::vector<Face> &faces) {
  FaceCounts counts;
  counts.total = static_cast<int>(faces.size());
  counts.inner = static_cast<int>(
      std::count_if(faces.begin(), faces.end(), [](const Face &f) { return !f.is_outer; }));
  return counts;
}

namespace {

double orient(const Point &a, const Point &b, const Point &c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool on_segment(const Point &a, const Point &b, const Point &p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Point &p1, const Point &p2, const Point &q1, const Point &q2) {
  double d1 = orient(q1, q2, p1);
  double d2 = orient(q1, q2, p2);
  double d3 = orient(p1, p2, q1);
  double d4 = orient(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  return (d1 == 0 && on_segment(q1, q2, p1)) || (d2 == 0 && on_segment(q1, q2, p2)) ||
         (d3 == 0 && on_segment(p1, p2, q1)) || (d4 == 0 && on_segment(p1, p2, q2));
}

} // namespace

bool has_crossing(const Graph &g, const Coordinates &coords) {
  auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge &a = edges[i];
      const Edge &b = edges[j];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v)
        continue;
      if (segments_intersect(coords[static_cast<std::size_t>(a.u)],
                             coords[static_cast<std::size_t>(a.v)],
                             coords[static_cast<std::size_t>(b.u)],
                             coords[static_cast<std::size_t>(b.v)]))
        return true;
    }
  return false;
}

} // namespace gbp
