#pragma once
// Lattice primitives of Z^2: vertices, canonical edges, boundary operators,
// connectivity and dual-connectivity. Everything here is a pure function over
// plain values, safe to call from any number of workers.
#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

namespace jigsaw {

struct Vertex {
  int x = 0, y = 0;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

inline Vertex operator+(Vertex a, Vertex b) { return {a.x + b.x, a.y + b.y}; }
inline Vertex operator-(Vertex a, Vertex b) { return {a.x - b.x, a.y - b.y}; }

// Direction order follows the tile convention: e1 = up, e2 = right,
// e3 = down, e4 = left.
enum class Direction : uint8_t { E1 = 0, E2 = 1, E3 = 2, E4 = 3 };

inline constexpr std::array<Vertex, 4> kSteps{{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};

inline Vertex step(Direction d) { return kSteps[static_cast<int>(d)]; }
inline Direction opposite(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 2) % 4);
}

enum class Axis : uint8_t { Horizontal = 0, Vertical = 1 };

// A lattice edge in canonical form: `base` is the lexicographically smaller
// endpoint; the other endpoint lies one step east (Horizontal) or north
// (Vertical). Each edge has exactly one representation.
struct Edge {
  Vertex base;
  Axis axis = Axis::Horizontal;

  friend auto operator<=>(const Edge&, const Edge&) = default;

  Vertex other() const {
    return axis == Axis::Horizontal ? base + Vertex{1, 0} : base + Vertex{0, 1};
  }
  bool touches(Vertex v) const { return base == v || other() == v; }

  // Canonical edge between two lattice-adjacent vertices.
  static Edge between(Vertex u, Vertex v);
};

struct VertexHash {
  size_t operator()(const Vertex& v) const;
};
struct EdgeHash {
  size_t operator()(const Edge& e) const;
};

using VertexSet = std::set<Vertex>;
using EdgeSet = std::set<Edge>;

// The four edges incident to v, in direction order (up, right, down, left).
std::array<Edge, 4> edges_at(Vertex v);

// The six edges sharing a face with e (neighbours in the planar dual).
std::array<Edge, 6> dual_neighbours(const Edge& e);

// Lambda(X): edges with both endpoints in X.
EdgeSet induced_edges(const VertexSet& X);

// LambdaBar(X) = Lambda(X) united with the boundary of X.
EdgeSet incident_edges(const VertexSet& X);

struct Boundaries {
  EdgeSet boundary;       // edges with exactly one endpoint in X
  EdgeSet external;       // subset reaching the infinite complement component
  EdgeSet internal;       // boundary minus external
  VertexSet vertex_boundary;  // vertices of X incident to an external edge
};

// Boundary decomposition of a finite set. The infinite component of the
// complement is found by flood fill over the bounding box inflated by one;
// any escape to the box frontier reaches infinity.
Boundaries boundaries(const VertexSet& X);

// Connected components of the graph on X whose edges are the induced edges
// of X minus `deleted`. Components are ordered by their minimum vertex.
std::vector<VertexSet> components(const VertexSet& X, const EdgeSet& deleted);

// Partition of A into maximal dual-connected pieces, ordered by minimum edge.
std::vector<EdgeSet> dual_components(const EdgeSet& A);

inline bool in_grid(int n, Vertex v) {
  return v.x >= 1 && v.x <= n && v.y >= 1 && v.y <= n;
}

// True iff [n]^2 minus X is connected (an empty complement counts as
// connected).
bool complement_connected(int n, const VertexSet& X);

}  // namespace jigsaw
