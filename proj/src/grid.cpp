#include "jigsaw/grid.hpp"

#include <cstdlib>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "jigsaw/rng.hpp"
#include "jigsaw/union_find.hpp"

namespace jigsaw {

Edge Edge::between(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  if (v.x == u.x + 1 && v.y == u.y) return {u, Axis::Horizontal};
  if (v.x == u.x && v.y == u.y + 1) return {u, Axis::Vertical};
  throw std::invalid_argument("Edge::between: vertices are not adjacent");
}

size_t VertexHash::operator()(const Vertex& v) const {
  uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(v.x)) << 32) |
                 static_cast<uint32_t>(v.y);
  return static_cast<size_t>(mix64(key));
}

size_t EdgeHash::operator()(const Edge& e) const {
  uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(e.base.x)) << 33) ^
                 (static_cast<uint64_t>(static_cast<uint32_t>(e.base.y)) << 1) ^
                 static_cast<uint64_t>(e.axis);
  return static_cast<size_t>(mix64(key));
}

std::array<Edge, 4> edges_at(Vertex v) {
  return {Edge{v, Axis::Vertical},                      // towards e1
          Edge{v, Axis::Horizontal},                    // towards e2
          Edge{{v.x, v.y - 1}, Axis::Vertical},         // towards e3
          Edge{{v.x - 1, v.y}, Axis::Horizontal}};      // towards e4
}

std::array<Edge, 6> dual_neighbours(const Edge& e) {
  int x = e.base.x, y = e.base.y;
  if (e.axis == Axis::Horizontal) {
    // faces (x, y) above and (x, y-1) below
    return {Edge{{x, y + 1}, Axis::Horizontal}, Edge{{x, y}, Axis::Vertical},
            Edge{{x + 1, y}, Axis::Vertical},   Edge{{x, y - 1}, Axis::Horizontal},
            Edge{{x, y - 1}, Axis::Vertical},   Edge{{x + 1, y - 1}, Axis::Vertical}};
  }
  // faces (x, y) to the right and (x-1, y) to the left
  return {Edge{{x + 1, y}, Axis::Vertical},   Edge{{x, y}, Axis::Horizontal},
          Edge{{x, y + 1}, Axis::Horizontal}, Edge{{x - 1, y}, Axis::Vertical},
          Edge{{x - 1, y}, Axis::Horizontal}, Edge{{x - 1, y + 1}, Axis::Horizontal}};
}

EdgeSet induced_edges(const VertexSet& X) {
  EdgeSet out;
  for (const Vertex& v : X) {
    if (X.count({v.x + 1, v.y})) out.insert({v, Axis::Horizontal});
    if (X.count({v.x, v.y + 1})) out.insert({v, Axis::Vertical});
  }
  return out;
}

EdgeSet incident_edges(const VertexSet& X) {
  EdgeSet out;
  for (const Vertex& v : X)
    for (const Edge& e : edges_at(v)) out.insert(e);
  return out;
}

Boundaries boundaries(const VertexSet& X) {
  Boundaries b;
  if (X.empty()) return b;

  int minx = X.begin()->x, maxx = minx, miny = X.begin()->y, maxy = miny;
  for (const Vertex& v : X) {
    minx = std::min(minx, v.x);
    maxx = std::max(maxx, v.x);
    miny = std::min(miny, v.y);
    maxy = std::max(maxy, v.y);
  }
  // Inflate the box by one so its frontier is entirely outside X.
  minx--; maxx++; miny--; maxy++;

  auto inside_box = [&](Vertex v) {
    return v.x >= minx && v.x <= maxx && v.y >= miny && v.y <= maxy;
  };

  std::unordered_set<Vertex, VertexHash> infinite;
  std::deque<Vertex> queue;
  auto push = [&](Vertex v) {
    if (inside_box(v) && !X.count(v) && infinite.insert(v).second) queue.push_back(v);
  };
  for (int x = minx; x <= maxx; ++x) {
    push({x, miny});
    push({x, maxy});
  }
  for (int y = miny; y <= maxy; ++y) {
    push({minx, y});
    push({maxx, y});
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (const Vertex& d : kSteps) push(v + d);
  }

  for (const Vertex& v : X) {
    for (const Vertex& d : kSteps) {
      Vertex u = v + d;
      if (X.count(u)) continue;
      Edge e = Edge::between(v, u);
      b.boundary.insert(e);
      if (infinite.count(u)) {
        b.external.insert(e);
        b.vertex_boundary.insert(v);
      } else {
        b.internal.insert(e);
      }
    }
  }
  return b;
}

std::vector<VertexSet> components(const VertexSet& X, const EdgeSet& deleted) {
  std::vector<Vertex> verts(X.begin(), X.end());
  std::map<Vertex, int> index;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) index[verts[i]] = i;

  UnionFind uf(static_cast<int>(verts.size()));
  for (const Vertex& v : X) {
    for (Axis axis : {Axis::Horizontal, Axis::Vertical}) {
      Edge e{v, axis};
      if (!X.count(e.other())) continue;
      if (deleted.count(e)) continue;
      uf.unite(index[v], index[e.other()]);
    }
  }

  std::map<int, VertexSet> groups;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i)
    groups[uf.find(i)].insert(verts[i]);

  std::vector<VertexSet> out;
  out.reserve(groups.size());
  for (auto& [root, set] : groups) out.push_back(std::move(set));
  // `groups` is keyed by root index; the smallest root carries the smallest
  // vertex, so this order is already by minimum vertex.
  return out;
}

std::vector<EdgeSet> dual_components(const EdgeSet& A) {
  std::vector<Edge> edges(A.begin(), A.end());
  std::map<Edge, int> index;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) index[edges[i]] = i;

  UnionFind uf(static_cast<int>(edges.size()));
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    for (const Edge& d : dual_neighbours(edges[i])) {
      auto it = index.find(d);
      if (it != index.end()) uf.unite(i, it->second);
    }
  }

  std::map<int, EdgeSet> groups;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    groups[uf.find(i)].insert(edges[i]);

  std::vector<EdgeSet> out;
  out.reserve(groups.size());
  for (auto& [root, set] : groups) out.push_back(std::move(set));
  return out;
}

bool complement_connected(int n, const VertexSet& X) {
  VertexSet rest;
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      if (!X.count({x, y})) rest.insert({x, y});
  if (rest.size() <= 1) return true;

  std::unordered_set<Vertex, VertexHash> seen;
  std::deque<Vertex> queue{*rest.begin()};
  seen.insert(*rest.begin());
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (const Vertex& d : kSteps) {
      Vertex u = v + d;
      if (rest.count(u) && seen.insert(u).second) queue.push_back(u);
    }
  }
  return seen.size() == rest.size();
}

}  // namespace jigsaw
