#include "jigsaw/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "jigsaw/parallel.hpp"
#include "jigsaw/rng.hpp"
#include "jigsaw/union_find.hpp"

namespace jigsaw {

PlacementMap::PlacementMap(std::map<Vertex, Vertex> entries)
    : entries_(std::move(entries)) {
  VertexSet images;
  for (const auto& [from, to] : entries_)
    if (!images.insert(to).second) throw DataError("placement map: not injective");
}

PlacementMap PlacementMap::translation(const VertexSet& domain, Vertex offset) {
  std::map<Vertex, Vertex> entries;
  for (const Vertex& v : domain) entries[v] = v + offset;
  return PlacementMap(std::move(entries));
}

VertexSet PlacementMap::domain() const {
  VertexSet out;
  for (const auto& [from, to] : entries_) out.insert(from);
  return out;
}

bool PlacementMap::maps_into(int n) const {
  for (const auto& [from, to] : entries_)
    if (!in_grid(n, to)) return false;
  return true;
}

namespace {

// Block id per domain vertex: adjacent vertices whose displacement is
// preserved get united; the resulting classes are exactly the maximal
// connected rigid subsets.
std::pair<std::vector<Vertex>, std::vector<int>> block_ids(const PlacementMap& f) {
  std::vector<Vertex> verts;
  verts.reserve(f.size());
  for (const auto& [from, to] : f.entries()) verts.push_back(from);
  std::map<Vertex, int> index;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) index[verts[i]] = i;

  UnionFind uf(static_cast<int>(verts.size()));
  for (const Vertex& v : verts) {
    for (Axis axis : {Axis::Horizontal, Axis::Vertical}) {
      Edge e{v, axis};
      Vertex u = e.other();
      if (!f.contains(u)) continue;
      if (f.at(u) - f.at(v) == u - v) uf.unite(index[v], index[u]);
    }
  }
  std::vector<int> ids(verts.size());
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) ids[i] = uf.find(i);
  return {std::move(verts), std::move(ids)};
}

}  // namespace

std::vector<VertexSet> blocks(const PlacementMap& f) {
  auto [verts, ids] = block_ids(f);
  std::map<int, VertexSet> groups;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i)
    groups[ids[i]].insert(verts[i]);
  std::vector<VertexSet> out;
  out.reserve(groups.size());
  for (auto& [root, set] : groups) out.push_back(std::move(set));
  return out;
}

EdgeSet split_edges(const PlacementMap& f) {
  auto [verts, ids] = block_ids(f);
  std::map<Vertex, int> id_of;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) id_of[verts[i]] = ids[i];

  EdgeSet out;
  for (const Vertex& v : verts) {
    for (Axis axis : {Axis::Horizontal, Axis::Vertical}) {
      Edge e{v, axis};
      if (!f.contains(e.other())) continue;
      if (id_of[v] != id_of[e.other()]) out.insert(e);
    }
  }
  return out;
}

EdgeSet lambda_f(const PlacementMap& f) {
  EdgeSet out = split_edges(f);
  Boundaries b = boundaries(f.domain());
  out.insert(b.boundary.begin(), b.boundary.end());
  return out;
}

ConstraintGraph constraint_graph(const PlacementMap& f) {
  ConstraintGraph g;
  std::map<Edge, int> index;
  auto vertex_id = [&](const Edge& e) {
    auto [it, inserted] = index.insert({e, static_cast<int>(g.vertices.size())});
    if (inserted) g.vertices.push_back(e);
    return it->second;
  };

  for (const Edge& e : split_edges(f)) {
    Vertex x = e.base, y = e.other();
    Vertex dir = y - x;
    // Constraint joining {f(x), f(x)+e_i} and {f(y), f(y)-e_i}.
    Edge a = Edge::between(f.at(x), f.at(x) + dir);
    Edge b = Edge::between(f.at(y), f.at(y) - dir);
    g.constraints.push_back({vertex_id(a), vertex_id(b)});
  }

  UnionFind uf(static_cast<int>(g.vertices.size()));
  for (const auto& [a, b] : g.constraints) uf.unite(a, b);
  g.component_of.resize(g.vertices.size());
  std::map<int, int> roots;
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
    int root = uf.find(i);
    auto [it, inserted] = roots.insert({root, static_cast<int>(roots.size())});
    g.component_of[i] = it->second;
  }
  g.num_components = static_cast<int>(roots.size());
  g.gamma = static_cast<int>(g.vertices.size()) - g.num_components;
  return g;
}

int gamma(const PlacementMap& f) { return constraint_graph(f).gamma; }

bool is_feasible(const Jigsaw& j, const PlacementMap& f) {
  for (const auto& [x, fx] : f.entries()) {
    for (Axis axis : {Axis::Horizontal, Axis::Vertical}) {
      Edge e{x, axis};
      Vertex y = e.other();
      if (!f.contains(y)) continue;
      Vertex dir = y - x;
      Vertex fy = f.at(y);
      if (j.colour(Edge::between(fx, fx + dir)) !=
          j.colour(Edge::between(fy, fy - dir)))
        return false;
    }
  }
  return true;
}

bool is_feasible_components(const Jigsaw& j, const PlacementMap& f) {
  ConstraintGraph g = constraint_graph(f);
  std::vector<int> seen_colour(g.num_components, -1);
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
    int comp = g.component_of[i];
    int colour = static_cast<int>(j.colour(g.vertices[i]));
    if (seen_colour[comp] == -1)
      seen_colour[comp] = colour;
    else if (seen_colour[comp] != colour)
      return false;
  }
  return true;
}

FeasibilityMc feasibility_mc(const PlacementMap& f, JigsawParams params,
                             int64_t trials, uint64_t seed, int jobs) {
  validate(params);
  if (trials < 1) throw DataError("feasibility_mc: trials must be >= 1");
  if (!f.maps_into(params.n)) throw DataError("feasibility_mc: image leaves [n]^2");

  FeasibilityMc result;
  result.gamma = gamma(f);
  result.trials = trials;
  result.exact = std::pow(static_cast<double>(params.q), -result.gamma);

  std::vector<uint8_t> hit(trials, 0);
  parallel_for(trials, jobs, [&](int64_t t) {
    Jigsaw j = Jigsaw::generate(params, derive_seed(seed, params.n, params.q,
                                                    static_cast<uint64_t>(t)));
    hit[t] = is_feasible(j, f) ? 1 : 0;
  });
  for (int64_t t = 0; t < trials; ++t) result.hits += hit[t];

  result.empirical = static_cast<double>(result.hits) / static_cast<double>(trials);
  result.std_error =
      std::sqrt(result.exact * (1.0 - result.exact) / static_cast<double>(trials));
  result.z = result.std_error > 0.0
                 ? (result.empirical - result.exact) / result.std_error
                 : 0.0;
  return result;
}

void write_placement_map(std::ostream& out, const PlacementMap& f) {
  for (const auto& [from, to] : f.entries())
    out << from.x << ' ' << from.y << " -> " << to.x << ' ' << to.y << '\n';
}

PlacementMap read_placement_map(std::istream& in) {
  std::map<Vertex, Vertex> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    Vertex from, to;
    std::string arrow;
    if (!(row >> from.x >> from.y >> arrow >> to.x >> to.y) || arrow != "->")
      throw DataError("placement map: expected lines \"x y -> x' y'\"");
    std::string tail;
    if (row >> tail) throw DataError("placement map: trailing data on line");
    if (!entries.insert({from, to}).second)
      throw DataError("placement map: duplicate domain vertex");
  }
  return PlacementMap(std::move(entries));
}

}  // namespace jigsaw
