#include "jigsaw/template.hpp"

#include <algorithm>
#include <map>

#include "jigsaw/rng.hpp"
#include "jigsaw/union_find.hpp"

namespace jigsaw {

namespace {

VertexSet box_vertices(int k) {
  VertexSet out;
  for (int x = -k; x <= k; ++x)
    for (int y = -k; y <= k; ++y) out.insert({x, y});
  return out;
}

EdgeSet star(Vertex v) {
  auto edges = edges_at(v);
  return EdgeSet(edges.begin(), edges.end());
}

bool is_rigid(const PlacementMap& h, const VertexSet& set) {
  if (set.empty()) return true;
  Vertex offset = h.at(*set.begin()) - *set.begin();
  for (const Vertex& v : set)
    if (h.at(v) - v != offset) return false;
  return true;
}

struct QuasiblockLayout {
  std::vector<VertexSet> component;   // components of D([-k,k]^2, A)
  std::vector<VertexSet> quasiblock;  // vertices of each component incident to A
  int boundary = -1;                  // index of the component holding the box rim
};

QuasiblockLayout quasiblocks_of(int k, const EdgeSet& A) {
  QuasiblockLayout layout;
  VertexSet box = box_vertices(k);
  layout.component = components(box, A);
  layout.quasiblock.resize(layout.component.size());
  for (size_t i = 0; i < layout.component.size(); ++i) {
    for (const Vertex& v : layout.component[i]) {
      bool incident = false;
      for (const Edge& e : edges_at(v)) incident = incident || A.count(e);
      if (incident) layout.quasiblock[i].insert(v);
    }
    if (layout.component[i].count({-k, -k})) layout.boundary = static_cast<int>(i);
  }
  return layout;
}

}  // namespace

TemplateValidation validate_template(const Template& t, JigsawParams params) {
  validate(params);
  int k = t.k;
  if (k < 1) return TemplateRejection{0, "window radius must be >= 1"};
  VertexSet box = box_vertices(k);
  EdgeSet window_edges = incident_edges(box);
  for (const Edge& e : t.A)
    if (!window_edges.count(e))
      return TemplateRejection{0, "edge outside the extended window"};
  if (!t.h.maps_into(params.n))
    return TemplateRejection{0, "image leaves [n]^2"};

  // (1) an edge incident to the origin
  bool origin_edge = false;
  for (const Edge& e : t.A) origin_edge = origin_edge || e.touches({0, 0});
  if (!origin_edge) return TemplateRejection{1, "no edge incident to (0,0)"};

  // (2) not exactly the four edges around the origin or one of its neighbours
  for (const Vertex& w :
       {Vertex{0, 0}, Vertex{0, 1}, Vertex{1, 0}, Vertex{0, -1}, Vertex{-1, 0}})
    if (t.A == star(w))
      return TemplateRejection{2, "A is a single vertex star"};

  // (3) dual-connected
  if (dual_components(t.A).size() != 1)
    return TemplateRejection{3, "A is not dual-connected"};

  QuasiblockLayout layout = quasiblocks_of(k, t.A);
  VertexSet domain;
  for (const VertexSet& qb : layout.quasiblock) domain.insert(qb.begin(), qb.end());
  if (t.h.domain() != domain)
    return TemplateRejection{0, "h domain differs from the quasiblock union"};

  // (4) centre pinned
  if (!t.h.contains({0, 0}) || t.h.at({0, 0}) != t.centre)
    return TemplateRejection{4, "h(0,0) != centre"};

  // (5) boundary of the box wholly in or wholly out
  Boundaries box_b = boundaries(box);
  bool contains_all = true, meets = false;
  for (const Edge& e : box_b.boundary) {
    if (t.A.count(e))
      meets = true;
    else
      contains_all = false;
  }
  if (meets && !contains_all)
    return TemplateRejection{5, "A meets the box boundary only partially"};
  bool large = contains_all;

  // (6) each quasiblock h-rigid
  for (const VertexSet& qb : layout.quasiblock)
    if (!is_rigid(t.h, qb)) return TemplateRejection{6, "quasiblock not h-rigid"};

  // (7) each edge of A* = A intersect Lambda(box) is h-split
  auto block_sets = blocks(t.h);
  std::map<Vertex, int> block_of;
  for (size_t i = 0; i < block_sets.size(); ++i)
    for (const Vertex& v : block_sets[i]) block_of[v] = static_cast<int>(i);
  for (const Edge& e : t.A) {
    if (!box.count(e.base) || !box.count(e.other())) continue;
    if (block_of.at(e.base) == block_of.at(e.other()))
      return TemplateRejection{7, "edge of A* is not h-split"};
  }

  // Classified and accepted; assemble the type data.
  TemplateInfo info;
  info.kind = large ? TemplateKind::Large : TemplateKind::Small;
  info.delta = static_cast<int>(t.A.size());
  info.gamma = gamma(t.h);

  int m = static_cast<int>(layout.quasiblock.size());
  std::vector<VertexSet> image(m);
  std::vector<EdgeSet> external(m), internal(m);
  for (int i = 0; i < m; ++i) {
    for (const Vertex& v : layout.quasiblock[i]) image[i].insert(t.h.at(v));
    Boundaries b = boundaries(image[i]);
    external[i] = std::move(b.external);
    internal[i] = std::move(b.internal);
  }

  // Two quasiblocks are adjacent when some lattice edge between their images
  // lies in the external boundary of both; for the boundary quasiblock of a
  // small template the rule uses its internal boundary instead.
  int boundary_qb = large ? -1 : layout.boundary;
  UnionFind uf(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const EdgeSet& side_i = (i == boundary_qb) ? internal[i] : external[i];
      const EdgeSet& side_j = (j == boundary_qb) ? internal[j] : external[j];
      bool adjacent = false;
      for (const Vertex& v : image[i]) {
        for (const Vertex& d : kSteps) {
          Vertex u = v + d;
          if (!image[j].count(u)) continue;
          Edge e = Edge::between(v, u);
          if (side_i.count(e) && side_j.count(e)) {
            adjacent = true;
            break;
          }
        }
        if (adjacent) break;
      }
      if (adjacent) uf.unite(i, j);
    }
  }
  info.r1 = uf.component_count();
  info.r2 = m - info.r1;
  return info;
}

namespace {

struct IRect {
  int x0, y0, x1, y1;  // inclusive
  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
  bool contains(Vertex v) const {
    return v.x >= x0 && v.x <= x1 && v.y >= y0 && v.y <= y1;
  }
  bool overlaps(const IRect& o) const {
    return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
  }
};

// Splits the window box into 2..6 rectangles; the first cut is biased to pass
// next to the origin so that an origin-incident split edge is likely.
std::vector<IRect> random_partition(int k, int parts, Rng& rng) {
  std::vector<IRect> rects{{-k, -k, k, k}};
  bool first = true;
  while (static_cast<int>(rects.size()) < parts) {
    std::vector<int> splittable;
    for (int i = 0; i < static_cast<int>(rects.size()); ++i)
      if (rects[i].width() >= 2 || rects[i].height() >= 2) splittable.push_back(i);
    if (splittable.empty()) break;
    int pick = first && rects[0].width() >= 2
                   ? 0
                   : splittable[rng.below(splittable.size())];
    IRect r = rects[pick];
    bool vertical = r.width() >= 2 && (r.height() < 2 || rng.below(2) == 0);
    if (vertical) {
      int cut;  // last column of the left part
      if (first && r.x0 <= -1 && r.x1 >= 1)
        cut = rng.below(2) == 0 ? -1 : 0;  // cut at the origin
      else
        cut = r.x0 + static_cast<int>(rng.below(r.width() - 1));
      rects[pick] = {r.x0, r.y0, cut, r.y1};
      rects.push_back({cut + 1, r.y0, r.x1, r.y1});
    } else {
      int cut;
      if (first && r.y0 <= -1 && r.y1 >= 1)
        cut = rng.below(2) == 0 ? -1 : 0;
      else
        cut = r.y0 + static_cast<int>(rng.below(r.height() - 1));
      rects[pick] = {r.x0, r.y0, r.x1, cut};
      rects.push_back({r.x0, cut + 1, r.x1, r.y1});
    }
    first = false;
  }
  return rects;
}

// A rectangle strictly inside the box with the origin on its rim, so the
// surrounding ring of split edges touches (0,0).
std::optional<IRect> random_origin_rect(int k, Rng& rng) {
  if (k < 2) return std::nullopt;
  int w = 1 + static_cast<int>(rng.below(std::min(k, 3)));
  int h = 1 + static_cast<int>(rng.below(std::min(k, 3)));
  for (int attempt = 0; attempt < 32; ++attempt) {
    int x0, y0;
    switch (rng.below(4)) {
      case 0: x0 = 0; y0 = -static_cast<int>(rng.below(h)); break;            // left rim
      case 1: x0 = -(w - 1); y0 = -static_cast<int>(rng.below(h)); break;     // right rim
      case 2: y0 = 0; x0 = -static_cast<int>(rng.below(w)); break;            // bottom rim
      default: y0 = -(h - 1); x0 = -static_cast<int>(rng.below(w)); break;    // top rim
    }
    IRect r{x0, y0, x0 + w - 1, y0 + h - 1};
    if (r.x0 >= -k + 1 && r.x1 <= k - 1 && r.y0 >= -k + 1 && r.y1 <= k - 1) return r;
  }
  return std::nullopt;
}

std::optional<IRect> random_interior_rect(int k, Rng& rng) {
  if (k < 2) return std::nullopt;
  int w = 1 + static_cast<int>(rng.below(std::min(k, 3)));
  int h = 1 + static_cast<int>(rng.below(std::min(k, 3)));
  int span = 2 * k - 1;  // usable width of the strict interior
  if (w > span || h > span) return std::nullopt;
  int x0 = -k + 1 + static_cast<int>(rng.below(span - w + 1));
  int y0 = -k + 1 + static_cast<int>(rng.below(span - h + 1));
  return IRect{x0, y0, x0 + w - 1, y0 + h - 1};
}

// Disjoint placements of the given shapes inside [n]^2, as offsets. The
// optional `beside` index asks for a placement touching the previous image to
// exercise nontrivial cluster structure.
std::optional<std::vector<Vertex>> place_rects(const std::vector<IRect>& shapes,
                                               int n, Rng& rng, bool allow_touch) {
  std::vector<IRect> placed;
  std::vector<Vertex> offsets;
  for (size_t i = 0; i < shapes.size(); ++i) {
    const IRect& s = shapes[i];
    bool ok = false;
    for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
      Vertex off;
      if (allow_touch && i > 0 && attempt < 8 && rng.below(3) == 0) {
        // try right next to the previous image
        const IRect& p = placed.back();
        off = {p.x1 + 1 - s.x0, p.y0 - s.y0};
      } else {
        off = {1 - s.x0 + static_cast<int>(rng.below(n - s.width() + 1)),
               1 - s.y0 + static_cast<int>(rng.below(n - s.height() + 1))};
      }
      IRect img{s.x0 + off.x, s.y0 + off.y, s.x1 + off.x, s.y1 + off.y};
      if (img.x0 < 1 || img.y0 < 1 || img.x1 > n || img.y1 > n) continue;
      bool clash = false;
      for (const IRect& p : placed) clash = clash || img.overlaps(p);
      if (clash) continue;
      placed.push_back(img);
      offsets.push_back(off);
      ok = true;
    }
    if (!ok) return std::nullopt;
  }
  return offsets;
}

std::optional<PlacementMap> sample_map(int k, int n, Rng& rng) {
  VertexSet box = box_vertices(k);
  std::map<Vertex, Vertex> entries;

  if (rng.below(2) == 0) {
    // Full partition into translated rectangles.
    int parts = 2 + static_cast<int>(rng.below(5));
    auto rects = random_partition(k, parts, rng);
    auto offsets = place_rects(rects, n, rng, true);
    if (!offsets) return std::nullopt;
    for (size_t i = 0; i < rects.size(); ++i)
      for (int x = rects[i].x0; x <= rects[i].x1; ++x)
        for (int y = rects[i].y0; y <= rects[i].y1; ++y)
          entries[{x, y}] = Vertex{x, y} + (*offsets)[i];
  } else {
    // Base block with one or two relocated interior rectangles.
    auto first = random_origin_rect(k, rng);
    if (!first) return std::nullopt;
    std::vector<IRect> moved{*first};
    if (rng.below(2) == 0) {
      auto second = random_interior_rect(k, rng);
      if (second && !second->overlaps(*first)) moved.push_back(*second);
    }
    std::vector<IRect> shapes{{-k, -k, k, k}};
    shapes.insert(shapes.end(), moved.begin(), moved.end());
    auto offsets = place_rects(shapes, n, rng, true);
    if (!offsets) return std::nullopt;
    auto owner = [&](Vertex v) {
      for (size_t i = 0; i < moved.size(); ++i)
        if (moved[i].contains(v)) return i + 1;
      return size_t{0};
    };
    for (const Vertex& v : box) entries[v] = v + (*offsets)[owner(v)];
  }
  return PlacementMap(std::move(entries));
}

}  // namespace

std::optional<Template> template_from_map(const PlacementMap& f, int k,
                                          JigsawParams params) {
  validate(params);
  if (k < 1) throw DataError("template_from_map: k must be >= 1");
  EdgeSet lambda = lambda_f(f);
  EdgeSet splits = split_edges(f);
  auto duals = dual_components(lambda);

  for (const Edge& z : edges_at({0, 0})) {
    if (!splits.count(z)) continue;
    EdgeSet A;
    for (const EdgeSet& comp : duals)
      if (comp.count(z)) A = comp;

    QuasiblockLayout layout = quasiblocks_of(k, A);
    std::map<Vertex, Vertex> entries;
    for (const VertexSet& qb : layout.quasiblock)
      for (const Vertex& v : qb) entries[v] = f.at(v);
    if (!entries.count({0, 0})) continue;

    Template t;
    t.k = k;
    t.A = std::move(A);
    t.h = PlacementMap(std::move(entries));
    t.centre = f.at({0, 0});
    if (std::holds_alternative<TemplateInfo>(validate_template(t, params)))
      return t;
  }
  return std::nullopt;
}

std::optional<Template> sample_template(int k, JigsawParams params, uint64_t seed) {
  validate(params);
  if (k < 1) throw DataError("sample_template: k must be >= 1");
  if (params.n < 2 * k + 1) return std::nullopt;

  Rng rng(mix(seed, static_cast<uint64_t>(k)));
  auto f = sample_map(k, params.n, rng);
  if (!f) return std::nullopt;
  return template_from_map(*f, k, params);
}

}  // namespace jigsaw
