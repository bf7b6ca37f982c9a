#include "jigsaw/reconstruct.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <unordered_map>

#include "jigsaw/parallel.hpp"
#include "jigsaw/union_find.hpp"

namespace jigsaw {

const char* to_string(FailureReason r) {
  switch (r) {
    case FailureReason::NoBulk: return "no_bulk";
    case FailureReason::InconsistentComponent: return "inconsistent_component";
    case FailureReason::AmbiguousWindowTile: return "ambiguous_window_tile";
    case FailureReason::ExtensionAmbiguous: return "extension_ambiguous";
    case FailureReason::ExtensionIncomplete: return "extension_incomplete";
    case FailureReason::DeckMismatch: return "deck_mismatch";
    case FailureReason::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

namespace {

AdjacencyGraph build_graph(const TileIndex& index, int k, uint64_t budget, int jobs) {
  AdjacencyGraph graph;
  std::vector<int> node_tile_id;
  std::unordered_map<int, int> node_of;
  for (int id = 0; id < index.size(); ++id) {
    if (index.deck_count(id) != 1) continue;
    node_of[id] = static_cast<int>(graph.nodes.size());
    graph.nodes.push_back(index.value(id));
    node_tile_id.push_back(id);
  }
  graph.arcs.assign(graph.nodes.size(), {-1, -1, -1, -1});

  std::vector<WindowResult> results(graph.nodes.size());
  WindowOptions options;
  options.budget = budget;
  parallel_for(static_cast<int64_t>(graph.nodes.size()), jobs, [&](int64_t i) {
    results[i] = enumerate_windows(index, graph.nodes[i], k, options);
  });

  for (size_t i = 0; i < graph.nodes.size(); ++i) {
    const WindowResult& r = results[i];
    graph.window_stats.nodes_expanded += r.nodes_expanded;
    switch (r.status) {
      case WindowStatus::UniqueTuple: {
        graph.window_stats.unique++;
        const NeighbourTuple& tuple = r.tuple();
        for (int d = 0; d < 4; ++d) {
          int tid = index.id_of(tuple[d]);
          if (tid >= 0 && index.deck_count(tid) == 1)
            graph.arcs[i][d] = node_of.at(tid);
        }
        break;
      }
      case WindowStatus::Ambiguous: graph.window_stats.ambiguous++; break;
      case WindowStatus::NoWindow: graph.window_stats.no_window++; break;
      case WindowStatus::BudgetExceeded: graph.window_stats.budget_exceeded++; break;
    }
  }
  return graph;
}

}  // namespace

AdjacencyGraph build_adjacency_graph(const Deck& deck, int k, uint64_t budget,
                                     int jobs) {
  TileIndex index(deck);
  return build_graph(index, k, budget, jobs);
}

std::vector<std::vector<int>> graph_components(const AdjacencyGraph& graph) {
  int n = static_cast<int>(graph.nodes.size());
  UnionFind uf(n);
  for (int u = 0; u < n; ++u)
    for (int d = 0; d < 4; ++d)
      if (graph.arcs[u][d] >= 0) uf.unite(u, graph.arcs[u][d]);

  std::map<int, std::vector<int>> groups;
  for (int u = 0; u < n; ++u) groups[uf.find(u)].push_back(u);
  std::vector<std::vector<int>> out;
  out.reserve(groups.size());
  for (auto& [root, nodes] : groups) out.push_back(std::move(nodes));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return out;
}

std::optional<PartialAssembly> assemble_component(const AdjacencyGraph& graph,
                                                  const std::vector<int>& component) {
  if (component.empty()) return std::nullopt;

  // Undirected view with signed labels.
  std::unordered_map<int, std::vector<std::pair<int, Vertex>>> adjacent;
  for (int u : component)
    for (int d = 0; d < 4; ++d) {
      int v = graph.arcs[u][d];
      if (v < 0) continue;
      adjacent[u].push_back({v, kSteps[d]});
      adjacent[v].push_back({u, Vertex{0, 0} - kSteps[d]});
    }

  std::unordered_map<int, Vertex> position;
  std::map<Vertex, int> occupant;
  std::deque<int> queue{component.front()};
  position[component.front()] = {0, 0};
  occupant[{0, 0}] = component.front();
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    Vertex pu = position.at(u);
    for (const auto& [v, step] : adjacent[u]) {
      Vertex pv = pu + step;
      auto it = position.find(v);
      if (it != position.end()) {
        if (it->second != pv) return std::nullopt;  // paths disagree
        continue;
      }
      auto [slot, fresh] = occupant.insert({pv, v});
      if (!fresh) return std::nullopt;  // two tiles collide
      position[v] = pv;
      queue.push_back(v);
    }
  }

  PartialAssembly assembly;
  for (const auto& [pos, node] : occupant) assembly.occupancy[pos] = graph.nodes[node];

  // Every realized adjacency must be feasible.
  for (const auto& [pos, tile] : assembly.occupancy)
    for (int d = 0; d < 2; ++d) {  // up and right suffice
      auto it = assembly.occupancy.find(pos + kSteps[d]);
      if (it == assembly.occupancy.end()) continue;
      if (tile.side(d) != it->second.side((d + 2) % 4)) return std::nullopt;
    }
  return assembly;
}

void fill_holes(PartialAssembly& assembly, const TileIndex& index,
                TileCounter& remaining) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<Vertex> holes;
    for (const auto& [pos, tile] : assembly.occupancy)
      for (const Vertex& d : kSteps)
        if (!assembly.occupancy.count(pos + d)) holes.insert(pos + d);

    for (const Vertex& hole : holes) {
      Tile required;
      bool surrounded = true;
      for (int d = 0; d < 4 && surrounded; ++d) {
        auto it = assembly.occupancy.find(hole + kSteps[d]);
        if (it == assembly.occupancy.end())
          surrounded = false;
        else
          required.c[d] = it->second.side((d + 2) % 4);
      }
      if (!surrounded) continue;
      int id = index.id_of(required);
      // "Exactly one remaining deck tile matches": two identical copies are
      // two matching tiles, so only a multiplicity of one places.
      if (id < 0 || remaining.counts[id] != 1) continue;
      assembly.occupancy[hole] = required;
      remaining.take(id);
      changed = true;
    }
  }
}

SquareSpec largest_square(const PartialAssembly& assembly) {
  if (assembly.occupancy.empty()) return {};
  int minx = assembly.occupancy.begin()->first.x, maxx = minx;
  int miny = assembly.occupancy.begin()->first.y, maxy = miny;
  for (const auto& [pos, tile] : assembly.occupancy) {
    minx = std::min(minx, pos.x);
    maxx = std::max(maxx, pos.x);
    miny = std::min(miny, pos.y);
    maxy = std::max(maxy, pos.y);
  }
  int w = maxx - minx + 1, h = maxy - miny + 1;
  // dp[x][y]: side of the largest occupied square with lower-left (x, y).
  std::vector<std::vector<int>> dp(w + 1, std::vector<int>(h + 1, 0));
  for (int x = w - 1; x >= 0; --x)
    for (int y = h - 1; y >= 0; --y)
      if (assembly.occupancy.count({minx + x, miny + y}))
        dp[x][y] = 1 + std::min({dp[x + 1][y], dp[x][y + 1], dp[x + 1][y + 1]});

  int best = 0;
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) best = std::max(best, dp[x][y]);
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y)
      if (dp[x][y] == best) return {{minx + x, miny + y}, best};
  return {};
}

namespace {

int side_of(Vertex unit) {
  for (int d = 0; d < 4; ++d)
    if (kSteps[d] == unit) return d;
  return -1;
}

struct Extender {
  const TileIndex& index;
  TileCounter& remaining;
  std::map<Vertex, int> grid;  // position -> tile id
  int x0, y0, x1, y1;

  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
  const Tile& at(Vertex p) const { return index.value(grid.at(p)); }

  bool counts_allow(const std::map<int, int>& need) const {
    for (const auto& [id, count] : need)
      if (remaining.counts[id] < count) return false;
    return true;
  }

  // Does any triple (c, l, r) with the given mate buckets satisfy the
  // multiset discipline?
  bool mates_exist(int c, std::span<const int> left_bucket,
                   std::span<const int> right_bucket) const {
    for (int l : left_bucket) {
      for (int r : right_bucket) {
        std::map<int, int> need{{c, 1}};
        need[l]++;
        need[r]++;
        if (counts_allow(need)) return true;
      }
    }
    return false;
  }

  enum class LineResult { Placed, Closed, Ambiguous };

  // Attempts to add one full line of tiles beyond the rectangle edge in the
  // outward direction w; lateral runs along the line.
  LineResult add_line(Vertex w, Vertex lateral) {
    int sw = side_of(w), sow = side_of(Vertex{0, 0} - w);
    int sl = side_of(lateral), sol = side_of(Vertex{0, 0} - lateral);

    Vertex low, high;  // corner base positions of the current front edge
    if (w.y == 1) { low = {x0, y1}; high = {x1, y1}; }
    else if (w.y == -1) { low = {x0, y0}; high = {x1, y0}; }
    else if (w.x == -1) { low = {x0, y0}; high = {x0, y1}; }
    else { low = {x1, y0}; high = {x1, y1}; }
    int len = (w.x == 0) ? width() : height();

    // Unique new tile over every non-corner front cell, per the triple rule.
    std::vector<int> choice(len, -1);
    for (int i = 1; i + 1 < len; ++i) {
      Vertex base = low;
      base.x += lateral.x * i;
      base.y += lateral.y * i;
      std::span<const int> candidates = index.bucket(sow, at(base).side(sw));
      uint32_t left_base_colour = at(base - lateral).side(sw);
      uint32_t right_base_colour = at(base + lateral).side(sw);
      int found = -1;
      for (int c : candidates) {
        if (remaining.counts[c] == 0) continue;
        const Tile& ct = index.value(c);
        auto left_bucket = index.bucket(sow, left_base_colour, sl, ct.side(sol));
        auto right_bucket = index.bucket(sow, right_base_colour, sol, ct.side(sl));
        if (!mates_exist(c, left_bucket, right_bucket)) continue;
        if (found >= 0) return LineResult::Ambiguous;  // two distinct choices
        found = c;
      }
      if (found < 0) return LineResult::Closed;  // no feasible triple
      choice[i] = found;
    }

    // The per-cell unique choices must also agree with each other and fit the
    // remaining multiset jointly; treat a violation like an exhausted front.
    std::map<int, int> need;
    for (int i = 1; i + 1 < len; ++i) {
      if (i > 1 && index.value(choice[i - 1]).side(sl) !=
                       index.value(choice[i]).side(sol))
        return LineResult::Closed;
      need[choice[i]]++;
    }
    if (!counts_allow(need)) return LineResult::Closed;

    // Corner pair: exactly one feasible (low, high) pair of values.
    std::pair<int, int> corner{-1, -1};
    int corner_pairs = 0;
    if (len >= 3) {
      auto low_bucket = index.bucket(sow, at(low).side(sw), sl,
                                     index.value(choice[1]).side(sol));
      auto high_bucket = index.bucket(sow, at(high).side(sw), sol,
                                      index.value(choice[len - 2]).side(sl));
      for (int a : low_bucket) {
        for (int b : high_bucket) {
          std::map<int, int> total = need;
          total[a]++;
          total[b]++;
          if (!counts_allow(total)) continue;
          if (corner_pairs == 0) corner = {a, b};
          if (corner != std::make_pair(a, b)) return LineResult::Ambiguous;
          corner_pairs = 1;
        }
      }
    } else {
      // Width-two front: the two corner tiles face each other directly.
      auto low_bucket = index.bucket(sow, at(low).side(sw));
      auto high_bucket = index.bucket(sow, at(high).side(sw));
      for (int a : low_bucket) {
        const Tile& ta = index.value(a);
        for (int b : high_bucket) {
          if (ta.side(sl) != index.value(b).side(sol)) continue;
          std::map<int, int> total = need;
          total[a]++;
          total[b]++;
          if (!counts_allow(total)) continue;
          if (corner_pairs == 0) corner = {a, b};
          if (corner != std::make_pair(a, b)) return LineResult::Ambiguous;
          corner_pairs = 1;
        }
      }
    }
    if (corner_pairs != 1) return LineResult::Ambiguous;

    // Commit the line.
    auto place = [&](Vertex base, int id) {
      grid[base + w] = id;
      remaining.take(id);
    };
    for (int i = 1; i + 1 < len; ++i) {
      Vertex base = low;
      base.x += lateral.x * i;
      base.y += lateral.y * i;
      place(base, choice[i]);
    }
    place(low, corner.first);
    place(high, corner.second);
    if (w.y == 1) y1++;
    else if (w.y == -1) y0--;
    else if (w.x == -1) x0--;
    else x1++;
    return LineResult::Placed;
  }
};

}  // namespace

ExtendOutcome extend(const PartialAssembly& bulk, const TileIndex& index,
                     TileCounter remaining, JigsawParams params) {
  ExtendOutcome outcome;
  if (bulk.occupancy.empty()) {
    outcome.reason = FailureReason::ExtensionIncomplete;
    return outcome;
  }

  Extender ext{index, remaining, {}, 0, 0, 0, 0};
  ext.x0 = ext.x1 = bulk.occupancy.begin()->first.x;
  ext.y0 = ext.y1 = bulk.occupancy.begin()->first.y;
  for (const auto& [pos, tile] : bulk.occupancy) {
    ext.grid[pos] = index.id_of(tile);
    ext.x0 = std::min(ext.x0, pos.x);
    ext.x1 = std::max(ext.x1, pos.x);
    ext.y0 = std::min(ext.y0, pos.y);
    ext.y1 = std::max(ext.y1, pos.y);
  }

  // Fixed direction order: up, down, left, right. Each direction also closes
  // once the assembly reaches extent n along its axis.
  static constexpr std::array<std::pair<Vertex, Vertex>, 4> kOrder{{
      {{0, 1}, {1, 0}},
      {{0, -1}, {1, 0}},
      {{-1, 0}, {0, 1}},
      {{1, 0}, {0, 1}},
  }};
  for (int d = 0; d < 4; ++d) {
    const auto& [w, lateral] = kOrder[d];
    while ((w.x == 0 ? ext.height() : ext.width()) < params.n) {
      Extender::LineResult r = ext.add_line(w, lateral);
      if (r == Extender::LineResult::Ambiguous) {
        outcome.reason = FailureReason::ExtensionAmbiguous;
        return outcome;
      }
      if (r == Extender::LineResult::Closed) break;
      outcome.steps[d]++;
    }
  }

  if (ext.width() != params.n || ext.height() != params.n || remaining.total != 0) {
    outcome.reason = FailureReason::ExtensionIncomplete;
    return outcome;
  }

  // Full feasibility recheck before emitting the jigsaw.
  for (const auto& [pos, id] : ext.grid)
    for (int d = 0; d < 2; ++d) {
      auto it = ext.grid.find(pos + kSteps[d]);
      if (it == ext.grid.end()) continue;
      if (index.value(id).side(d) != index.value(it->second).side((d + 2) % 4)) {
        outcome.reason = FailureReason::ExtensionIncomplete;
        return outcome;
      }
    }

  std::vector<uint32_t> colours(edge_count(params.n), 0);
  for (const auto& [pos, id] : ext.grid) {
    Vertex v{pos.x - ext.x0 + 1, pos.y - ext.y0 + 1};
    auto edges = edges_at(v);
    for (int d = 0; d < 4; ++d)
      colours[edge_index(params.n, edges[d])] = index.value(id).side(d);
  }
  outcome.jigsaw = Jigsaw(params, std::move(colours));
  return outcome;
}

ReconstructionReport reconstruct(const Deck& deck, int k, uint64_t budget, int jobs) {
  auto start = std::chrono::steady_clock::now();
  ReconstructionReport report;
  auto finish = [&]() -> ReconstructionReport& {
    report.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    return report;
  };
  // When no usable bulk emerges, the most informative window failure wins.
  auto bulk_failure = [&]() {
    if (report.window_stats.budget_exceeded > 0) return FailureReason::BudgetExceeded;
    if (report.window_stats.ambiguous > 0) return FailureReason::AmbiguousWindowTile;
    return FailureReason::NoBulk;
  };

  TileIndex index(deck);
  AdjacencyGraph graph = build_graph(index, k, budget, jobs);
  report.window_stats = graph.window_stats;
  report.nodes_expanded_total = graph.window_stats.nodes_expanded;

  if (graph.nodes.empty()) {
    report.reason = FailureReason::NoBulk;
    return finish();
  }

  auto comps = graph_components(graph);
  for (const auto& comp : comps) report.component_sizes.push_back(static_cast<int>(comp.size()));

  auto assembly = assemble_component(graph, comps.front());
  if (!assembly) {
    report.reason = FailureReason::InconsistentComponent;
    return finish();
  }

  TileCounter remaining{index.counts(), index.total()};
  for (const auto& [pos, tile] : assembly->occupancy) remaining.take(index.id_of(tile));

  fill_holes(*assembly, index, remaining);

  SquareSpec square = largest_square(*assembly);
  report.bulk_side = square.side;
  if (square.side < 2 && square.side < deck.n()) {
    report.reason = bulk_failure();
    return finish();
  }

  PartialAssembly bulk;
  for (const auto& [pos, tile] : assembly->occupancy) {
    bool inside = pos.x >= square.lower_left.x && pos.x < square.lower_left.x + square.side &&
                  pos.y >= square.lower_left.y && pos.y < square.lower_left.y + square.side;
    if (inside)
      bulk.occupancy[pos] = tile;
    else
      remaining.put(index.id_of(tile));
  }

  ExtendOutcome outcome = extend(bulk, index, std::move(remaining), deck.params());
  report.extension_steps = outcome.steps;
  if (!outcome.jigsaw) {
    report.reason = outcome.reason;
    return finish();
  }
  if (!verify(*outcome.jigsaw, deck)) {
    report.reason = FailureReason::DeckMismatch;
    return finish();
  }
  report.jigsaw = std::move(outcome.jigsaw);
  return finish();
}

ReconstructionReport reconstruct(const Deck& deck, int jobs) {
  return reconstruct(deck, default_k(deck.n()), kDefaultWindowBudget, jobs);
}

bool verify(const Jigsaw& candidate, const Deck& deck) {
  if (candidate.n() != deck.n()) return false;
  return Deck::of(candidate).entries() == deck.entries();
}

}  // namespace jigsaw
