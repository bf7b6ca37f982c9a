#include "jigsaw/jigsaw.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "jigsaw/rng.hpp"

namespace jigsaw {

void validate(const JigsawParams& params) {
  if (params.n < 1) throw DataError("invalid params: n must be >= 1");
  if (params.q < 2) throw DataError("invalid params: q must be >= 2");
}

size_t TileHash::operator()(const Tile& t) const {
  uint64_t h = mix(static_cast<uint64_t>(t.c[0]) << 32 | t.c[1],
                   static_cast<uint64_t>(t.c[2]) << 32 | t.c[3]);
  return static_cast<size_t>(h);
}

int edge_count(int n) { return 2 * n * (n + 1); }

int edge_index(int n, const Edge& e) {
  int x = e.base.x, y = e.base.y;
  if (e.axis == Axis::Horizontal) {
    if (y < 1 || y > n || x < 0 || x > n) return -1;
    return (y - 1) * (n + 1) + x;
  }
  if (x < 1 || x > n || y < 0 || y > n) return -1;
  return n * (n + 1) + y * n + (x - 1);
}

Edge edge_at(int n, int index) {
  int horizontal = n * (n + 1);
  if (index < horizontal) {
    return {{index % (n + 1), index / (n + 1) + 1}, Axis::Horizontal};
  }
  index -= horizontal;
  return {{index % n + 1, index / n}, Axis::Vertical};
}

Jigsaw::Jigsaw(JigsawParams params, std::vector<uint32_t> colours)
    : params_(params), colours_(std::move(colours)) {
  validate(params_);
  if (static_cast<int>(colours_.size()) != edge_count(params_.n))
    throw DataError("jigsaw: wrong edge count");
  for (uint32_t c : colours_)
    if (c >= static_cast<uint32_t>(params_.q)) throw DataError("jigsaw: colour >= q");
}

Jigsaw Jigsaw::generate(JigsawParams params, uint64_t seed) {
  validate(params);
  int count = edge_count(params.n);
  std::vector<uint32_t> colours(count);
  for (int i = 0; i < count; ++i) {
    Rng rng(mix(seed, static_cast<uint64_t>(i)));
    colours[i] = static_cast<uint32_t>(rng.below(static_cast<uint64_t>(params.q)));
  }
  return Jigsaw(params, std::move(colours));
}

uint32_t Jigsaw::colour(const Edge& e) const {
  int idx = edge_index(params_.n, e);
  if (idx < 0) throw DataError("jigsaw: edge outside the extended grid");
  return colours_[idx];
}

Tile Jigsaw::tile_at(Vertex v) const {
  if (!in_grid(params_.n, v)) throw DataError("tile_at: vertex outside [n]^2");
  Tile t;
  auto edges = edges_at(v);
  for (int i = 0; i < 4; ++i) t.c[i] = colours_[edge_index(params_.n, edges[i])];
  return t;
}

Deck::Deck(JigsawParams params, std::vector<Tile> tiles) : params_(params) {
  validate(params_);
  int64_t expected = static_cast<int64_t>(params_.n) * params_.n;
  if (static_cast<int64_t>(tiles.size()) != expected)
    throw DataError("deck: tile count is not n^2");
  for (const Tile& t : tiles)
    for (uint32_t c : t.c)
      if (c >= static_cast<uint32_t>(params_.q)) throw DataError("deck: colour >= q");
  std::sort(tiles.begin(), tiles.end());
  for (const Tile& t : tiles) {
    if (!entries_.empty() && entries_.back().first == t)
      entries_.back().second++;
    else
      entries_.push_back({t, 1});
  }
  total_ = static_cast<int>(tiles.size());
}

Deck Deck::of(const Jigsaw& j) {
  std::vector<Tile> tiles;
  tiles.reserve(static_cast<size_t>(j.n()) * j.n());
  for (int y = 1; y <= j.n(); ++y)
    for (int x = 1; x <= j.n(); ++x) tiles.push_back(j.tile_at({x, y}));
  return Deck(j.params(), std::move(tiles));
}

int Deck::multiplicity(const Tile& t) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), t,
                             [](const auto& e, const Tile& v) { return e.first < v; });
  if (it == entries_.end() || it->first != t) return 0;
  return it->second;
}

std::vector<Tile> Deck::expanded() const {
  std::vector<Tile> out;
  out.reserve(total_);
  for (const auto& [tile, count] : entries_)
    for (int i = 0; i < count; ++i) out.push_back(tile);
  return out;
}

DuplicateStats duplicate_stats(const Jigsaw& j) {
  int n = j.n();
  std::vector<Tile> grid(static_cast<size_t>(n) * n);
  auto at = [&](int x, int y) -> Tile& { return grid[(y - 1) * n + (x - 1)]; };
  for (int y = 1; y <= n; ++y)
    for (int x = 1; x <= n; ++x) at(x, y) = j.tile_at({x, y});

  DuplicateStats stats;
  std::unordered_map<Tile, int64_t, TileHash> counts;
  for (const Tile& t : grid) counts[t]++;
  for (const auto& [tile, m] : counts) stats.x1 += m * (m - 1);

  static constexpr std::array<Vertex, 12> kNear{{{1, 0},
                                                 {-1, 0},
                                                 {0, 1},
                                                 {0, -1},
                                                 {2, 0},
                                                 {-2, 0},
                                                 {0, 2},
                                                 {0, -2},
                                                 {1, 1},
                                                 {1, -1},
                                                 {-1, 1},
                                                 {-1, -1}}};
  for (int y = 1; y <= n; ++y)
    for (int x = 1; x <= n; ++x)
      for (const Vertex& d : kNear) {
        Vertex u{x + d.x, y + d.y};
        if (in_grid(n, u) && at(x, y) == at(u.x, u.y)) stats.x2++;
      }
  return stats;
}

void write_jigsaw(std::ostream& out, const Jigsaw& j) {
  out << "JIGSAW " << j.n() << ' ' << j.q() << '\n';
  for (uint32_t c : j.colours()) out << c << '\n';
}

namespace {

// Pulls one whitespace-delimited non-negative integer below `limit`.
uint32_t read_colour(std::istream& in, int limit, const char* what) {
  long long value;
  if (!(in >> value)) throw DataError(std::string(what) + ": truncated or non-numeric");
  if (value < 0 || value >= limit)
    throw DataError(std::string(what) + ": colour out of range");
  return static_cast<uint32_t>(value);
}

void expect_end(std::istream& in, const char* what) {
  std::string tail;
  if (in >> tail) throw DataError(std::string(what) + ": trailing data");
}

}  // namespace

Jigsaw read_jigsaw(std::istream& in) {
  std::string magic;
  int n = 0, q = 0;
  if (!(in >> magic >> n >> q) || magic != "JIGSAW")
    throw DataError("jigsaw file: malformed header");
  if (n < 1 || q < 2) throw DataError("jigsaw file: bad parameters");
  std::vector<uint32_t> colours(edge_count(n));
  for (auto& c : colours) c = read_colour(in, q, "jigsaw file");
  expect_end(in, "jigsaw file");
  return Jigsaw({n, q}, std::move(colours));
}

void write_deck(std::ostream& out, const Deck& d) {
  out << "DECK " << d.n() << ' ' << d.q() << '\n';
  for (const auto& [tile, count] : d.entries())
    for (int i = 0; i < count; ++i)
      out << tile.c[0] << ' ' << tile.c[1] << ' ' << tile.c[2] << ' ' << tile.c[3]
          << '\n';
}

Deck read_deck(std::istream& in) {
  std::string magic;
  int n = 0, q = 0;
  if (!(in >> magic >> n >> q) || magic != "DECK")
    throw DataError("deck file: malformed header");
  if (n < 1 || q < 2) throw DataError("deck file: bad parameters");
  std::vector<Tile> tiles(static_cast<size_t>(n) * n);
  for (auto& t : tiles)
    for (auto& c : t.c) c = read_colour(in, q, "deck file");
  expect_end(in, "deck file");
  return Deck({n, q}, std::move(tiles));
}

}  // namespace jigsaw
