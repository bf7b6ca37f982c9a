#pragma once
// Jigsaws, tiles and decks: seeded random generation, duplicate-tile
// statistics and the text codecs. Colours are 0-based integers internally and
// in files. Grid coordinates are [n]^2 = {1..n} x {1..n}, x east, y north.
#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "jigsaw/errors.hpp"
#include "jigsaw/grid.hpp"

namespace jigsaw {

struct JigsawParams {
  int n = 1;
  int q = 2;
  friend auto operator<=>(const JigsawParams&, const JigsawParams&) = default;
};

// Throws DataError unless n >= 1 and q >= 2.
void validate(const JigsawParams& params);

// Colour tuple at a vertex in direction order (up, right, down, left).
struct Tile {
  std::array<uint32_t, 4> c{};

  uint32_t up() const { return c[0]; }
  uint32_t right() const { return c[1]; }
  uint32_t down() const { return c[2]; }
  uint32_t left() const { return c[3]; }
  uint32_t side(int dir) const { return c[dir]; }
  uint32_t side(Direction d) const { return c[static_cast<int>(d)]; }

  friend auto operator<=>(const Tile&, const Tile&) = default;
};

struct TileHash {
  size_t operator()(const Tile& t) const;
};

// The extended n x n grid has 2n(n+1) edges.
int edge_count(int n);

// Canonical index of an extended-grid edge, matching the file layout:
// horizontal edges {(x,y),(x+1,y)} for y = 1..n (outer), x = 0..n (inner),
// then vertical edges {(x,y),(x,y+1)} for y = 0..n (outer), x = 1..n (inner).
// Returns -1 for edges outside the extended grid.
int edge_index(int n, const Edge& e);
Edge edge_at(int n, int index);

class Jigsaw {
 public:
  Jigsaw(JigsawParams params, std::vector<uint32_t> colours);

  // Each edge colour i.i.d. uniform on {0,..,q-1}; the stream for an edge is
  // derived from (seed, edge index), so the result does not depend on
  // iteration order and identical (params, seed) reproduce identical maps.
  static Jigsaw generate(JigsawParams params, uint64_t seed);

  const JigsawParams& params() const { return params_; }
  int n() const { return params_.n; }
  int q() const { return params_.q; }

  uint32_t colour(const Edge& e) const;  // throws DataError off the extended grid
  uint32_t colour_at(int index) const { return colours_[index]; }
  const std::vector<uint32_t>& colours() const { return colours_; }

  Tile tile_at(Vertex v) const;  // throws DataError outside [n]^2

  friend bool operator==(const Jigsaw&, const Jigsaw&) = default;

 private:
  JigsawParams params_;
  std::vector<uint32_t> colours_;  // by canonical edge index
};

// Multiset of the n^2 tiles of a jigsaw, stored as sorted (tile, count) runs.
class Deck {
 public:
  Deck(JigsawParams params, std::vector<Tile> tiles);
  static Deck of(const Jigsaw& j);

  const JigsawParams& params() const { return params_; }
  int n() const { return params_.n; }
  int q() const { return params_.q; }
  int total() const { return total_; }

  const std::vector<std::pair<Tile, int>>& entries() const { return entries_; }
  int multiplicity(const Tile& t) const;
  std::vector<Tile> expanded() const;  // sorted, with multiplicity

  friend bool operator==(const Deck&, const Deck&) = default;

 private:
  JigsawParams params_;
  std::vector<std::pair<Tile, int>> entries_;
  int total_ = 0;
};

struct DuplicateStats {
  int64_t x1 = 0;  // ordered pairs u != v with equal tiles
  int64_t x2 = 0;  // the subset at graph distance <= 2
};
DuplicateStats duplicate_stats(const Jigsaw& j);

// Text codecs. Writers are canonical (equal values produce identical bytes);
// readers throw DataError on malformed input.
void write_jigsaw(std::ostream& out, const Jigsaw& j);
Jigsaw read_jigsaw(std::istream& in);
void write_deck(std::ostream& out, const Deck& d);
Deck read_deck(std::istream& in);

}  // namespace jigsaw
