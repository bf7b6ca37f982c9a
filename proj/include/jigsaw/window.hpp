#pragma once
// Deck indexing and backtracking enumeration of feasible (2k+1)x(2k+1)
// windows around a centre tile, tracking the set of distinct neighbour
// 4-tuples.
#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "jigsaw/jigsaw.hpp"

namespace jigsaw {

// k(n) = ceil(ln n), clamped to at least 1. Every caller can override k
// explicitly; this is only the default.
int default_k(int n);

inline constexpr uint64_t kDefaultWindowBudget = 1'000'000;

// Lookup structures over the distinct tile values of a deck, keyed by single
// side colours and by side pairs. Buckets are immutable; searches carry their
// own remaining-multiplicity scratch state, so one index serves any number of
// concurrent searches.
class TileIndex {
 public:
  explicit TileIndex(const Deck& deck);

  int size() const { return static_cast<int>(values_.size()); }
  int total() const { return total_; }
  const Tile& value(int id) const { return values_[id]; }
  int deck_count(int id) const { return counts_[id]; }
  const std::vector<int>& counts() const { return counts_; }
  int id_of(const Tile& t) const;  // -1 when absent

  // Tile ids whose colour on `side` is `colour` (sides indexed like Tile:
  // 0 up, 1 right, 2 down, 3 left).
  std::span<const int> bucket(int side, uint32_t colour) const;
  // Tile ids matching two side constraints at once.
  std::span<const int> bucket(int side_a, uint32_t colour_a, int side_b,
                              uint32_t colour_b) const;

 private:
  std::vector<Tile> values_;
  std::vector<int> counts_;
  int total_ = 0;
  std::unordered_map<Tile, int, TileHash> ids_;
  std::array<std::unordered_map<uint32_t, std::vector<int>>, 4> side_;
  std::array<std::unordered_map<uint64_t, std::vector<int>>, 6> pair_;
};

enum class WindowStatus { UniqueTuple, Ambiguous, NoWindow, BudgetExceeded };

const char* to_string(WindowStatus s);

using NeighbourTuple = std::array<Tile, 4>;  // tiles at e1..e4 (up,right,down,left)

struct WindowOptions {
  uint64_t budget = kDefaultWindowBudget;
  // Disables the ambiguity early-exit and the duplicate-tuple subtree prune so
  // the full distinct-tuple set is collected; used when comparing against the
  // exhaustive reference enumerator.
  bool collect_all = false;
  // Re-checks every completed window for facing-colour equality and throws on
  // violation. Test instrumentation.
  bool verify_completions = false;
};

struct WindowResult {
  WindowStatus status = WindowStatus::NoWindow;
  std::vector<NeighbourTuple> tuples;  // sorted; complete only in collect_all mode
  uint64_t nodes_expanded = 0;

  const NeighbourTuple& tuple() const { return tuples.front(); }
};

// Depth-first placement over [-k,k]^2 in spiral order from the origin, with
// the centre tile fixed at (0,0), respecting remaining deck multiplicity and
// matching facing colours against every already placed neighbour.
WindowResult enumerate_windows(const TileIndex& index, const Tile& centre, int k,
                               const WindowOptions& options = {});
WindowResult enumerate_windows(const Deck& deck, const Tile& centre, int k,
                               const WindowOptions& options = {});

// Centre-out spiral covering [-k,k]^2; cell i > 0 is always lattice-adjacent
// to an earlier cell.
std::vector<Vertex> spiral_order(int k);

// The four tiles neighbouring v in the jigsaw; throws DataError when v is
// within distance 1 of the grid boundary.
NeighbourTuple true_tuple(const Jigsaw& j, Vertex v);

}  // namespace jigsaw
