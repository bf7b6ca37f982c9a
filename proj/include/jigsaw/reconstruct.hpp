#pragma once
// End-to-end reconstruction: adjacency graph over multiplicity-one tiles,
// relative placement of its largest component, hole filling, the largest
// assembled square, and the four-direction extension procedure. Exact output
// is gated by a final deck-multiset check, so a wrong Exact is impossible.
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "jigsaw/jigsaw.hpp"
#include "jigsaw/window.hpp"

namespace jigsaw {

// Directed graph on the multiplicity-one tiles of a deck; arcs are labelled
// by direction (at most one arc per node and label).
struct AdjacencyGraph {
  struct WindowStats {
    int unique = 0;
    int ambiguous = 0;
    int no_window = 0;
    int budget_exceeded = 0;
    uint64_t nodes_expanded = 0;
  };

  std::vector<Tile> nodes;                 // multiplicity-one tile values
  std::vector<std::array<int, 4>> arcs;    // per node, target id or -1, by direction
  WindowStats window_stats;
};

// Window searches for distinct centre tiles run concurrently when jobs > 1;
// each search owns its multiplicity scratch state, so results are identical
// for any schedule.
AdjacencyGraph build_adjacency_graph(const Deck& deck, int k, uint64_t budget,
                                     int jobs = 1);

// Connected components of the underlying undirected graph, ordered by
// (size descending, smallest node id).
std::vector<std::vector<int>> graph_components(const AdjacencyGraph& graph);

// Tiles at relative positions; adjacent occupants always have matching facing
// colours.
struct PartialAssembly {
  std::map<Vertex, Tile> occupancy;
};

// BFS over arc labels from the component's smallest node. Returns nothing if
// two paths disagree on a position, two tiles collide, or a realized
// adjacency has mismatched colours.
std::optional<PartialAssembly> assemble_component(const AdjacencyGraph& graph,
                                                  const std::vector<int>& component);

// Multiset of still-unplaced tiles, tracked against a TileIndex id space.
struct TileCounter {
  std::vector<int> counts;
  int total = 0;

  void take(int id) { counts[id]--; total--; }
  void put(int id) { counts[id]++; total++; }
};

// Repeatedly fills empty positions whose four neighbours are occupied when
// exactly one remaining deck tile matches all four facing colours. Never
// violates feasibility and never decreases occupancy.
void fill_holes(PartialAssembly& assembly, const TileIndex& index,
                TileCounter& remaining);

struct SquareSpec {
  Vertex lower_left{0, 0};
  int side = 0;
};

// Largest fully-occupied axis-aligned square (dynamic programming over the
// occupancy grid); ties break to the smallest (x, then y) lower-left corner.
SquareSpec largest_square(const PartialAssembly& assembly);

enum class FailureReason {
  NoBulk,
  InconsistentComponent,
  AmbiguousWindowTile,
  ExtensionAmbiguous,
  ExtensionIncomplete,
  DeckMismatch,
  BudgetExceeded,
};
const char* to_string(FailureReason r);

struct ReconstructionReport {
  std::optional<Jigsaw> jigsaw;             // set iff outcome is Exact
  std::optional<FailureReason> reason;      // set iff outcome is a failure
  bool exact() const { return jigsaw.has_value(); }

  // telemetry
  AdjacencyGraph::WindowStats window_stats;
  std::vector<int> component_sizes;         // descending
  int bulk_side = 0;
  std::array<int, 4> extension_steps{};     // rows added up, down, left, right
  uint64_t nodes_expanded_total = 0;
  int64_t ms = 0;
};

struct ExtendOutcome {
  std::optional<Jigsaw> jigsaw;
  std::optional<FailureReason> reason;
  std::array<int, 4> steps{};
};

// Extends an axis-aligned rectangular assembly in the fixed direction order
// up, down, left, right, one full row or column at a time. A direction closes
// when some non-corner front tile admits no feasible triple or when the
// assembly reaches extent n; two distinct choices for the new tile over a
// front tile, or anything but exactly one feasible corner pair, abort with
// ExtensionAmbiguous.
ExtendOutcome extend(const PartialAssembly& bulk, const TileIndex& index,
                     TileCounter remaining, JigsawParams params);

// Full pipeline. Exact(J') is returned only when deck(J') equals the input
// deck exactly.
ReconstructionReport reconstruct(const Deck& deck, int k, uint64_t budget,
                                 int jobs = 1);
ReconstructionReport reconstruct(const Deck& deck, int jobs = 1);

// deck(candidate) equals `deck` as a multiset (and the grid sides agree).
bool verify(const Jigsaw& candidate, const Deck& deck);

}  // namespace jigsaw
