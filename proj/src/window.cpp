#include "jigsaw/window.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace jigsaw {

int default_k(int n) {
  if (n < 1) throw DataError("default_k: n must be >= 1");
  return std::max(1, static_cast<int>(std::ceil(std::log(static_cast<double>(n)))));
}

const char* to_string(WindowStatus s) {
  switch (s) {
    case WindowStatus::UniqueTuple: return "unique_tuple";
    case WindowStatus::Ambiguous: return "ambiguous";
    case WindowStatus::NoWindow: return "no_window";
    case WindowStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

namespace {

// Slot for the unordered side pair {a, b}, a < b:
// (0,1)->0 (0,2)->1 (0,3)->2 (1,2)->3 (1,3)->4 (2,3)->5
constexpr int pair_slot(int a, int b) {
  return a == 0 ? b - 1 : (a == 1 ? b + 1 : 5);
}

uint64_t pack_pair(uint32_t a, uint32_t b) {
  return (static_cast<uint64_t>(a) << 32) | b;
}

}  // namespace

TileIndex::TileIndex(const Deck& deck) : total_(deck.total()) {
  values_.reserve(deck.entries().size());
  counts_.reserve(deck.entries().size());
  for (const auto& [tile, count] : deck.entries()) {
    int id = static_cast<int>(values_.size());
    values_.push_back(tile);
    counts_.push_back(count);
    ids_[tile] = id;
    for (int s = 0; s < 4; ++s) side_[s][tile.c[s]].push_back(id);
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        pair_[pair_slot(a, b)][pack_pair(tile.c[a], tile.c[b])].push_back(id);
  }
}

int TileIndex::id_of(const Tile& t) const {
  auto it = ids_.find(t);
  return it == ids_.end() ? -1 : it->second;
}

namespace {
const std::vector<int> kEmptyBucket;
}

std::span<const int> TileIndex::bucket(int side, uint32_t colour) const {
  auto it = side_[side].find(colour);
  return it == side_[side].end() ? std::span<const int>(kEmptyBucket)
                                 : std::span<const int>(it->second);
}

std::span<const int> TileIndex::bucket(int side_a, uint32_t colour_a, int side_b,
                                       uint32_t colour_b) const {
  if (side_a > side_b) {
    std::swap(side_a, side_b);
    std::swap(colour_a, colour_b);
  }
  const auto& map = pair_[pair_slot(side_a, side_b)];
  auto it = map.find(pack_pair(colour_a, colour_b));
  return it == map.end() ? std::span<const int>(kEmptyBucket)
                         : std::span<const int>(it->second);
}

std::vector<Vertex> spiral_order(int k) {
  int total = (2 * k + 1) * (2 * k + 1);
  std::vector<Vertex> cells;
  cells.reserve(total);
  cells.push_back({0, 0});
  int x = 0, y = 0, len = 1, dir = 0;
  static constexpr int dx[4] = {1, 0, -1, 0};  // right, up, left, down
  static constexpr int dy[4] = {0, 1, 0, -1};
  while (static_cast<int>(cells.size()) < total) {
    for (int arm = 0; arm < 2 && static_cast<int>(cells.size()) < total; ++arm) {
      for (int s = 0; s < len && static_cast<int>(cells.size()) < total; ++s) {
        x += dx[dir];
        y += dy[dir];
        if (std::abs(x) <= k && std::abs(y) <= k) cells.push_back({x, y});
      }
      dir = (dir + 1) % 4;
    }
    len++;
  }
  return cells;
}

namespace {

struct CellConstraint {
  int side;         // side of the candidate tile that is pinned
  int other_cell;   // earlier spiral index supplying the colour
  int other_side;   // side of that tile facing us
};

struct SearchPlan {
  std::vector<Vertex> cells;
  std::vector<std::vector<CellConstraint>> constraints;  // per cell
  std::array<int, 4> neighbour_cell{};  // spiral indices of e1..e4
};

SearchPlan make_plan(int k) {
  SearchPlan plan;
  plan.cells = spiral_order(k);
  std::map<Vertex, int> index;
  for (int i = 0; i < static_cast<int>(plan.cells.size()); ++i)
    index[plan.cells[i]] = i;
  plan.constraints.resize(plan.cells.size());
  for (int i = 1; i < static_cast<int>(plan.cells.size()); ++i) {
    for (int d = 0; d < 4; ++d) {
      auto it = index.find(plan.cells[i] + kSteps[d]);
      if (it == index.end() || it->second >= i) continue;
      plan.constraints[i].push_back({d, it->second, (d + 2) % 4});
    }
    if (plan.constraints[i].empty() || plan.constraints[i].size() > 2)
      throw std::logic_error("spiral order: unexpected constraint count");
  }
  for (int d = 0; d < 4; ++d) plan.neighbour_cell[d] = index.at(kSteps[d]);
  return plan;
}

enum class Signal { Exhausted, Unwind, Ambiguous, Budget };

struct Search {
  const TileIndex& index;
  const SearchPlan& plan;
  const WindowOptions& options;
  std::vector<int> remaining;
  std::vector<int> placed;
  std::set<std::array<int, 4>> tuples;
  uint64_t nodes = 0;

  std::array<int, 4> current_tuple() const {
    return {placed[plan.neighbour_cell[0]], placed[plan.neighbour_cell[1]],
            placed[plan.neighbour_cell[2]], placed[plan.neighbour_cell[3]]};
  }

  bool is_neighbour_cell(int cell) const {
    for (int c : plan.neighbour_cell)
      if (c == cell) return true;
    return false;
  }

  void verify_completion() const {
    for (int i = 0; i < static_cast<int>(plan.cells.size()); ++i)
      for (const CellConstraint& cc : plan.constraints[i])
        if (index.value(placed[i]).c[cc.side] !=
            index.value(placed[cc.other_cell]).c[cc.other_side])
          throw std::logic_error("window search: infeasible completion");
  }

  Signal dfs(int cell) {
    if (cell == static_cast<int>(plan.cells.size())) {
      if (options.verify_completions) verify_completion();
      tuples.insert(current_tuple());
      if (!options.collect_all && tuples.size() >= 2) return Signal::Ambiguous;
      return options.collect_all ? Signal::Exhausted : Signal::Unwind;
    }
    // Once all four neighbours are placed the tuple of any completion below
    // is fixed; a tuple we already hold contributes nothing new.
    if (cell == 8 && !options.collect_all && tuples.count(current_tuple()))
      return Signal::Unwind;

    const auto& cons = plan.constraints[cell];
    std::span<const int> candidates;
    if (cons.size() == 1) {
      candidates = index.bucket(cons[0].side,
                                index.value(placed[cons[0].other_cell]).c[cons[0].other_side]);
    } else {
      candidates = index.bucket(
          cons[0].side, index.value(placed[cons[0].other_cell]).c[cons[0].other_side],
          cons[1].side, index.value(placed[cons[1].other_cell]).c[cons[1].other_side]);
    }

    for (int id : candidates) {
      if (remaining[id] == 0) continue;
      if (++nodes > options.budget) return Signal::Budget;
      remaining[id]--;
      placed[cell] = id;
      Signal s = dfs(cell + 1);
      remaining[id]++;
      if (s == Signal::Ambiguous || s == Signal::Budget) return s;
      if (s == Signal::Unwind && !is_neighbour_cell(cell)) return Signal::Unwind;
    }
    return Signal::Exhausted;
  }
};

}  // namespace

WindowResult enumerate_windows(const TileIndex& index, const Tile& centre, int k,
                               const WindowOptions& options) {
  if (k < 1) throw DataError("enumerate_windows: k must be >= 1");
  int centre_id = index.id_of(centre);
  if (centre_id < 0 || index.deck_count(centre_id) == 0)
    throw DataError("enumerate_windows: centre tile not in the deck");

  SearchPlan plan = make_plan(k);
  Search search{index, plan, options,
                index.counts(), std::vector<int>(plan.cells.size(), -1),
                {}, 0};

  WindowResult result;
  // The centre placement is the first node.
  search.nodes = 1;
  if (search.nodes > options.budget) {
    result.status = WindowStatus::BudgetExceeded;
    result.nodes_expanded = search.nodes;
    return result;
  }

  Signal signal = Signal::Exhausted;
  if (index.total() >= static_cast<int>(plan.cells.size())) {
    search.remaining[centre_id]--;
    search.placed[0] = centre_id;
    signal = search.dfs(1);
  }

  result.nodes_expanded = search.nodes;
  if (signal == Signal::Budget) {
    result.status = WindowStatus::BudgetExceeded;
  } else if (signal == Signal::Ambiguous || search.tuples.size() >= 2) {
    result.status = WindowStatus::Ambiguous;
  } else if (search.tuples.empty()) {
    result.status = WindowStatus::NoWindow;
  } else {
    result.status = WindowStatus::UniqueTuple;
  }
  for (const auto& ids : search.tuples)
    result.tuples.push_back(
        {index.value(ids[0]), index.value(ids[1]), index.value(ids[2]),
         index.value(ids[3])});
  std::sort(result.tuples.begin(), result.tuples.end());
  return result;
}

WindowResult enumerate_windows(const Deck& deck, const Tile& centre, int k,
                               const WindowOptions& options) {
  TileIndex index(deck);
  return enumerate_windows(index, centre, k, options);
}

NeighbourTuple true_tuple(const Jigsaw& j, Vertex v) {
  NeighbourTuple tuple;
  for (int d = 0; d < 4; ++d) {
    Vertex u = v + kSteps[d];
    if (!in_grid(j.n(), u))
      throw DataError("true_tuple: vertex within distance 1 of the boundary");
    tuple[d] = j.tile_at(u);
  }
  return tuple;
}

}  // namespace jigsaw
