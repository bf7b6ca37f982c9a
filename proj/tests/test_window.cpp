#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "jigsaw/window.hpp"
#include "test_util.hpp"

using namespace jigsaw;
using namespace jigsaw::testutil;

TEST_CASE("default k") {
  CHECK(default_k(10) == 3);  // ceil(ln 10) = ceil(2.30)
  CHECK(default_k(2) == 1);   // ceil(ln 2) = 1
  CHECK(default_k(1) == 1);   // floor rule
  CHECK(default_k(100) == 5);
}

TEST_CASE("spiral order covers the box and stays attached") {
  for (int k : {1, 2, 3}) {
    auto cells = spiral_order(k);
    REQUIRE(static_cast<int>(cells.size()) == (2 * k + 1) * (2 * k + 1));
    CHECK(cells[0] == Vertex{0, 0});
    std::set<Vertex> seen{cells[0]};
    for (size_t i = 1; i < cells.size(); ++i) {
      CHECK(std::abs(cells[i].x) <= k);
      CHECK(std::abs(cells[i].y) <= k);
      bool attached = false;
      for (const Vertex& d : kSteps) attached = attached || seen.count(cells[i] + d);
      CHECK(attached);
      CHECK(seen.insert(cells[i]).second);
    }
  }
}

TEST_CASE("tile index buckets") {
  std::vector<Tile> tiles{tile(0, 1, 2, 3), tile(0, 1, 2, 3), tile(5, 1, 0, 0),
                          tile(4, 4, 4, 4)};
  Deck deck({2, 6}, tiles);
  TileIndex ix(deck);
  CHECK(ix.size() == 3);
  CHECK(ix.total() == 4);
  CHECK(ix.deck_count(ix.id_of(tile(0, 1, 2, 3))) == 2);
  CHECK(ix.id_of(tile(9, 9, 9, 9)) == -1);
  CHECK(ix.bucket(1, 1).size() == 2);                 // right colour 1
  CHECK(ix.bucket(0, 0, 1, 1).size() == 1);           // up 0 and right 1
  CHECK(ix.bucket(1, 1, 0, 0).size() == 1);           // order-insensitive
  CHECK(ix.bucket(2, 7).empty());
}

TEST_CASE("forced window on an all-distinct jigsaw") {
  auto [j, seed] = distinct_jigsaw(10, 1000000, 3);
  Deck deck = Deck::of(j);
  for (Vertex v : {Vertex{5, 5}, Vertex{4, 6}}) {
    WindowResult r = enumerate_windows(deck, j.tile_at(v), default_k(10));
    REQUIRE(r.status == WindowStatus::UniqueTuple);
    CHECK(r.tuple() == true_tuple(j, v));
  }
}

TEST_CASE("budget zero is exceeded immediately") {
  Deck deck({2, 2}, std::vector<Tile>(4, tile(0, 0, 0, 0)));
  WindowOptions opt;
  opt.budget = 0;
  CHECK(enumerate_windows(deck, tile(0, 0, 0, 0), 1, opt).status ==
        WindowStatus::BudgetExceeded);
}

TEST_CASE("four identical tiles cannot fill a 3x3 window") {
  Deck deck({2, 2}, std::vector<Tile>(4, tile(0, 0, 0, 0)));
  WindowResult r = enumerate_windows(deck, tile(0, 0, 0, 0), 1);
  CHECK(r.status == WindowStatus::NoWindow);
  CHECK(window_oracle(deck, tile(0, 0, 0, 0), 1).empty());
}

TEST_CASE("search equals the exhaustive enumerator on n=3 decks") {
  WindowOptions full;
  full.budget = UINT64_MAX;
  full.collect_all = true;
  full.verify_completions = true;
  WindowOptions pruned;
  pruned.budget = UINT64_MAX;

  for (uint64_t seed = 0; seed < 12; ++seed) {
    int q = seed % 2 == 0 ? 2 : 3;
    Jigsaw j = Jigsaw::generate({3, q}, seed);
    Deck deck = Deck::of(j);
    TileIndex ix(deck);
    for (const auto& [centre, count] : deck.entries()) {
      auto oracle = window_oracle(deck, centre, 1);

      WindowResult all = enumerate_windows(ix, centre, 1, full);
      std::set<NeighbourTuple> got(all.tuples.begin(), all.tuples.end());
      CHECK(got == oracle);

      WindowResult fast = enumerate_windows(ix, centre, 1, pruned);
      if (oracle.empty()) {
        CHECK(fast.status == WindowStatus::NoWindow);
      } else if (oracle.size() == 1) {
        REQUIRE(fast.status == WindowStatus::UniqueTuple);
        CHECK(fast.tuple() == *oracle.begin());
      } else {
        CHECK(fast.status == WindowStatus::Ambiguous);
      }
    }
  }
}

TEST_CASE("centre tile must come from the deck") {
  Deck deck({2, 3}, std::vector<Tile>(4, tile(0, 0, 0, 0)));
  CHECK_THROWS_AS(enumerate_windows(deck, tile(1, 1, 1, 1), 1), DataError);
}

TEST_CASE("true tuple") {
  Jigsaw j = Jigsaw::generate({5, 40}, 9);
  NeighbourTuple t = true_tuple(j, {3, 3});
  CHECK(t[0] == j.tile_at({3, 4}));
  CHECK(t[1] == j.tile_at({4, 3}));
  CHECK(t[2] == j.tile_at({3, 2}));
  CHECK(t[3] == j.tile_at({2, 3}));
  CHECK_THROWS_AS(true_tuple(j, {1, 1}), DataError);
  CHECK_THROWS_AS(true_tuple(j, {5, 3}), DataError);
}
