#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "jigsaw/jigsaw.hpp"
#include "test_util.hpp"

using namespace jigsaw;
using namespace jigsaw::testutil;

TEST_CASE("params validation") {
  CHECK_THROWS_AS(validate({0, 2}), DataError);
  CHECK_THROWS_AS(validate({3, 1}), DataError);
  CHECK_NOTHROW(validate({1, 2}));
}

TEST_CASE("edge indexing is a bijection on the extended grid") {
  for (int n : {1, 2, 3, 7}) {
    std::set<int> seen;
    for (int i = 0; i < edge_count(n); ++i) {
      Edge e = edge_at(n, i);
      CHECK(edge_index(n, e) == i);
      seen.insert(i);
    }
    CHECK(static_cast<int>(seen.size()) == 2 * n * (n + 1));
    CHECK(edge_index(n, Edge{{0, 0}, Axis::Horizontal}) == -1);
    CHECK(edge_index(n, Edge{{n + 1, 1}, Axis::Vertical}) == -1);
  }
}

TEST_CASE("generation counts and determinism") {
  CHECK(Jigsaw::generate({1, 2}, 5).colours().size() == 4);
  CHECK(Jigsaw::generate({2, 2}, 5).colours().size() == 12);
  CHECK(Jigsaw::generate({3, 9}, 11) == Jigsaw::generate({3, 9}, 11));
  CHECK(Jigsaw::generate({3, 9}, 11) != Jigsaw::generate({3, 9}, 12));
  Jigsaw j = Jigsaw::generate({4, 3}, 8);
  for (uint32_t c : j.colours()) CHECK(c < 3);
}

TEST_CASE("n=1 tile reads the four boundary stubs") {
  // colour layout for n=1: H@(0,1)=left, H@(1,1)=right, V@(1,0)=down, V@(1,1)=up
  Jigsaw j({1, 4}, {0, 1, 2, 3});
  CHECK(j.tile_at({1, 1}) == tile(3, 1, 2, 0));
}

TEST_CASE("adjacent tiles share their facing edge") {
  Jigsaw j = Jigsaw::generate({6, 50}, 2);
  for (int y = 1; y <= 6; ++y)
    for (int x = 1; x < 6; ++x)
      CHECK(j.tile_at({x, y}).right() == j.tile_at({x + 1, y}).left());
  for (int x = 1; x <= 6; ++x)
    for (int y = 1; y < 6; ++y)
      CHECK(j.tile_at({x, y}).up() == j.tile_at({x, y + 1}).down());
  CHECK_THROWS_AS(j.tile_at({0, 1}), DataError);
}

TEST_CASE("all-zero jigsaw has a constant deck") {
  Jigsaw j({2, 2}, std::vector<uint32_t>(12, 0));
  Deck d = Deck::of(j);
  CHECK(d.total() == 4);
  REQUIRE(d.entries().size() == 1);
  CHECK(d.entries()[0].first == tile(0, 0, 0, 0));
  CHECK(d.entries()[0].second == 4);
}

TEST_CASE("distinct colours force distinct tiles") {
  auto [j, seed] = distinct_jigsaw(10, 1000000, 1);
  Deck d = Deck::of(j);
  CHECK(d.total() == 100);
  CHECK(d.entries().size() == 100);
  for (const auto& [t, count] : d.entries()) CHECK(count == 1);
}

TEST_CASE("duplicate statistics") {
  auto [j, seed] = distinct_jigsaw(6, 1000000, 1);
  DuplicateStats zero = duplicate_stats(j);
  CHECK(zero.x1 == 0);
  CHECK(zero.x2 == 0);

  Jigsaw flat({2, 2}, std::vector<uint32_t>(12, 0));
  DuplicateStats all = duplicate_stats(flat);
  CHECK(all.x1 == 12);  // 4*3 ordered pairs
  CHECK(all.x2 == 12);  // every pair in a 2x2 grid is within distance 2
}

TEST_CASE("jigsaw and deck files round-trip") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng.below(5));
    int q = 2 + static_cast<int>(rng.below(30));
    Jigsaw j = Jigsaw::generate({n, q}, rng.next());

    std::stringstream jf;
    write_jigsaw(jf, j);
    CHECK(read_jigsaw(jf) == j);

    Deck d = Deck::of(j);
    std::stringstream df;
    write_deck(df, d);
    Deck back = read_deck(df);
    CHECK(back == d);
    // shared-edge coherence survives the round trip
    for (const auto& [t, count] : back.entries()) CHECK(count >= 1);
  }
}

TEST_CASE("deck files are canonical") {
  // Same multiset presented in different orders encodes identically.
  std::vector<Tile> tiles{tile(1, 0, 0, 0), tile(0, 1, 0, 0), tile(0, 0, 1, 0),
                          tile(0, 0, 0, 1)};
  Deck a({2, 2}, tiles);
  std::reverse(tiles.begin(), tiles.end());
  Deck b({2, 2}, tiles);
  std::stringstream fa, fb;
  write_deck(fa, a);
  write_deck(fb, b);
  CHECK(fa.str() == fb.str());
}

TEST_CASE("decoder rejects malformed input") {
  std::stringstream bad_header("JIGSAWX 2 2\n0\n");
  CHECK_THROWS_AS(read_jigsaw(bad_header), DataError);

  std::stringstream truncated("JIGSAW 2 2\n0\n1\n");
  CHECK_THROWS_AS(read_jigsaw(truncated), DataError);

  std::stringstream bad_colour("JIGSAW 1 2\n0\n1\n2\n0\n");
  CHECK_THROWS_AS(read_jigsaw(bad_colour), DataError);

  std::stringstream trailing("DECK 1 2\n0 0 0 0\nextra\n");
  CHECK_THROWS_AS(read_deck(trailing), DataError);

  std::stringstream ok("JIGSAW 1 2\n0\n1\n1\n0\n");
  CHECK_NOTHROW(read_jigsaw(ok));
}
