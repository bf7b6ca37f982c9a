#include "jigsaw/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "jigsaw/parallel.hpp"
#include "jigsaw/rng.hpp"
#include "jigsaw/window.hpp"

namespace jigsaw {

namespace {

struct PreimageSearch {
  const TileIndex& index;
  int n;
  int q;
  size_t cap;
  std::vector<int> remaining;
  std::vector<int> placed;  // tile id per cell, row-major
  std::set<std::vector<uint32_t>> seen;
  PreimageResult result;

  const Tile& tile_on(int cell) const { return index.value(placed[cell]); }

  void record() {
    std::vector<uint32_t> colours(edge_count(n), 0);
    for (int y = 1; y <= n; ++y)
      for (int x = 1; x <= n; ++x) {
        const Tile& t = tile_on((y - 1) * n + (x - 1));
        auto edges = edges_at({x, y});
        for (int d = 0; d < 4; ++d) colours[edge_index(n, edges[d])] = t.side(d);
      }
    if (!seen.insert(colours).second) return;
    result.preimages.push_back(Jigsaw({n, q}, std::move(colours)));
    if (result.preimages.size() >= cap) result.truncated = true;
  }

  // Returns false once the cap is hit and the search should stop.
  bool place(int cell) {
    if (cell == n * n) {
      record();
      return !result.truncated;
    }
    int x = cell % n + 1, y = cell / n + 1;
    std::span<const int> candidates;
    if (x > 1 && y > 1)
      candidates = index.bucket(2, tile_on(cell - n).up(), 3, tile_on(cell - 1).right());
    else if (x > 1)
      candidates = index.bucket(3, tile_on(cell - 1).right());
    else if (y > 1)
      candidates = index.bucket(2, tile_on(cell - n).up());
    else {
      for (int id = 0; id < index.size(); ++id) {
        if (remaining[id] == 0) continue;
        remaining[id]--;
        placed[cell] = id;
        bool keep = place(cell + 1);
        remaining[id]++;
        if (!keep) return false;
      }
      return true;
    }
    for (int id : candidates) {
      if (remaining[id] == 0) continue;
      remaining[id]--;
      placed[cell] = id;
      bool keep = place(cell + 1);
      remaining[id]++;
      if (!keep) return false;
    }
    return true;
  }
};

}  // namespace

PreimageResult deck_preimages(const Deck& deck, size_t cap, bool force) {
  if (deck.n() > 3 && !force)
    throw GuardError("deck_preimages: n > 3 refused without force");
  if (cap == 0) return {};
  TileIndex index(deck);
  PreimageSearch search{index, deck.n(), deck.q(), cap,
                        index.counts(),
                        std::vector<int>(static_cast<size_t>(deck.n()) * deck.n(), -1),
                        {}, {}};
  search.place(0);
  return std::move(search.result);
}

namespace {

using DeckKey = std::array<uint64_t, 4>;

struct DeckKeyHash {
  size_t operator()(const DeckKey& k) const {
    return static_cast<size_t>(mix(mix(k[0], k[1]), mix(k[2], k[3])));
  }
};

}  // namespace

Fraction exact_recon_fraction(int n, int q, bool force, int jobs) {
  validate({n, q});
  if (n > 2)
    throw GuardError("exact_recon_fraction: full enumeration supports n <= 2 only");
  int edges = edge_count(n);
  uint64_t limit = force ? (1ull << 28) : (1ull << 20);
  uint64_t total = 1;
  for (int i = 0; i < edges; ++i) {
    if (total > limit / static_cast<uint64_t>(q))
      throw GuardError("exact_recon_fraction: q^(2n(n+1)) exceeds the size guard");
    total *= static_cast<uint64_t>(q);
  }

  // Per-vertex edge indices, so a jigsaw index expands straight into tiles.
  int cells = n * n;
  std::vector<std::array<int, 4>> cell_edges(cells);
  for (int y = 1; y <= n; ++y)
    for (int x = 1; x <= n; ++x) {
      auto es = edges_at({x, y});
      for (int d = 0; d < 4; ++d)
        cell_edges[(y - 1) * n + (x - 1)][d] = edge_index(n, es[d]);
    }

  auto key_of = [&](uint64_t code) {
    std::array<uint32_t, 12> colour{};
    for (int e = 0; e < edges; ++e) {
      colour[e] = static_cast<uint32_t>(code % q);
      code /= q;
    }
    std::array<uint64_t, 4> tiles{};
    for (int c = 0; c < cells; ++c) {
      uint64_t t = 0;
      for (int d = 0; d < 4; ++d)
        t = (t << 16) | colour[cell_edges[c][d]];
      tiles[c] = t;
    }
    std::sort(tiles.begin(), tiles.begin() + cells);
    DeckKey key{};
    for (int c = 0; c < cells; ++c) key[c] = tiles[c];
    return key;
  };

  using Counts = std::unordered_map<DeckKey, uint32_t, DeckKeyHash>;
  int chunks = std::max(1, jobs);
  std::vector<Counts> local(chunks);
  parallel_for(chunks, jobs, [&](int64_t c) {
    uint64_t begin = total * c / chunks, end = total * (c + 1) / chunks;
    for (uint64_t code = begin; code < end; ++code) local[c][key_of(code)]++;
  });
  Counts counts = std::move(local[0]);
  for (int c = 1; c < chunks; ++c)
    for (const auto& [key, count] : local[c]) counts[key] += count;

  Fraction f;
  f.den = total;
  for (const auto& [key, count] : counts)
    if (count == 1) f.num++;
  return f;
}

BoundResult zero_statement_bound(int n, int q) {
  validate({n, q});
  BoundResult r;
  int edges = edge_count(n);
  if (n <= 2 && q <= 4) {
    // binom(n^2 + q^4 - 1, n^2) fits comfortably in 64 bits here.
    uint64_t cells = static_cast<uint64_t>(n) * n;
    uint64_t top = cells + static_cast<uint64_t>(q) * q * q * q - 1;
    unsigned __int128 num = 1;
    for (uint64_t i = 0; i < cells; ++i) num = num * (top - i) / (i + 1);
    uint64_t den = 1;
    for (int i = 0; i < edges; ++i) den *= static_cast<uint64_t>(q);
    r.rational = true;
    r.num = static_cast<uint64_t>(num);
    r.den = den;
    r.log2_bound =
        std::min(0.0, std::log2(static_cast<double>(r.num) / static_cast<double>(r.den)));
    return r;
  }
  double cells = static_cast<double>(n) * n;
  double q4 = std::pow(static_cast<double>(q), 4.0);
  double log2_binom;
  if (q4 <= 0x1p50) {
    log2_binom =
        (std::lgamma(cells + q4) - std::lgamma(cells + 1.0) - std::lgamma(q4)) /
        std::log(2.0);
  } else if (cells <= 4e6) {
    // lgamma(q4 + cells) - lgamma(q4) cancels catastrophically once q^4
    // outgrows double precision; the product form binom = prod (q4-1+i)/i
    // stays exact enough.
    log2_binom = 0.0;
    for (double i = 1.0; i <= cells; ++i) log2_binom += std::log2((q4 - 1.0 + i) / i);
  } else {
    // First-order expansion of sum log(q4 + i), enough at these magnitudes.
    log2_binom = (cells * std::log(q4) + cells * cells / (2.0 * q4) -
                  std::lgamma(cells + 1.0)) /
                 std::log(2.0);
  }
  r.log2_bound = std::min(0.0, log2_binom - edges * std::log2(static_cast<double>(q)));
  return r;
}

namespace {

// The six boundary edges of a domino in a fixed order, plus its interior edge.
struct DominoEdges {
  std::array<Edge, 6> boundary;
  Edge interior;
};

DominoEdges domino_edges(DominoOrientation o, Vertex u) {
  int x = u.x, y = u.y;
  if (o == DominoOrientation::Horizontal) {
    return {{Edge{{x - 1, y}, Axis::Horizontal}, Edge{{x, y}, Axis::Vertical},
             Edge{{x, y - 1}, Axis::Vertical}, Edge{{x + 1, y}, Axis::Vertical},
             Edge{{x + 1, y - 1}, Axis::Vertical}, Edge{{x + 1, y}, Axis::Horizontal}},
            Edge{{x, y}, Axis::Horizontal}};
  }
  return {{Edge{{x, y - 1}, Axis::Vertical}, Edge{{x - 1, y}, Axis::Horizontal},
           Edge{{x, y}, Axis::Horizontal}, Edge{{x - 1, y + 1}, Axis::Horizontal},
           Edge{{x, y + 1}, Axis::Horizontal}, Edge{{x, y + 1}, Axis::Vertical}},
          Edge{{x, y}, Axis::Vertical}};
}

bool domino_in_grid(int n, DominoOrientation o, Vertex u) {
  Vertex second = o == DominoOrientation::Horizontal ? u + Vertex{1, 0} : u + Vertex{0, 1};
  return in_grid(n, u) && in_grid(n, second);
}

bool dominoes_disjoint(DominoOrientation o, Vertex a, Vertex b) {
  if (o == DominoOrientation::Horizontal)
    return a.y != b.y || std::abs(a.x - b.x) >= 2;
  return a.x != b.x || std::abs(a.y - b.y) >= 2;
}

}  // namespace

std::vector<SwapCertificate> find_swap_certificates(const Jigsaw& j) {
  int n = j.n();
  std::vector<SwapCertificate> out;
  for (DominoOrientation o :
       {DominoOrientation::Horizontal, DominoOrientation::Vertical}) {
    std::map<std::array<uint32_t, 6>, std::vector<Vertex>> buckets;
    int xmax = o == DominoOrientation::Horizontal ? n - 1 : n;
    int ymax = o == DominoOrientation::Horizontal ? n : n - 1;
    for (int y = 1; y <= ymax; ++y)
      for (int x = 1; x <= xmax; ++x) {
        DominoEdges de = domino_edges(o, {x, y});
        std::array<uint32_t, 6> profile;
        for (int i = 0; i < 6; ++i) profile[i] = j.colour(de.boundary[i]);
        buckets[profile].push_back({x, y});
      }
    for (const auto& [profile, dominoes] : buckets) {
      for (size_t a = 0; a < dominoes.size(); ++a)
        for (size_t b = a + 1; b < dominoes.size(); ++b) {
          if (!dominoes_disjoint(o, dominoes[a], dominoes[b])) continue;
          if (j.colour(domino_edges(o, dominoes[a]).interior) ==
              j.colour(domino_edges(o, dominoes[b]).interior))
            continue;
          out.push_back({o, dominoes[a], dominoes[b]});
        }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Jigsaw apply_certificate(const Jigsaw& j, const SwapCertificate& cert) {
  int n = j.n();
  if (!domino_in_grid(n, cert.orientation, cert.u) ||
      !domino_in_grid(n, cert.orientation, cert.v))
    throw DataError("certificate: domino outside [n]^2");
  if (!dominoes_disjoint(cert.orientation, cert.u, cert.v))
    throw DataError("certificate: dominoes are not disjoint");

  DominoEdges du = domino_edges(cert.orientation, cert.u);
  DominoEdges dv = domino_edges(cert.orientation, cert.v);
  for (int i = 0; i < 6; ++i)
    if (j.colour(du.boundary[i]) != j.colour(dv.boundary[i]))
      throw DataError("certificate: boundary colour mismatch at slot " +
                      std::to_string(i));
  uint32_t iu = j.colour(du.interior), iv = j.colour(dv.interior);
  if (iu == iv) throw DataError("certificate: interior colours equal, swap is the identity");

  // Matching boundary profiles mean the exchange reduces to swapping the two
  // interior colours.
  std::vector<uint32_t> colours = j.colours();
  colours[edge_index(n, du.interior)] = iv;
  colours[edge_index(n, dv.interior)] = iu;
  Jigsaw swapped(j.params(), std::move(colours));

  if (swapped == j) throw DataError("certificate: exchange left the jigsaw unchanged");
  if (Deck::of(swapped).entries() != Deck::of(j).entries())
    throw DataError("certificate: exchange altered the deck");
  return swapped;
}

}  // namespace jigsaw
