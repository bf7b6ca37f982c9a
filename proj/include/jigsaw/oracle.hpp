#pragma once
// Ground-truth instruments: exhaustive deck-preimage enumeration at tiny n,
// the deck-counting probability bound, and swap certificates of
// non-reconstructibility.
#include <cstdint>
#include <vector>

#include "jigsaw/jigsaw.hpp"

namespace jigsaw {

struct PreimageResult {
  std::vector<Jigsaw> preimages;  // pairwise distinct, all with the target deck
  bool truncated = false;         // stopped at the cap
};

// Backtracking placement of the deck tiles onto [n]^2 (row-major order,
// facing-colour pruning, multiplicity aware); every completed placement
// determines one jigsaw, and results are deduplicated. Refuses n > 3 unless
// forced.
PreimageResult deck_preimages(const Deck& deck, size_t cap, bool force = false);

struct Fraction {
  uint64_t num = 0;
  uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Exact P(J(n,q) reconstructible) by enumerating all q^(2n(n+1)) jigsaws and
// grouping them by canonical deck. Guarded: n <= 2 always; q^(2n(n+1)) must
// stay below 2^20 (2^28 with force). Enumeration parallelizes by prefix.
Fraction exact_recon_fraction(int n, int q, bool force = false, int jobs = 1);

struct BoundResult {
  double log2_bound = 0.0;  // log2 of the probability bound, clamped to <= 0
  bool rational = false;    // exact integer evaluation was used
  uint64_t num = 0;         // unclamped bound num/den when rational
  uint64_t den = 1;
};

// log2( binom(n^2+q^4-1, n^2) / q^(2n(n+1)) ), the deck-counting upper bound
// on the reconstruction probability. Exact rationals for n <= 2, q <= 4;
// log-gamma arithmetic otherwise.
BoundResult zero_statement_bound(int n, int q);

enum class DominoOrientation { Horizontal, Vertical };

// Two disjoint same-orientation dominoes {u, u+e} and {v, v+e} whose tile
// pairs can be exchanged: the six boundary colours around each location
// match the transplanted tiles' outward colours, and the interior colours
// differ, so the swap yields a different jigsaw with an identical deck.
struct SwapCertificate {
  DominoOrientation orientation = DominoOrientation::Horizontal;
  Vertex u;
  Vertex v;
  friend auto operator<=>(const SwapCertificate&, const SwapCertificate&) = default;
};

// All certificates of j, hash-bucketed by boundary colour profile, sorted by
// (orientation, u, v).
std::vector<SwapCertificate> find_swap_certificates(const Jigsaw& j);

// Applies the exchange; throws DataError naming the violated constraint when
// the certificate is invalid for j. The result differs from j and has the
// same deck (both enforced).
Jigsaw apply_certificate(const Jigsaw& j, const SwapCertificate& cert);

}  // namespace jigsaw
