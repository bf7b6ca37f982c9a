#pragma once
#include <cstdint>

namespace jigsaw {

// SplitMix64 step (Steele/Lea/Flood constants). All seeded randomness in the
// library goes through this generator so runs reproduce bit-for-bit across
// platforms and thread counts.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline uint64_t mix64(uint64_t x) {
  uint64_t s = x;
  return splitmix64(s);
}

// Named combine for deriving independent streams from (seed, salt, ...).
inline uint64_t mix(uint64_t a, uint64_t b) {
  uint64_t s = a ^ 0x632be59bd9b4e019ull;
  uint64_t h = splitmix64(s);
  s = h ^ b;
  return splitmix64(s);
}
inline uint64_t mix(uint64_t a, uint64_t b, uint64_t c) { return mix(mix(a, b), c); }
inline uint64_t mix(uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
  return mix(mix(a, b, c), d);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() { return splitmix64(state_); }

  // Uniform on [0, bound) by rejection; exact, no modulo bias.
  uint64_t below(uint64_t bound) {
    uint64_t threshold = -bound % bound;  // 2^64 mod bound
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

// Per-trial seed used by Monte Carlo drivers; cells are independently
// reproducible from (master, n, q, trial).
inline uint64_t derive_seed(uint64_t master, uint64_t n, uint64_t q, uint64_t trial) {
  return mix(master, n, q, trial);
}

}  // namespace jigsaw
