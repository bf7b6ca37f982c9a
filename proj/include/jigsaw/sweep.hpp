#pragma once
// Seeded (n, q) sweeps: generate, reconstruct, compare, and stream one CSV
// row per trial in deterministic (cell, trial) order regardless of the
// worker count.
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jigsaw/jigsaw.hpp"

namespace jigsaw {

// One colour-count entry: an absolute value, a multiple of n, or the
// conjectured threshold line q = n/sqrt(e) + ln n + alpha.
struct QSpec {
  enum class Kind { Absolute, MultipleOfN, ConjectureAlpha };
  Kind kind = Kind::Absolute;
  double value = 2.0;
};

int resolve_q(const QSpec& spec, int n);  // clamped to >= 2

struct SweepSpec {
  std::vector<int> n_list;
  std::vector<QSpec> q_list;
  int trials = 1;
  uint64_t master_seed = 0;
  int k = 0;                       // 0 means default_k(n)
  uint64_t budget = 1'000'000;
};

// JSON spec file: {"n": [...], "q": [...], "trials": N, "seed": S,
// "k": K, "budget": B} where q entries are numbers, "<mult>n" strings, or
// "conj:<alpha>" strings.
SweepSpec parse_sweep_spec(std::istream& in);

struct SweepRow {
  int n = 0, q = 0, k = 0, trial = 0;
  uint64_t seed = 0;
  bool exact = false;
  std::string reason;  // empty for exact rows
  int s = 0;
  uint64_t nodes = 0;
  int64_t ms = 0;
};

inline constexpr const char* kSweepCsvHeader = "n,q,k,trial,seed,outcome,reason,s,nodes,ms";

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs, bool timing = false);

// Runs the sweep and streams rows as CSV. With timing off (the default) the
// ms column is zero so output is byte-identical for any worker count.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, int jobs,
                     bool timing = false);

}  // namespace jigsaw
