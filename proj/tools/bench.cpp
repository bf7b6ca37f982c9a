// Compares the serial reference lane (jobs = 1) against the OpenMP lane on
// the Monte Carlo heavy paths. Build target only; not part of the test suite.
#include <chrono>
#include <cstdio>

#include "jigsaw/feasibility.hpp"
#include "jigsaw/parallel.hpp"
#include "jigsaw/reconstruct.hpp"
#include "jigsaw/sweep.hpp"

using namespace jigsaw;

namespace {

template <class F>
double time_ms(F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, int jobs) {
  std::printf("%-28s serial %8.1f ms   %d jobs %8.1f ms   speedup %.2fx\n", name,
              serial_ms, jobs, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  int jobs = hardware_jobs();
  std::printf("hardware jobs: %d\n", jobs);

  {
    // gamma = 2 map: three collinear cells scattered far apart
    PlacementMap f(std::map<Vertex, Vertex>{
        {{0, 0}, {2, 2}}, {{1, 0}, {6, 6}}, {{2, 0}, {2, 7}}});
    const int64_t trials = 400000;
    double serial = time_ms([&] { feasibility_mc(f, {10, 10}, trials, 7, 1); });
    double par = time_ms([&] { feasibility_mc(f, {10, 10}, trials, 7, jobs); });
    report("feasibility_mc 4e5 trials", serial, par, jobs);
  }

  {
    SweepSpec spec;
    spec.n_list = {10};
    spec.q_list = {{QSpec::Kind::Absolute, 10000.0}};
    spec.trials = 40;
    spec.master_seed = 11;
    double serial = time_ms([&] { run_sweep(spec, 1); });
    double par = time_ms([&] { run_sweep(spec, jobs); });
    report("sweep n=10 q=1e4 40 trials", serial, par, jobs);
  }

  {
    Deck deck = Deck::of(Jigsaw::generate({12, 1000000}, 3));
    double serial =
        time_ms([&] { build_adjacency_graph(deck, default_k(12), kDefaultWindowBudget, 1); });
    double par = time_ms(
        [&] { build_adjacency_graph(deck, default_k(12), kDefaultWindowBudget, jobs); });
    report("window searches n=12", serial, par, jobs);
  }

  return 0;
}
