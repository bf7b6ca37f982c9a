// Command-line front door: generation, deck extraction, reconstruction,
// oracle runs, bound evaluation, certificate scans, gamma Monte Carlo, and
// seeded parallel sweeps. Exit codes: 0 success, 1 usage error, 2 data error,
// 3 guard refusal.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jigsaw/feasibility.hpp"
#include "jigsaw/oracle.hpp"
#include "jigsaw/parallel.hpp"
#include "jigsaw/reconstruct.hpp"
#include "jigsaw/sweep.hpp"

namespace {

using namespace jigsaw;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  return out;
}

Jigsaw load_jigsaw(const std::string& path) {
  auto in = open_in(path);
  return read_jigsaw(in);
}

Deck load_deck(const std::string& path) {
  auto in = open_in(path);
  return read_deck(in);
}

int run(int argc, char** argv) {
  CLI::App app{"random jigsaw reconstruction workbench"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random jigsaw");
  int gen_n = 10, gen_q = 100;
  uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("-n", gen_n, "grid side")->required();
  gen->add_option("-q", gen_q, "number of colours")->required();
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("-o", gen_out, "output jigsaw file")->required();
  gen->callback([&] {
    auto out = open_out(gen_out);
    write_jigsaw(out, Jigsaw::generate({gen_n, gen_q}, gen_seed));
  });

  // deck
  auto* deck_cmd = app.add_subcommand("deck", "extract the deck of a jigsaw");
  std::string deck_in, deck_out;
  deck_cmd->add_option("-i", deck_in, "input jigsaw file")->required();
  deck_cmd->add_option("-o", deck_out, "output deck file")->required();
  deck_cmd->callback([&] {
    auto out = open_out(deck_out);
    write_deck(out, Deck::of(load_jigsaw(deck_in)));
  });

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "reconstruct a jigsaw from a deck");
  std::string rec_in, rec_out, rec_report;
  int rec_k = 0, rec_jobs = 1;
  uint64_t rec_budget = kDefaultWindowBudget;
  rec->add_option("-i", rec_in, "input deck file")->required();
  rec->add_option("--k", rec_k, "window radius (0 = ceil(ln n))");
  rec->add_option("--budget", rec_budget, "node budget per centre tile");
  rec->add_option("-o", rec_out, "output jigsaw file (written on exact outcomes)");
  rec->add_option("--report", rec_report, "write a one-record report file");
  rec->add_option("--jobs", rec_jobs, "parallel window searches");
  rec->callback([&] {
    Deck deck = load_deck(rec_in);
    int k = rec_k > 0 ? rec_k : default_k(deck.n());
    ReconstructionReport report = reconstruct(deck, k, rec_budget, rec_jobs);
    std::ostringstream record;
    record << "{\"outcome\":\"" << (report.exact() ? "exact" : "failure")
           << "\",\"reason\":\""
           << (report.reason ? to_string(*report.reason) : "") << "\",\"s\":"
           << report.bulk_side << ",\"components\":" << report.component_sizes.size()
           << ",\"nodes_expanded_total\":" << report.nodes_expanded_total
           << ",\"ms\":" << report.ms << "}";
    std::cout << record.str() << '\n';
    if (!rec_report.empty()) {
      auto out = open_out(rec_report);
      out << record.str() << '\n';
    }
    if (report.exact() && !rec_out.empty()) {
      auto out = open_out(rec_out);
      write_jigsaw(out, *report.jigsaw);
    }
  });

  // verify
  auto* ver = app.add_subcommand("verify", "check a candidate jigsaw against a deck");
  std::string ver_jigsaw, ver_deck;
  ver->add_option("--jigsaw", ver_jigsaw, "candidate jigsaw file")->required();
  ver->add_option("--deck", ver_deck, "deck file")->required();
  ver->callback([&] {
    bool ok = verify(load_jigsaw(ver_jigsaw), load_deck(ver_deck));
    std::cout << (ok ? "match" : "mismatch") << '\n';
    if (!ok) throw DataError("deck verification failed");
  });

  // oracle
  auto* ora = app.add_subcommand("oracle", "enumerate the preimages of a deck");
  std::string ora_deck;
  size_t ora_cap = 1000;
  bool ora_force = false;
  ora->add_option("--deck", ora_deck, "deck file")->required();
  ora->add_option("--cap", ora_cap, "stop after this many distinct preimages");
  ora->add_flag("--force", ora_force, "override the size guard");
  ora->callback([&] {
    PreimageResult r = deck_preimages(load_deck(ora_deck), ora_cap, ora_force);
    std::cout << "preimages=" << r.preimages.size()
              << " truncated=" << (r.truncated ? 1 : 0) << '\n';
  });

  // fraction
  auto* fra = app.add_subcommand("fraction",
                                 "exact reconstructible fraction by full enumeration");
  int fra_n = 1, fra_q = 2, fra_jobs = 1;
  bool fra_force = false;
  fra->add_option("n", fra_n, "grid side")->required();
  fra->add_option("q", fra_q, "number of colours")->required();
  fra->add_flag("--force", fra_force, "override the size guard");
  fra->add_option("--jobs", fra_jobs, "enumeration workers");
  fra->callback([&] {
    Fraction f = exact_recon_fraction(fra_n, fra_q, fra_force, fra_jobs);
    std::printf("fraction=%llu/%llu value=%.17g\n",
                static_cast<unsigned long long>(f.num),
                static_cast<unsigned long long>(f.den), f.value());
  });

  // bound
  auto* bnd = app.add_subcommand("bound", "deck-counting bound on the "
                                          "reconstruction probability (log2)");
  int bnd_n = 1, bnd_q = 2;
  bnd->add_option("n", bnd_n, "grid side")->required();
  bnd->add_option("q", bnd_q, "number of colours")->required();
  bnd->callback([&] {
    BoundResult r = zero_statement_bound(bnd_n, bnd_q);
    if (r.rational)
      std::printf("log2_bound=%.17g mode=rational num=%llu den=%llu\n", r.log2_bound,
                  static_cast<unsigned long long>(r.num),
                  static_cast<unsigned long long>(r.den));
    else
      std::printf("log2_bound=%.17g mode=loggamma\n", r.log2_bound);
  });

  // certify
  auto* cert = app.add_subcommand("certify", "scan a jigsaw for swap certificates");
  std::string cert_in, cert_out;
  cert->add_option("-i", cert_in, "input jigsaw file")->required();
  cert->add_option("-o", cert_out, "output certificate file");
  cert->callback([&] {
    auto certs = find_swap_certificates(load_jigsaw(cert_in));
    if (!cert_out.empty()) {
      auto out = open_out(cert_out);
      for (const SwapCertificate& c : certs)
        out << (c.orientation == DominoOrientation::Horizontal ? 'H' : 'V') << ' '
            << c.u.x << ' ' << c.u.y << ' ' << c.v.x << ' ' << c.v.y << '\n';
    }
    std::cout << "certificates=" << certs.size() << '\n';
  });

  // gamma-mc
  auto* gmc = app.add_subcommand("gamma-mc",
                                 "Monte Carlo check of the q^(-gamma) feasibility law");
  std::string gmc_map;
  int gmc_q = 10, gmc_jobs = 1;
  int64_t gmc_trials = 100000;
  uint64_t gmc_seed = 0;
  gmc->add_option("--map", gmc_map, "placement map file (lines \"x y -> x' y'\")")
      ->required();
  gmc->add_option("-q", gmc_q, "number of colours")->required();
  gmc->add_option("--trials", gmc_trials, "trial count")->required();
  gmc->add_option("--seed", gmc_seed, "master seed")->required();
  gmc->add_option("--jobs", gmc_jobs, "trial workers");
  gmc->callback([&] {
    auto in = open_in(gmc_map);
    PlacementMap f = read_placement_map(in);
    // The smallest grid containing every image; gamma does not depend on n.
    int n = 1;
    for (const auto& [from, to] : f.entries()) {
      if (to.x < 1 || to.y < 1) throw DataError("gamma-mc: image leaves the grid");
      n = std::max({n, to.x, to.y});
    }
    FeasibilityMc r = feasibility_mc(f, {n, gmc_q}, gmc_trials, gmc_seed, gmc_jobs);
    std::printf("gamma=%d exact=%.17g empirical=%.17g se=%.17g z=%.6f\n", r.gamma,
                r.exact, r.empirical, r.std_error, r.z);
  });

  // sweep
  auto* swp = app.add_subcommand("sweep", "seeded (n,q) sweep emitting CSV");
  std::string swp_spec, swp_out;
  int swp_jobs = 1;
  bool swp_timing = false;
  swp->add_option("--spec", swp_spec, "JSON sweep specification")->required();
  swp->add_option("-o", swp_out, "output CSV file")->required();
  swp->add_option("--jobs", swp_jobs, "trial workers");
  swp->add_flag("--timing", swp_timing,
                "record wall milliseconds per row (breaks byte reproducibility)");
  swp->callback([&] {
    auto in = open_in(swp_spec);
    SweepSpec spec = parse_sweep_spec(in);
    auto out = open_out(swp_out);
    write_sweep_csv(out, spec, swp_jobs, swp_timing);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const jigsaw::GuardError& e) {
    std::cerr << "guard refusal: " << e.what() << '\n';
    return 3;
  } catch (const jigsaw::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
