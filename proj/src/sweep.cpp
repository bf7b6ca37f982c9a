#include "jigsaw/sweep.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "jigsaw/parallel.hpp"
#include "jigsaw/reconstruct.hpp"
#include "jigsaw/rng.hpp"

namespace jigsaw {

int resolve_q(const QSpec& spec, int n) {
  double q = 2.0;
  switch (spec.kind) {
    case QSpec::Kind::Absolute: q = spec.value; break;
    case QSpec::Kind::MultipleOfN: q = spec.value * n; break;
    case QSpec::Kind::ConjectureAlpha:
      q = n / std::sqrt(std::exp(1.0)) + std::log(static_cast<double>(n)) + spec.value;
      break;
  }
  return std::max(2, static_cast<int>(std::llround(q)));
}

SweepSpec parse_sweep_spec(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("sweep spec: ") + e.what());
  }
  SweepSpec spec;
  try {
    for (const auto& n : doc.at("n")) spec.n_list.push_back(n.get<int>());
    for (const auto& q : doc.at("q")) {
      if (q.is_number()) {
        spec.q_list.push_back({QSpec::Kind::Absolute, q.get<double>()});
      } else {
        std::string text = q.get<std::string>();
        if (text.starts_with("conj:"))
          spec.q_list.push_back(
              {QSpec::Kind::ConjectureAlpha, std::stod(text.substr(5))});
        else if (text.ends_with("n"))
          spec.q_list.push_back(
              {QSpec::Kind::MultipleOfN, std::stod(text.substr(0, text.size() - 1))});
        else
          throw DataError("sweep spec: bad q entry \"" + text + "\"");
      }
    }
    spec.trials = doc.at("trials").get<int>();
    spec.master_seed = doc.at("seed").get<uint64_t>();
    if (doc.contains("k")) spec.k = doc.at("k").get<int>();
    if (doc.contains("budget")) spec.budget = doc.at("budget").get<uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("sweep spec: ") + e.what());
  }
  if (spec.trials < 1) throw DataError("sweep spec: trials must be >= 1");
  if (spec.n_list.empty() || spec.q_list.empty())
    throw DataError("sweep spec: empty n or q list");
  for (int n : spec.n_list)
    if (n < 1) throw DataError("sweep spec: n must be >= 1");
  return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs, bool timing) {
  struct Cell {
    int n, q, k;
  };
  std::vector<Cell> cells;
  for (int n : spec.n_list)
    for (const QSpec& qs : spec.q_list)
      cells.push_back({n, resolve_q(qs, n), spec.k > 0 ? spec.k : default_k(n)});

  int64_t total = static_cast<int64_t>(cells.size()) * spec.trials;
  std::vector<SweepRow> rows(total);
  parallel_for(total, jobs, [&](int64_t i) {
    const Cell& cell = cells[i / spec.trials];
    int trial = static_cast<int>(i % spec.trials);
    SweepRow& row = rows[i];
    row.n = cell.n;
    row.q = cell.q;
    row.k = cell.k;
    row.trial = trial;
    row.seed = derive_seed(spec.master_seed, cell.n, cell.q, trial);

    Jigsaw original = Jigsaw::generate({cell.n, cell.q}, row.seed);
    Deck deck = Deck::of(original);
    // Window searches stay serial here; trials are the parallel axis.
    ReconstructionReport report = reconstruct(deck, cell.k, spec.budget, 1);
    row.s = report.bulk_side;
    row.nodes = report.window_stats.nodes_expanded;
    if (timing) row.ms = report.ms;
    if (report.exact()) {
      // An exact report already passed deck verification; an output that is a
      // different preimage of the same deck still counts as a failure here.
      if (*report.jigsaw == original) {
        row.exact = true;
      } else {
        row.reason = "wrong_jigsaw";
      }
    } else {
      row.reason = to_string(*report.reason);
    }
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, int jobs, bool timing) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& row : run_sweep(spec, jobs, timing)) {
    out << row.n << ',' << row.q << ',' << row.k << ',' << row.trial << ','
        << row.seed << ',' << (row.exact ? "exact" : "failure") << ',' << row.reason
        << ',' << row.s << ',' << row.nodes << ',' << row.ms << '\n';
  }
}

}  // namespace jigsaw
