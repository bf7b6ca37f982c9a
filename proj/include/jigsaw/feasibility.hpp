#pragma once
// Placement maps, blocks, split edges, constraint graphs and gamma, plus the
// q^(-gamma) feasibility law with its Monte Carlo check.
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "jigsaw/grid.hpp"
#include "jigsaw/jigsaw.hpp"

namespace jigsaw {

// Injective map from a finite subset of Z^2 into Z^2 (typically into [n]^2).
class PlacementMap {
 public:
  PlacementMap() = default;
  explicit PlacementMap(std::map<Vertex, Vertex> entries);  // throws DataError

  static PlacementMap translation(const VertexSet& domain, Vertex offset);

  bool contains(Vertex v) const { return entries_.count(v) != 0; }
  Vertex at(Vertex v) const { return entries_.at(v); }
  const std::map<Vertex, Vertex>& entries() const { return entries_; }
  VertexSet domain() const;
  size_t size() const { return entries_.size(); }

  // All images inside [n]^2?
  bool maps_into(int n) const;

 private:
  std::map<Vertex, Vertex> entries_;
};

// Maximal connected subsets on which f acts as a translation. Every domain
// vertex belongs to exactly one block.
std::vector<VertexSet> blocks(const PlacementMap& f);

// Induced edges of the domain whose endpoints lie in different blocks.
EdgeSet split_edges(const PlacementMap& f);

// Lambda_f: the boundary of the domain united with the split edges.
EdgeSet lambda_f(const PlacementMap& f);

// Graph on lattice edges with one constraint per f-split edge. Maximum degree
// is at most two, so it is a union of paths and cycles.
struct ConstraintGraph {
  std::vector<Edge> vertices;                     // lattice edges, deduplicated
  std::vector<std::pair<int, int>> constraints;   // one per split edge
  std::vector<int> component_of;                  // per vertex
  int num_components = 0;
  int gamma = 0;  // |V| - #components
};
ConstraintGraph constraint_graph(const PlacementMap& f);
int gamma(const PlacementMap& f);

// Adjacency-scan definition: facing colours agree across every induced edge
// of the domain.
bool is_feasible(const Jigsaw& j, const PlacementMap& f);
// Equivalent reformulation: the jigsaw is constant on every component of the
// constraint graph. Kept as an independent implementation; the two are
// cross-checked in tests.
bool is_feasible_components(const Jigsaw& j, const PlacementMap& f);

struct FeasibilityMc {
  int gamma = 0;
  int64_t trials = 0;
  int64_t hits = 0;
  double empirical = 0.0;
  double exact = 0.0;       // q^(-gamma)
  double std_error = 0.0;   // binomial, at the exact probability
  double z = 0.0;
};

// Fraction of `trials` independent J(n,q) samples for which f is feasible,
// reported against the exact law q^(-gamma(f)). Trials parallelize over
// derived seeds; aggregation happens in trial order.
FeasibilityMc feasibility_mc(const PlacementMap& f, JigsawParams params,
                             int64_t trials, uint64_t seed, int jobs = 1);

// Text form used by the gamma-mc CLI verb: lines "x y -> x' y'".
void write_placement_map(std::ostream& out, const PlacementMap& f);
PlacementMap read_placement_map(std::istream& in);

}  // namespace jigsaw
