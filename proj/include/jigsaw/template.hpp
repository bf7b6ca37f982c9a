#pragma once
// Window templates: an edge set through the origin of the window box plus a
// partial placement that is rigid on each quasiblock, classified large/small
// with cluster counts and gamma. Used by the structural property suites.
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "jigsaw/feasibility.hpp"
#include "jigsaw/grid.hpp"
#include "jigsaw/jigsaw.hpp"

namespace jigsaw {

struct Template {
  int k = 1;              // window radius; the box is [-k,k]^2
  EdgeSet A;              // subset of LambdaBar([-k,k]^2)
  PlacementMap h;         // defined on the union of the quasiblocks of A
  Vertex centre;          // h(0,0)
};

enum class TemplateKind { Large, Small };

struct TemplateInfo {
  TemplateKind kind = TemplateKind::Small;
  int delta = 0;   // |A|
  int r1 = 0;      // number of clusters
  int r2 = 0;      // number of quasiblocks minus r1
  int gamma = 0;   // gamma(h)
};

// condition 0 marks a structural precondition (domain mismatch, image off the
// grid, edge outside the window); conditions 1..7 name the first violated
// template condition.
struct TemplateRejection {
  int condition = 0;
  std::string detail;
};

using TemplateValidation = std::variant<TemplateInfo, TemplateRejection>;

TemplateValidation validate_template(const Template& t, JigsawParams params);

// Extraction step shared by the sampler: takes the dual-connected component
// of Lambda_f through an origin-incident split edge of f (none when no such
// edge exists) and restricts f to the quasiblocks of that component. Returns
// a template only if validate_template accepts it.
std::optional<Template> template_from_map(const PlacementMap& f, int k,
                                          JigsawParams params);

// Draws a random injective map on [-k,k]^2 from a family of block
// translations (full rectangle partitions, or a base block with one or two
// relocated interior rectangles) and runs template_from_map on it.
std::optional<Template> sample_template(int k, JigsawParams params, uint64_t seed);

}  // namespace jigsaw
