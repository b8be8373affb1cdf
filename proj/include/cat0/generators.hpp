#pragma once

// Generators for finite truncations of the infinite complexes.
//
// gen_seifert builds the planar tessellation by the triangle of the disk
// condition (all edge orders 2). gen_regular builds a complex in which every
// edge joining types i and j lies in exactly k_ij faces, by repeatedly
// completing vertex links to a fixed model graph.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cat0/complex.hpp"
#include "cat0/plane.hpp"

namespace cat0 {

struct SeifertPatch {
  TriComplex complex;
  std::vector<Vec2> coords;  // position of each vertex in the plane, base at the origin
};

// All simplices within `radius` combinatorial steps of a type-1 base vertex.
// Throws InputError for radius < 0 and OutOfScope for non-base conditions.
SeifertPatch gen_seifert_patch(const DiskCondition& dc, int radius);
TriComplex gen_seifert(const DiskCondition& dc, int radius);

// Bipartite model for the link of a type-i vertex: nodes carry the type of
// the neighbouring vertex they stand for.
struct LinkModel {
  std::vector<int> node_types;
  std::vector<std::array<int, 2>> edges;
};

struct RegularSpec {
  DiskCondition dc;
  std::map<std::pair<int, int>, int> edge_orders;  // keys (i, j) with i < j; missing pairs default to 2
  std::map<int, LinkModel> link_overrides;        // optional explicit link per vertex type

  int order(int ti, int tj) const;
};

// Parses "I,J:K" into ((min(I,J), max(I,J)), K).
std::pair<std::pair<int, int>, int> parse_edge_order(const std::string& text);

// Builds the standard link model for a type-i vertex, or throws InputError when
// no model is known for the requested orders.
LinkModel standard_link_model(const RegularSpec& spec, int type);
// Girth of the model in link edges (nullopt when acyclic).
std::optional<int> model_girth(const LinkModel& m);

// Throws InputError when a link model violates its degree requirements or has
// a cycle of total angle below 2*pi.
TriComplex gen_regular(const RegularSpec& spec, int radius);

}  // namespace cat0
