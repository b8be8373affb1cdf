#pragma once

// Growth of the simplicial ball around a vertex through its critical radii.
//
// At a critical radius r the ball B^s_{r-eps} is extended by the vertices at
// distance exactly r, one at a time. Each vertex x is attached by coning the
// part of its link that already lies in the set, Gamma = lk(x) ∩ C. The step is
// sound when Gamma is a tree of link diameter at most pi. The recorded steps
// form a certificate that can be checked independently of the run that made it.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cat0/balls.hpp"
#include "cat0/complex.hpp"
#include "cat0/exactnum.hpp"
#include "cat0/geodesics.hpp"

namespace cat0 {

// A subgraph of lk(x): nodes are neighbours of x, edges are pairs of
// neighbours spanning a face with x. Both lists are sorted.
struct LinkSubgraph {
  std::vector<VertexId> nodes;
  std::vector<std::array<VertexId, 2>> edges;  // a < b

  friend bool operator==(const LinkSubgraph&, const LinkSubgraph&) = default;
};

struct TreeEvidence {
  bool connected = false;
  bool acyclic = false;
  int diameter_units = 0;  // largest link distance between two nodes, in link edges
  bool diameter_ok = false;  // diameter_units <= n_x / 2

  bool valid() const { return connected && acyclic && diameter_ok; }
  friend bool operator==(const TreeEvidence&, const TreeEvidence&) = default;
};

struct ConeStep {
  VertexId x = 0;
  LinkSubgraph gamma;
  TreeEvidence evidence;
};

// A cone step whose link part is not a tree of diameter at most pi.
class InvalidStep : public std::runtime_error {
 public:
  InvalidStep(const std::string& what, int stage, ConeStep step)
      : std::runtime_error(what), stage(stage), step(std::move(step)) {}
  int stage;
  ConeStep step;
};

struct EpsilonChoice {
  RadicalSum value;
  bool formula = true;  // false: rational fallback below the formula value
};

struct ExpansionStage {
  RadicalSum radius;
  RadicalSum previous;  // previous critical radius, 0 for the first stage
  EpsilonChoice epsilon;
  std::vector<VertexId> boundary;  // V_{r,v} in vertex order
  std::string initial_hash;        // B^s_{r - eps}
  std::vector<ConeStep> steps;
  std::string final_hash;
};

struct ExpansionCertificate {
  std::string complex_hash;
  VertexId base = 0;
  RadicalSum R;
  std::vector<ExpansionStage> stages;
  std::string final_hash;
};

struct VerifyResult {
  bool valid = true;
  int stage = -1;  // -1 when the failure is not tied to a stage
  int step = -1;
  std::string reason;
};

struct BoundaryViolation {
  std::string kind;  // free_edge, three_in_boundary, transversality, convexity
  std::vector<VertexId> vertices;
  std::string detail;
};

struct BoundaryAudit {
  VertexId center = 0;
  RadicalSum radius;
  int boundary_vertices = 0;
  int boundary_edges = 0;
  int geodesics_checked = 0;
  std::vector<BoundaryViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Link-graph evidence for a subgraph of lk(x). Throws InputError when the
// subgraph is not contained in lk(x).
TreeEvidence tree_evidence(const TriComplex& cx, VertexId x, const LinkSubgraph& gamma);
// lk(x) ∩ c.
LinkSubgraph link_part(const TriComplex& cx, VertexId x, const SimplicialSet& c);
// The closed cone x * gamma. Throws InputError when gamma is not in lk(x).
SimplicialSet cone(const TriComplex& cx, VertexId x, const LinkSubgraph& gamma);

class Expansion {
 public:
  explicit Expansion(Geodesics& g) : g_(g), cx_(g.complex()), balls_(g) {}

  // Throws InputError when r < 1 or r is not a critical radius of v.
  EpsilonChoice epsilon_for(VertexId v, const RadicalSum& r);
  // Vertices at distance exactly r, increasing id. Throws InputError when r is regular.
  std::vector<VertexId> boundary_vertices(VertexId v, const RadicalSum& r);
  // With a seed, every stage processes its boundary in a shuffled order.
  // Throws InvalidStep when a step is invalid.
  ExpansionCertificate expand_to(VertexId v, const RadicalSum& R, std::optional<std::uint64_t> shuffle_seed = {});
  BoundaryAudit audit_boundary_lemmas(VertexId v, const RadicalSum& r);

 private:
  // Adds the vertex-pair geodesics of s that leave s to the audit. s lies in
  // the closed star of hub.
  void audit_convex(const SimplicialSet& s, VertexId hub, const std::string& name, BoundaryAudit& audit);

  Geodesics& g_;
  const TriComplex& cx_;
  Balls balls_;
};

// Never throws on bad certificate content; Undecided still propagates.
VerifyResult verify_certificate(const TriComplex& cx, const ExpansionCertificate& cert);

std::string certificate_to_json(const ExpansionCertificate& cert);
// Throws InputError on malformed text.
ExpansionCertificate certificate_from_json(const std::string& text);

}  // namespace cat0
