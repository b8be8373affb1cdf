#pragma once

// Typed triangle 2-complexes. Every face has one vertex of each type 1, 2, 3;
// a type-i vertex has face angle 2*pi/n_i. Complexes are finite truncations of
// an infinite complex: vertices whose combinatorial distance from the base
// vertex (id 0) is below the boundary margin have complete neighbourhoods.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cat0/errors.hpp"
#include "cat0/exactnum.hpp"

namespace cat0 {

using VertexId = int;
using EdgeId = int;
using FaceId = int;

// A disk condition that is valid input but outside the supported geometry.
class OutOfScope : public InputError {
 public:
  explicit OutOfScope(const std::string& what) : InputError(what) {}
};

struct DiskCondition {
  std::array<int, 3> n{};  // n[i] is the order of a type-(i+1) vertex

  int order(int type) const { return n.at(type - 1); }
  friend bool operator==(const DiskCondition&, const DiskCondition&) = default;
  std::string to_string() const;
};

enum class DiskStatus {
  Base,        // sum 1/n_i = 1/2 and a permutation of (6,6,6), (4,8,8), (4,6,12)
  OutOfScope,  // sum 1/n_i <= 1/2 but not a base condition
  Rejected,    // sum 1/n_i > 1/2
};

struct DiskVerdict {
  DiskStatus status;
  bool accepted;                   // sum 1/n_i <= 1/2
  std::optional<std::array<int, 3>> base;  // sorted base triple when status == Base
  Rational reciprocal_sum;
};

// Throws InputError when some n_i <= 0.
DiskVerdict validate_disk_condition(const DiskCondition& dc);
// Throws OutOfScope / InputError unless dc is a base condition.
void require_base(const DiskCondition& dc);

struct TriangleShape {
  std::array<int, 3> angle_units{};      // angle at the type-(i+1) vertex, in pi/12
  std::array<Rational, 3> side_sq{};     // squared side opposite the type-(i+1) vertex

  // Squared length of the side joining vertices of types ti and tj (1-based, distinct).
  const Rational& side_between(int ti, int tj) const { return side_sq.at(6 - ti - tj - 1); }
};

TriangleShape triangle_shape(const DiskCondition& dc);

enum class Connectivity {
  Collapsible,   // free-face collapses reduce the complex to a tree
  HomologyOnly,  // Euler characteristic 1 and vanishing first homology mod p
  NotSimplyConnected,
};

class TriComplex {
 public:
  // Validates and builds. Throws InputError on malformed input.
  static TriComplex build(DiskCondition dc, std::vector<int> types, std::vector<std::array<VertexId, 3>> faces,
                          int boundary_margin);

  const DiskCondition& disk_condition() const { return dc_; }
  const TriangleShape& shape() const { return shape_; }
  int boundary_margin() const { return margin_; }
  static constexpr VertexId base() { return 0; }

  int num_vertices() const { return static_cast<int>(types_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  int type(VertexId v) const { return types_[v]; }
  int order(VertexId v) const { return dc_.order(types_[v]); }
  int angle_units(VertexId v) const { return shape_.angle_units[types_[v] - 1]; }
  const std::array<VertexId, 2>& edge(EdgeId e) const { return edges_[e]; }
  const std::array<VertexId, 3>& face(FaceId f) const { return faces_[f]; }
  const std::array<EdgeId, 3>& face_edges(FaceId f) const { return face_edges_[f]; }
  const std::vector<EdgeId>& edges_at(VertexId v) const { return vertex_edges_[v]; }
  const std::vector<FaceId>& faces_at(VertexId v) const { return vertex_faces_[v]; }
  const std::vector<FaceId>& faces_of_edge(EdgeId e) const { return edge_faces_[e]; }
  const std::vector<VertexId>& neighbors(VertexId v) const { return neighbors_[v]; }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  std::optional<FaceId> find_face(VertexId a, VertexId b, VertexId c) const;
  VertexId other_end(EdgeId e, VertexId v) const { return edges_[e][0] == v ? edges_[e][1] : edges_[e][0]; }
  // The vertex of f that is not on e.
  VertexId opposite(FaceId f, EdgeId e) const;
  // The edge of f that does not contain v.
  EdgeId opposite_edge(FaceId f, VertexId v) const;
  const Rational& edge_length_sq(EdgeId e) const { return edge_len_sq_[e]; }

  int graph_distance(VertexId v) const { return graph_dist_[v]; }
  bool is_interior(VertexId v) const { return graph_dist_[v] < margin_; }
  // Edges with both endpoints on the outer sphere of the truncation.
  bool is_frontier_edge(EdgeId e) const { return !is_interior(edges_[e][0]) && !is_interior(edges_[e][1]); }
  Connectivity connectivity() const { return connectivity_; }

  // Stable hash of the combinatorial structure.
  std::string structural_hash() const;

  const std::vector<int>& types() const { return types_; }
  const std::vector<std::array<VertexId, 3>>& faces() const { return faces_; }

 private:
  TriComplex() = default;
  void index();
  void validate();

  DiskCondition dc_;
  TriangleShape shape_;
  int margin_ = 0;
  std::vector<int> types_;
  std::vector<std::array<VertexId, 3>> faces_;
  std::vector<std::array<VertexId, 2>> edges_;
  std::vector<std::array<EdgeId, 3>> face_edges_;
  std::vector<std::vector<EdgeId>> vertex_edges_;
  std::vector<std::vector<FaceId>> vertex_faces_;
  std::vector<std::vector<FaceId>> edge_faces_;
  std::vector<std::vector<VertexId>> neighbors_;
  std::vector<Rational> edge_len_sq_;
  std::vector<int> graph_dist_;
  Connectivity connectivity_ = Connectivity::Collapsible;
};

// Sorted sets of simplices. Usually closed under taking faces.
struct SimplicialSet {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  std::vector<FaceId> faces;

  bool has_vertex(VertexId v) const;
  bool has_edge(EdgeId e) const;
  bool has_face(FaceId f) const;
  void normalize();  // sort and deduplicate
  friend bool operator==(const SimplicialSet&, const SimplicialSet&) = default;
};

SimplicialSet full_subcomplex(const TriComplex& cx, const std::vector<VertexId>& vertices);
// Adds the vertices and edges of every listed face and the vertices of every listed edge.
SimplicialSet closure(const TriComplex& cx, SimplicialSet s);
std::string set_hash(const SimplicialSet& s);

SimplicialSet star(const TriComplex& cx, VertexId x);       // closed star
SimplicialSet open_star(const TriComplex& cx, VertexId x);  // simplices containing x
SimplicialSet link(const TriComplex& cx, VertexId x);       // star minus open star
SimplicialSet adj(const TriComplex& cx, const SimplicialSet& c, VertexId x);       // star(x) ∩ c
SimplicialSet adj_open(const TriComplex& cx, const SimplicialSet& c, VertexId x);  // adj minus lk(x)
SimplicialSet set_union(const SimplicialSet& a, const SimplicialSet& b);
SimplicialSet set_intersection(const SimplicialSet& a, const SimplicialSet& b);
SimplicialSet set_difference(const SimplicialSet& a, const SimplicialSet& b);

// The link of a vertex as a graph: one node per edge at the vertex (labelled by
// the neighbouring vertex), one link edge per face at the vertex. Every link
// edge has length 2*pi/n, n the order of the centre.
struct LinkGraph {
  VertexId center = 0;
  int order = 0;
  std::vector<VertexId> nodes;                 // sorted neighbour ids
  std::vector<std::array<int, 2>> links;       // indices into nodes
  std::vector<FaceId> link_faces;              // face behind each link edge
  std::vector<std::vector<int>> adjacency;     // node -> incident link indices

  int node_index(VertexId y) const;  // -1 when absent
  int degree(int node) const { return static_cast<int>(adjacency[node].size()); }
  int other(int link, int node) const { return links[link][0] == node ? links[link][1] : links[link][0]; }
  int edge_units() const { return 24 / order; }
};

// Throws MarginExceeded when v is not an interior vertex.
LinkGraph link_graph(const TriComplex& cx, VertexId v);

struct LinkCheck {
  bool pass = true;
  std::optional<int> girth;          // in link edges; nullopt for a forest
  std::optional<int> girth_units;    // in pi/12
  std::vector<VertexId> witness;     // a shortest cycle (node labels) on failure
};

LinkCheck check_link_condition(const LinkGraph& g);
LinkCheck check_link_condition(const TriComplex& cx, VertexId v);
// Shortest cycle in the graph, as node indices; empty when acyclic.
std::vector<int> shortest_cycle(const LinkGraph& g);

struct Cat0Report {
  bool certified = false;
  int interior_vertices = 0;
  std::vector<VertexId> failing;
  Connectivity connectivity = Connectivity::Collapsible;
};

Cat0Report certify_cat0(const TriComplex& cx);

}  // namespace cat0
