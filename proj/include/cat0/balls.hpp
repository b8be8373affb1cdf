#pragma once

// Metric balls around a vertex, their level spheres, and the simplicial balls
// they contain.
//
// The distance from the center is convex along every edge, so the number of
// times a level sphere crosses an edge follows from the endpoint distances and
// the edge minimum. Face intersections are then read off the perimeter of the
// face: every maximal run of the perimeter outside the ball is cut off by one
// arc of the sphere.

#include <string>
#include <vector>

#include "cat0/complex.hpp"
#include "cat0/exactnum.hpp"
#include "cat0/geodesics.hpp"

namespace cat0 {

// Type1: one arc cutting off the corner at the single inside vertex.
// Type2: one arc cutting off the single outside vertex; the ball holds one edge.
// Type3: one arc with both ends on the same edge, no vertex inside.
// Type4: two arcs.
enum class FaceType { Empty, Full, Type1, Type2, Type3, Type4 };

std::string to_string(FaceType t);

struct VertexPartition {
  std::vector<VertexId> inside, on, outside;
  bool critical() const { return !on.empty(); }
};

struct FaceArc {
  EdgeId from, to;  // edges holding the two ends; equal for a Type3 arc
};

struct FaceIntersection {
  FaceType type = FaceType::Empty;
  std::vector<FaceArc> arcs;
  int inside_vertices = 0;
};

struct BallView {
  VertexId center = 0;
  RadicalSum radius;
  const DistanceMap* map = nullptr;  // owned by the Geodesics object
  std::vector<int> side;             // per vertex: -1 inside, 0 on the sphere, +1 outside
  // Per edge and per face; empty when the radius is critical.
  std::vector<int> edge_crossings;
  std::vector<FaceIntersection> faces;

  bool critical() const { return edge_crossings.empty(); }
  std::vector<VertexId> vertices() const;  // inside or on the sphere
};

struct SphereViolation {
  std::string kind;  // components, parallel_arcs, closest_point, vertex_closest, edge_interior
  FaceId face = -1;
  EdgeId edge = -1;
  std::string detail;
};

struct SphereAudit {
  VertexId center = 0;
  RadicalSum radius;
  int faces_meeting = 0;  // faces that meet the level sphere
  int edges_checked = 0;
  std::vector<SphereViolation> violations;
  bool ok() const { return violations.empty(); }
};

// All queries need the closed ball to stay inside the safe radius of the
// complex (MarginExceeded otherwise) and may throw Undecided.
class Balls {
 public:
  explicit Balls(Geodesics& g) : g_(g), cx_(g.complex()) {}

  const TriComplex& complex() const { return cx_; }

  VertexPartition vertices_within(VertexId v, const RadicalSum& r);
  // Distinct vertex distances from v in (0, R], increasing.
  std::vector<RadicalSum> critical_radii(VertexId v, const RadicalSum& R);
  // Full subcomplex on the vertices at distance <= r.
  SimplicialSet simplicial_ball(VertexId v, const RadicalSum& r);
  BallView ball_view(VertexId v, const RadicalSum& r);
  // Refuses critical radii and spheres tangent to an edge with InputError.
  FaceType classify_face(VertexId v, const RadicalSum& r, FaceId f);
  SphereAudit audit_sphere_lemmas(VertexId v, const RadicalSum& r, bool check_edge_interiors = true);

 private:
  const DistanceMap& map(VertexId v, const RadicalSum& r);

  Geodesics& g_;
  const TriComplex& cx_;
};

// Reads the arcs of a face from the sides of its vertices and the crossing
// counts of its edges.
FaceIntersection face_intersection(const TriComplex& cx, FaceId f, const std::vector<int>& side,
                                   const std::vector<int>& crossings);

}  // namespace cat0
