#pragma once

// Exact geodesics in a typed triangle complex.
//
// A straight segment leaving a vertex y is followed through the faces it
// crosses by unfolding them into the plane (y at the origin). The set of all
// such segments is explored as a tree of beams: wedges of directions that pass
// through the same sequence of faces. Beams split at vertices, which is where
// geodesics may bend. Vertex-to-vertex distances are then shortest
// concatenations of these direct segments, found by Dijkstra over vertices with
// exact radical comparisons.

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "cat0/complex.hpp"
#include "cat0/errors.hpp"
#include "cat0/exactnum.hpp"
#include "cat0/plane.hpp"

namespace cat0 {

struct Corridor {
  std::vector<FaceId> faces;
  std::vector<EdgeId> edges;  // edges[j] is shared by faces[j] and faces[j+1]
};

struct DevelopedChart {
  std::vector<FaceId> faces;
  // Images of the three vertices of each corridor face, in the order of
  // TriComplex::face.
  std::vector<std::array<Vec2, 3>> face_points;
  Vec2 position(const TriComplex& cx, size_t face_index, VertexId v) const;
};

// Unfolds a corridor. The first face is placed with its longest side on the
// positive x-axis, starting at the origin at the endpoint of larger order
// (ties broken by lower id), third vertex above the axis. Throws InputError for
// an invalid corridor and MarginExceeded when a face has no interior vertex.
DevelopedChart develop(const TriComplex& cx, const Corridor& corridor);

// Points of beams and edge sightings are indices into Scan::points.
struct Beam {
  FaceId face;
  int parent;        // index of the beam it came from, -1 for a face at the source
  EdgeId entry;      // edge crossed to enter `face`, -1 at the source
  VertexId right_v, left_v;
  int right, left;   // images of the entry edge endpoints
  int ray_r, ray_l;  // bounding directions, ray_l counterclockwise of ray_r
  int behind;        // image of the third vertex of the previous face
};

struct VertexSighting {
  VertexId vertex;
  QField dist_sq;
  Vec2 image;
  int beam;
  bool along_edge;  // the segment runs along an edge of the source
};

struct EdgeSighting {
  EdgeId edge;
  int p0, p1;           // images of edge(e)[0] and edge(e)[1]
  bool full;            // the whole edge is visible
  int ray_lo, ray_hi;   // otherwise the piece between these two rays
  int beam;
};

// The visible parameter range [t_lo, t_hi] of a sighting, t measured from
// edge(e)[0] to edge(e)[1].
struct Scan;
std::pair<QField, QField> sighting_params(const Scan& sc, const EdgeSighting& s);
// Closest point of the visible piece to the source: squared distance and t.
std::pair<QField, QField> sighting_closest(const Scan& sc, const EdgeSighting& s);

struct Scan {
  VertexId source = 0;
  Rational bound;  // every straight segment from the source of length <= bound is represented
  std::vector<Vec2> points;
  std::vector<char> roots;  // which faces of faces_at(source) are scanned; empty means all
  std::vector<Beam> beams;
  std::vector<VertexSighting> vertices;
  std::vector<EdgeSighting> edges;

  Corridor corridor(int beam) const;
};

// Exact distances from one source, valid for every vertex at distance <= bound.
struct DistanceMap {
  VertexId source = 0;
  Rational bound;
  std::vector<std::optional<RadicalSum>> dist;
  std::vector<int> pred;         // previous breakpoint, -1 at the source or when unknown
  std::vector<int> pred_sight;   // index into the predecessor's scan sightings
  std::vector<const Scan*> pred_scan;
  std::vector<char> tied;        // an equal-length alternative was seen

  bool known(VertexId v) const { return dist[v].has_value(); }
};

struct EdgeMinimum {
  bool known = false;  // false when the minimum exceeds the map bound
  RadicalSum value;
  QField t;            // parameter of the closest point
  bool unique = true;  // no other candidate reaches the same value at a different point
  VertexId via = -1;   // last breakpoint before the closest point
};

struct GeodesicResult {
  VertexId from = 0, to = 0;
  RadicalSum length;
  std::vector<VertexId> breakpoints;  // from, intermediate vertices, to
  std::vector<Corridor> corridors;    // one per segment
  bool unique = true;

  CertInterval interval(int bits = 64) const { return CertInterval(length, bits); }
};

// Direction of a straight segment leaving a vertex x, in the chart of the
// first face it enters (x at the origin).
struct Direction {
  FaceId face = -1;
  Vec2 vec;
  VertexId right_v = -1, left_v = -1;  // the other two vertices of the face
  Vec2 right, left;                    // and their images
  std::optional<VertexId> along;       // set when the segment runs along the edge to this vertex
};

struct AngleResult {
  double radians = 0;
  std::optional<int> units;  // exact value in pi/12 units when both directions run along edges
  int compare_pi = -1;       // sign of (angle - pi), decided exactly
};

class Geodesics {
 public:
  explicit Geodesics(const TriComplex& cx);

  const TriComplex& complex() const { return cx_; }

  // Beams from y covering all straight segments of length <= bound.
  const Scan& scan(VertexId y, const Rational& bound);

  DistanceMap distances_from(VertexId s, const Rational& bound);
  // Squared length of the shortest straight segment from u to w no longer than
  // bound, or nullopt.
  std::optional<QField> direct_distance(VertexId u, VertexId w, const RadicalSum& bound);
  GeodesicResult vertex_distance(VertexId u, VertexId w);
  GeodesicResult geodesic(const DistanceMap& m, VertexId w);

  std::vector<EdgeMinimum> edge_minima(const DistanceMap& m);
  EdgeMinimum edge_minimum(const DistanceMap& m, EdgeId e);
  // Distance from m's source to the point of e at parameter t in [0, 1]
  // (measured from edge(e)[0]), or nullopt when it exceeds the map bound.
  std::optional<RadicalSum> edge_point_distance(const DistanceMap& m, EdgeId e, const Rational& t);
  std::vector<std::optional<RadicalSum>> edge_point_distances(const DistanceMap& m,
                                                              const std::vector<std::pair<EdgeId, Rational>>& points);

  // Cached maps and edge minima from s, valid up to at least `bound`.
  // References stay valid for the lifetime of this object.
  const DistanceMap& map_from(VertexId s, const Rational& bound);
  const std::vector<EdgeMinimum>& minima_from(VertexId s, const Rational& bound);

  // Distance from the base vertex to the truncation frontier: every point
  // closer than this to the base lies in a faithful part of the complex.
  // Infinite (nullopt) when the complex has no frontier.
  const std::optional<RadicalSum>& safe_radius();
  // Distances from the base valid up to the safe radius.
  const DistanceMap& base_map();
  // Throws MarginExceeded unless d(base, v) + reach < safe radius.
  void require_inside(VertexId v, const RadicalSum& reach);

  // Angle at x between the geodesics to y and to z: the length of the
  // shortest path in the link of x joining their directions.
  AngleResult angle_at(VertexId x, VertexId y, VertexId z);
  AngleResult angle_between(VertexId x, const Direction& a, const Direction& b);
  static Direction direction(const Scan& sc, const VertexSighting& s);

  // Rational upper bound for the length of the shortest edge path from s.
  std::vector<Rational> skeleton_bounds(VertexId s);

 private:
  void run_scan(Scan& scan);
  // Scan restricted to the star faces in `mask` (indexed like faces_at(y)).
  const Scan& masked_scan(VertexId y, const Rational& bound, const std::vector<char>& mask);
  // Star faces at y that contain a direction at link distance >= pi from the
  // direction back along the geodesic from m's source. Empty when every face
  // must be kept.
  std::vector<char> continuation_mask(const DistanceMap& m, VertexId y);
  const Scan& continuation_scan(const DistanceMap& m, VertexId y, const Rational& bound);

  const TriComplex& cx_;
  std::vector<std::unique_ptr<Scan>> scans_;
  std::vector<std::vector<std::unique_ptr<Scan>>> masked_;
  std::vector<std::unique_ptr<Scan>> retired_;  // superseded scans, still referenced by distance maps
  std::vector<Rational> upper_len_;  // per edge
  bool safe_done_ = false;
  std::optional<RadicalSum> safe_;
  std::unique_ptr<DistanceMap> base_map_;
  struct CachedMap {
    std::unique_ptr<DistanceMap> map;
    std::unique_ptr<std::vector<EdgeMinimum>> minima;
  };
  std::map<VertexId, CachedMap> maps_;
  std::vector<CachedMap> retired_maps_;
};

}  // namespace cat0
