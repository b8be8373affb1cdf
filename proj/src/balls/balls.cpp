#include "cat0/balls.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cat0 {

namespace {

// Exact comparison with a floating point shortcut.
int compare(const RadicalSum& x, const RadicalSum& y) {
  double d = x.approx() - y.approx();
  if (d < -1e-9) return -1;
  if (d > 1e-9) return 1;
  return cmp_radical_sums(x, y);
}

std::vector<int> sides(const TriComplex& cx, const DistanceMap& m, const RadicalSum& r) {
  std::vector<int> side(cx.num_vertices(), 1);
  for (VertexId w = 0; w < cx.num_vertices(); ++w)
    if (m.known(w)) side[w] = compare(*m.dist[w], r);
  return side;
}

}  // namespace

std::string to_string(FaceType t) {
  switch (t) {
    case FaceType::Empty: return "empty";
    case FaceType::Full: return "full";
    case FaceType::Type1: return "type1";
    case FaceType::Type2: return "type2";
    case FaceType::Type3: return "type3";
    case FaceType::Type4: return "type4";
  }
  return "?";
}

std::vector<VertexId> BallView::vertices() const {
  std::vector<VertexId> out;
  for (VertexId w = 0; w < static_cast<VertexId>(side.size()); ++w)
    if (side[w] <= 0) out.push_back(w);
  return out;
}

FaceIntersection face_intersection(const TriComplex& cx, FaceId f, const std::vector<int>& side,
                                   const std::vector<int>& crossings) {
  const auto& fv = cx.face(f);
  FaceIntersection out;
  for (VertexId w : fv) {
    if (side[w] == 0) throw InputError("face " + std::to_string(f) + " has a vertex on the sphere");
    if (side[w] < 0) ++out.inside_vertices;
  }
  struct Event {
    EdgeId edge;
    bool leaving;  // from inside to outside along the perimeter
  };
  std::vector<Event> events;
  bool in = side[fv[0]] < 0;
  for (int i = 0; i < 3; ++i) {
    VertexId p = fv[i], q = fv[(i + 1) % 3];
    EdgeId e = *cx.find_edge(p, q);
    for (int k = 0; k < crossings[e]; ++k) {
      events.push_back({e, in});
      in = !in;
    }
    if (in != (side[q] < 0)) throw std::logic_error("crossing counts disagree with vertex sides");
  }
  if (events.empty()) {
    out.type = out.inside_vertices == 3 ? FaceType::Full : FaceType::Empty;
    return out;
  }
  for (size_t j = 0; j < events.size(); ++j)
    if (events[j].leaving) out.arcs.push_back({events[j].edge, events[(j + 1) % events.size()].edge});
  if (out.arcs.size() >= 2) {
    out.type = FaceType::Type4;
  } else if (out.inside_vertices == 2) {
    out.type = FaceType::Type2;
  } else if (out.inside_vertices == 1) {
    out.type = FaceType::Type1;
  } else {
    out.type = FaceType::Type3;
  }
  return out;
}

const DistanceMap& Balls::map(VertexId v, const RadicalSum& r) {
  if (rs_sign(r) < 0) throw InputError("negative radius");
  g_.require_inside(v, r);
  return g_.map_from(v, upper_rational(r));
}

VertexPartition Balls::vertices_within(VertexId v, const RadicalSum& r) {
  const DistanceMap& m = map(v, r);
  auto side = sides(cx_, m, r);
  VertexPartition p;
  for (VertexId w = 0; w < cx_.num_vertices(); ++w)
    (side[w] < 0 ? p.inside : side[w] == 0 ? p.on : p.outside).push_back(w);
  return p;
}

std::vector<RadicalSum> Balls::critical_radii(VertexId v, const RadicalSum& R) {
  const DistanceMap& m = map(v, R);
  std::vector<RadicalSum> all;
  for (VertexId w = 0; w < cx_.num_vertices(); ++w)
    if (w != v && m.known(w) && compare(*m.dist[w], R) <= 0) all.push_back(*m.dist[w]);
  std::sort(all.begin(), all.end(), [](const RadicalSum& a, const RadicalSum& b) { return compare(a, b) < 0; });
  std::vector<RadicalSum> out;
  for (auto& d : all)
    if (out.empty() || compare(out.back(), d) != 0) out.push_back(std::move(d));
  return out;
}

SimplicialSet Balls::simplicial_ball(VertexId v, const RadicalSum& r) {
  auto p = vertices_within(v, r);
  std::vector<VertexId> in = p.inside;
  in.insert(in.end(), p.on.begin(), p.on.end());
  return full_subcomplex(cx_, in);
}

BallView Balls::ball_view(VertexId v, const RadicalSum& r) {
  const DistanceMap& m = map(v, r);
  BallView view;
  view.center = v;
  view.radius = r;
  view.map = &m;
  view.side = sides(cx_, m, r);
  if (std::count(view.side.begin(), view.side.end(), 0) > 0) return view;
  const auto& minima = g_.minima_from(v, upper_rational(r));
  view.edge_crossings.assign(cx_.num_edges(), 0);
  for (EdgeId e = 0; e < cx_.num_edges(); ++e) {
    auto [a, b] = cx_.edge(e);
    int sa = view.side[a], sb = view.side[b];
    if (sa < 0 && sb < 0) continue;
    if (sa != sb) {
      view.edge_crossings[e] = 1;
      continue;
    }
    if (!minima[e].known) continue;
    int c = compare(minima[e].value, r);
    if (c == 0) throw InputError("level sphere is tangent to edge " + std::to_string(e));
    if (c < 0) view.edge_crossings[e] = 2;
  }
  view.faces.reserve(cx_.num_faces());
  for (FaceId f = 0; f < cx_.num_faces(); ++f)
    view.faces.push_back(face_intersection(cx_, f, view.side, view.edge_crossings));
  return view;
}

FaceType Balls::classify_face(VertexId v, const RadicalSum& r, FaceId f) {
  if (f < 0 || f >= cx_.num_faces()) throw InputError("face " + std::to_string(f) + " out of range");
  BallView view = ball_view(v, r);
  if (view.critical()) throw InputError("radius " + r.to_string() + " is critical");
  const auto& fi = view.faces[f];
  if (fi.arcs.size() > 2) throw std::logic_error("level sphere meets face " + std::to_string(f) + " in more than two arcs");
  return fi.type;
}

SphereAudit Balls::audit_sphere_lemmas(VertexId v, const RadicalSum& r, bool check_edge_interiors) {
  BallView view = ball_view(v, r);
  if (view.critical()) throw InputError("radius " + r.to_string() + " is critical");
  const auto& minima = g_.minima_from(v, upper_rational(r));
  SphereAudit audit;
  audit.center = v;
  audit.radius = r;
  std::set<EdgeId> reported;
  for (FaceId f = 0; f < cx_.num_faces(); ++f) {
    const auto& fi = view.faces[f];
    if (fi.type == FaceType::Empty || fi.type == FaceType::Full) continue;
    ++audit.faces_meeting;
    std::string fs = "face " + std::to_string(f);
    if (fi.arcs.size() > 2)
      audit.violations.push_back({"components", f, -1, fs + " meets the sphere in " + std::to_string(fi.arcs.size()) + " arcs"});
    for (size_t i = 0; i < fi.arcs.size(); ++i)
      for (size_t j = i + 1; j < fi.arcs.size(); ++j) {
        auto key = [](const FaceArc& a) { return std::minmax(a.from, a.to); };
        if (key(fi.arcs[i]) == key(fi.arcs[j]))
          audit.violations.push_back({"parallel_arcs", f, fi.arcs[i].from, fs + " has two arcs joining the same edges"});
      }
    bool all_known = true, vertex_closest = false;
    for (EdgeId e : cx_.face_edges(f)) {
      const auto& mn = minima[e];
      if (!mn.known) {
        all_known = false;
        continue;
      }
      if (!mn.unique && reported.insert(e).second)
        audit.violations.push_back({"closest_point", f, e, "edge " + std::to_string(e) + " has two closest points"});
      if (mn.t.is_zero() || mn.t == QField(1)) vertex_closest = true;
    }
    const auto& fv = cx_.face(f);
    bool contains_center = std::find(fv.begin(), fv.end(), v) != fv.end();
    if (all_known && !contains_center && !vertex_closest)
      audit.violations.push_back({"vertex_closest", f, -1, fs + " has every edge closest point inside its edge"});
  }
  if (check_edge_interiors) {
    std::vector<std::pair<EdgeId, Rational>> mids;
    for (EdgeId e = 0; e < cx_.num_edges(); ++e) {
      auto [a, b] = cx_.edge(e);
      if (view.side[a] < 0 && view.side[b] < 0) mids.push_back({e, Rational(1, 2)});
    }
    auto d = g_.edge_point_distances(*view.map, mids);
    audit.edges_checked = static_cast<int>(mids.size());
    for (size_t i = 0; i < mids.size(); ++i)
      if (!d[i] || compare(*d[i], r) >= 0)
        audit.violations.push_back({"edge_interior", -1, mids[i].first,
                                    "midpoint of edge " + std::to_string(mids[i].first) + " lies outside the ball"});
  }
  return audit;
}

}  // namespace cat0
