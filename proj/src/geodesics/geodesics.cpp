#include "cat0/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <tuple>

namespace cat0 {

namespace {

const QField& side_length(const Rational& len_sq) {
  static const std::array<QField, 5> roots = {QField(0), QField(1), QField::sqrt2(), QField::sqrt3(), QField(2)};
  if (len_sq.get_den() != 1 || len_sq < 1 || len_sq > 4) throw InputError("unexpected edge length");
  return roots[len_sq.get_num().get_si()];
}

// Reflection across the line PQ when |Q - P|^2 is the rational len_sq.
Vec2 reflect_rational(const Vec2& z, const Vec2& p, const Vec2& q, const Rational& len_sq) {
  Vec2 d = q - p;
  QField t = dot(z - p, d).scaled(1 / len_sq);
  Vec2 foot = p + t * d;
  return foot + foot - z;
}

// Squared distance from the origin to the segment PQ, |Q - P|^2 = len_sq.
QField segment_dist_sq(const Vec2& p, const Vec2& q, const Rational& len_sq) {
  Vec2 d = q - p;
  QField t = (-dot(p, d)).scaled(1 / len_sq);
  if (t.sign() <= 0) return norm2(p);
  if (qf_compare(t, QField(1)) >= 0) return norm2(q);
  return norm2(p + t * d);
}

bool within(const QField& dist_sq, const Rational& bound) {
  double d = dist_sq.to_double(), b = bound.get_d();
  if (d < b * b - 1e-6) return true;
  if (d > b * b + 1e-6) return false;
  return qf_compare(dist_sq, QField(bound * bound)) <= 0;
}

// Distance from the origin to the part of segment RL between the rays RR and
// RL2, in floating point. Used only to discard beams, with slack.
double wedge_dist(const std::array<double, 2>& r, const std::array<double, 2>& l, const std::array<double, 2>& rr,
                  const std::array<double, 2>& rl) {
  double dx = l[0] - r[0], dy = l[1] - r[1];
  auto param = [&](const std::array<double, 2>& ray) {
    double den = dx * ray[1] - dy * ray[0];
    if (std::abs(den) < 1e-12) return -1.0;
    return (ray[0] * r[1] - ray[1] * r[0]) / den;
  };
  double t1 = std::clamp(param(rr), 0.0, 1.0), t2 = std::clamp(param(rl), 0.0, 1.0);
  if (t1 > t2) std::swap(t1, t2);
  double t = std::clamp(-(r[0] * dx + r[1] * dy) / (dx * dx + dy * dy), t1, t2);
  return std::hypot(r[0] + t * dx, r[1] + t * dy);
}

// Position of v's image given the images of the face vertices in the order
// of TriComplex::face.
int index_in(const std::array<VertexId, 3>& f, VertexId v) {
  for (int i = 0; i < 3; ++i)
    if (f[i] == v) return i;
  return -1;
}

// Sign of (alpha + beta - m*pi/12) where alpha and beta are the angles of the
// vectors (ax, ay) and (bx, by) with ay, by >= 0 and alpha + beta <= pi.
int compare_angle_sum(const Vec2& a, const Vec2& b, int m) {
  auto zero = [](const Vec2& v) { return v.y.sign() == 0 && v.x.sign() > 0; };
  if (m < 0) return 1;
  if (m == 0) return zero(a) && zero(b) ? 0 : 1;
  Vec2 p{a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x};
  if (m >= 12) {
    if (m > 12) return -1;
    return p.y.sign() == 0 && p.x.sign() < 0 ? 0 : -1;
  }
  QField c = cos_units(m), s = -sin_units(m);
  QField im = p.x * s + p.y * c;
  return im.sign();
}

double angle_of(const Vec2& v) { return std::atan2(v.y.to_double(), v.x.to_double()); }

}  // namespace

Vec2 DevelopedChart::position(const TriComplex& cx, size_t face_index, VertexId v) const {
  int i = index_in(cx.face(faces.at(face_index)), v);
  if (i < 0) throw InputError("vertex " + std::to_string(v) + " is not on the face");
  return face_points[face_index][i];
}

DevelopedChart develop(const TriComplex& cx, const Corridor& corridor) {
  if (corridor.faces.empty()) throw InputError("empty corridor");
  if (corridor.edges.size() + 1 != corridor.faces.size()) throw InputError("corridor needs one edge between faces");
  for (FaceId f : corridor.faces) {
    if (f < 0 || f >= cx.num_faces()) throw InputError("corridor face out of range");
    bool inside = false;
    for (VertexId v : cx.face(f)) inside = inside || cx.is_interior(v);
    if (!inside) throw MarginExceeded("corridor leaves the boundary margin at face " + std::to_string(f));
  }
  DevelopedChart chart;
  chart.faces = corridor.faces;
  const auto& f0 = cx.face(corridor.faces[0]);
  // Longest side; its endpoint of larger order (then lower id) goes to the origin.
  int best = -1;
  std::tuple<Rational, int, int> best_key;
  for (int i = 0; i < 3; ++i) {
    VertexId a = f0[(i + 1) % 3], b = f0[(i + 2) % 3];
    VertexId o = (cx.order(a) > cx.order(b) || (cx.order(a) == cx.order(b) && a < b)) ? a : b;
    auto e = cx.find_edge(a, b);
    std::tuple<Rational, int, int> key{-cx.edge_length_sq(*e), -cx.order(o), o};
    if (best < 0 || key < best_key) {
      best = i;
      best_key = key;
    }
  }
  VertexId a = f0[(best + 1) % 3], b = f0[(best + 2) % 3], c = f0[best];
  VertexId o = (cx.order(a) > cx.order(b) || (cx.order(a) == cx.order(b) && a < b)) ? a : b;
  VertexId x = o == a ? b : a;
  std::array<Vec2, 3> pts;
  pts[index_in(f0, o)] = {QField(0), QField(0)};
  pts[index_in(f0, x)] = {side_length(cx.edge_length_sq(*cx.find_edge(o, x))), QField(0)};
  QField l = side_length(cx.edge_length_sq(*cx.find_edge(o, c)));
  int u = cx.angle_units(o);
  pts[index_in(f0, c)] = {l * cos_units(u), l * sin_units(u)};
  chart.face_points.push_back(pts);

  for (size_t j = 1; j < corridor.faces.size(); ++j) {
    FaceId prev = corridor.faces[j - 1], cur = corridor.faces[j];
    EdgeId e = corridor.edges[j - 1];
    if (e < 0 || e >= cx.num_edges()) throw InputError("corridor edge out of range");
    if (prev == cur) throw InputError("corridor repeats a face");
    const auto& fe = cx.face_edges(prev);
    const auto& ce = cx.face_edges(cur);
    if (std::find(fe.begin(), fe.end(), e) == fe.end() || std::find(ce.begin(), ce.end(), e) == ce.end())
      throw InputError("corridor faces do not share the listed edge");
    auto [p, q] = cx.edge(e);
    const auto& pf = cx.face(prev);
    const auto& prev_pts = chart.face_points.back();
    Vec2 pp = prev_pts[index_in(pf, p)], qp = prev_pts[index_in(pf, q)];
    Vec2 zp = prev_pts[index_in(pf, cx.opposite(prev, e))];
    const auto& cf = cx.face(cur);
    std::array<Vec2, 3> np;
    np[index_in(cf, p)] = pp;
    np[index_in(cf, q)] = qp;
    np[index_in(cf, cx.opposite(cur, e))] = reflect_rational(zp, pp, qp, cx.edge_length_sq(e));
    chart.face_points.push_back(np);
  }
  return chart;
}

std::pair<QField, QField> sighting_params(const Scan& sc, const EdgeSighting& s) {
  if (s.full) return {QField(0), QField(1)};
  const Vec2& p0 = sc.points[s.p0];
  Vec2 d = sc.points[s.p1] - p0;
  auto param = [&](const Vec2& ray) { return cross(ray, p0) / cross(d, ray); };
  QField a = param(sc.points[s.ray_lo]), b = param(sc.points[s.ray_hi]);
  if (qf_compare(a, b) > 0) std::swap(a, b);
  return {a, b};
}

std::pair<QField, QField> sighting_closest(const Scan& sc, const EdgeSighting& s) {
  auto [lo, hi] = sighting_params(sc, s);
  const Vec2& p0 = sc.points[s.p0];
  Vec2 d = sc.points[s.p1] - p0;
  QField t = -dot(p0, d) / norm2(d);
  if (qf_compare(t, lo) < 0) t = lo;
  if (qf_compare(t, hi) > 0) t = hi;
  return {norm2(p0 + t * d), t};
}

namespace {

// Floating point version of sighting_closest, distance only.
double approx_closest(const Scan& sc, const EdgeSighting& s) {
  const Vec2& p = sc.points[s.p0];
  const Vec2& q = sc.points[s.p1];
  double px = p.x.to_double(), py = p.y.to_double();
  double dx = q.x.to_double() - px, dy = q.y.to_double() - py;
  double lo = 0, hi = 1;
  if (!s.full) {
    auto param = [&](int ray) {
      double rx = sc.points[ray].x.to_double(), ry = sc.points[ray].y.to_double();
      return (rx * py - ry * px) / (dx * ry - dy * rx);
    };
    lo = param(s.ray_lo);
    hi = param(s.ray_hi);
    if (lo > hi) std::swap(lo, hi);
  }
  double t = std::clamp(-(px * dx + py * dy) / (dx * dx + dy * dy), lo, hi);
  return std::hypot(px + t * dx, py + t * dy);
}

}  // namespace

Corridor Scan::corridor(int beam) const {
  Corridor c;
  std::vector<int> chain;
  for (int b = beam; b >= 0; b = beams[b].parent) chain.push_back(b);
  std::reverse(chain.begin(), chain.end());
  for (size_t i = 0; i < chain.size(); ++i) {
    if (i > 0) c.edges.push_back(beams[chain[i]].entry);
    c.faces.push_back(beams[chain[i]].face);
  }
  return c;
}

Geodesics::Geodesics(const TriComplex& cx) : cx_(cx), scans_(cx.num_vertices()), masked_(cx.num_vertices()) {
  for (EdgeId e = 0; e < cx.num_edges(); ++e) upper_len_.push_back(sqrt_bounds(cx.edge_length_sq(e), 24).hi);
}

const Scan& Geodesics::scan(VertexId y, const Rational& bound) {
  auto& slot = scans_[y];
  if (slot && slot->bound >= bound) return *slot;
  // Round the bound up to a whole number so that later requests can reuse it.
  mpz_class whole = bound.get_num() / bound.get_den() + 1;
  auto s = std::make_unique<Scan>();
  s->source = y;
  s->bound = Rational(whole);
  run_scan(*s);
  retired_.push_back(std::move(slot));
  slot = std::move(s);
  return *slot;
}

const Scan& Geodesics::masked_scan(VertexId y, const Rational& bound, const std::vector<char>& mask) {
  if (mask.empty()) return scan(y, bound);
  if (scans_[y] && scans_[y]->bound >= bound) return *scans_[y];
  auto covers = [&](const Scan& sc) {
    if (sc.bound < bound) return false;
    for (size_t i = 0; i < mask.size(); ++i)
      if (mask[i] && !sc.roots[i]) return false;
    return true;
  };
  for (const auto& sc : masked_[y])
    if (covers(*sc)) return *sc;
  // Quarter steps keep the growth of the scanned region moderate.
  mpz_class quarters = (4 * bound.get_num()) / bound.get_den() + 1;
  auto s = std::make_unique<Scan>();
  s->source = y;
  s->bound = Rational(quarters, 4);
  s->roots = mask;
  run_scan(*s);
  masked_[y].push_back(std::move(s));
  return *masked_[y].back();
}

std::vector<char> Geodesics::continuation_mask(const DistanceMap& m, VertexId y) {
  VertexId p = m.pred[y];
  if (p < 0 || m.tied[y] || !m.pred_scan[y]) return {};
  const Scan& sc = *m.pred_scan[y];
  const VertexSighting& vs = sc.vertices[m.pred_sight[y]];
  const auto& star = cx_.faces_at(y);
  const double unit = std::acos(-1.0) / 12, theta = cx_.angle_units(y) * unit;
  std::map<VertexId, double> dist;
  FaceId incoming = -1;
  if (vs.along_edge) {
    dist[p] = 0;
  } else {
    const Beam& b = sc.beams[vs.beam];
    incoming = b.face;
    double cx0 = vs.image.x.to_double(), cy0 = vs.image.y.to_double();
    auto angle_to = [&](int pt) {
      double ux = sc.points[pt].x.to_double() - cx0, uy = sc.points[pt].y.to_double() - cy0;
      return std::abs(std::atan2(ux * -cy0 - uy * -cx0, ux * -cx0 + uy * -cy0));
    };
    dist[b.right_v] = angle_to(b.right);
    dist[b.left_v] = angle_to(b.left);
  }
  // Shortest paths in the link: nodes are the neighbours of y, one arc of
  // length theta per star face.
  for (bool changed = true; changed;) {
    changed = false;
    for (FaceId f : star) {
      if (f == incoming) continue;
      VertexId a = -1, c = -1;
      for (VertexId v : cx_.face(f))
        if (v != y) (a < 0 ? a : c) = v;
      for (auto [from, to] : {std::pair{a, c}, std::pair{c, a}}) {
        auto it = dist.find(from);
        if (it == dist.end()) continue;
        double d = it->second + theta;
        auto jt = dist.find(to);
        if (jt == dist.end() || d < jt->second - 1e-12) {
          dist[to] = d;
          changed = true;
        }
      }
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<char> mask(star.size(), 0);
  bool all = true;
  for (size_t i = 0; i < star.size(); ++i) {
    if (star[i] == incoming) {
      all = false;
      continue;
    }
    VertexId a = -1, c = -1;
    for (VertexId v : cx_.face(star[i]))
      if (v != y) (a < 0 ? a : c) = v;
    double da = dist.count(a) ? dist[a] : inf, dc = dist.count(c) ? dist[c] : inf;
    mask[i] = (da + dc + theta) / 2 >= 12 * unit - 1e-7;
    all = all && mask[i];
  }
  if (all) return {};
  return mask;
}

const Scan& Geodesics::continuation_scan(const DistanceMap& m, VertexId y, const Rational& bound) {
  return masked_scan(y, bound, continuation_mask(m, y));
}

void Geodesics::run_scan(Scan& s) {
  const TriComplex& cx = cx_;
  const VertexId y = s.source;
  const Rational& bound = s.bound;
  auto& pts = s.points;
  std::vector<std::array<double, 2>> approx;
  auto point = [&](Vec2 p) {
    approx.push_back({p.x.to_double(), p.y.to_double()});
    pts.push_back(std::move(p));
    return static_cast<int>(pts.size()) - 1;
  };
  const double reach = bound.get_d() + 1e-6;
  const int origin = point(Vec2{QField(0), QField(0)});
  auto edge_sighting = [&](EdgeId e, VertexId va, int pa, int pb, bool full, int lo, int hi, int beam) {
    bool forward = cx.edge(e)[0] == va;
    s.edges.push_back({e, forward ? pa : pb, forward ? pb : pa, full, lo, hi, beam});
  };
  auto fan = [&](int from, FaceId skip, EdgeId e, VertexId rv, VertexId lv, int r, int l, int rr, int rl,
                 int behind) {
    for (FaceId g : cx.faces_of_edge(e)) {
      if (g == skip) continue;
      s.beams.push_back({g, from, e, rv, lv, r, l, rr, rl, behind});
    }
  };

  int u = cx.angle_units(y);
  std::vector<char> seen_along(cx.num_vertices(), 0);
  const auto& star = cx.faces_at(y);
  for (size_t fi = 0; fi < star.size(); ++fi) {
    if (!s.roots.empty() && !s.roots[fi]) continue;
    FaceId f = star[fi];
    const auto& fv = cx.face(f);
    VertexId a = -1, b = -1;
    for (VertexId v : fv)
      if (v != y) (a < 0 ? a : b) = v;
    EdgeId ya = *cx.find_edge(y, a), yb = *cx.find_edge(y, b), ab = *cx.find_edge(a, b);
    const QField& lb = side_length(cx.edge_length_sq(yb));
    int pa = point(Vec2{side_length(cx.edge_length_sq(ya)), QField(0)});
    int pb = point(Vec2{lb * cos_units(u), lb * sin_units(u)});
    int id = static_cast<int>(s.beams.size());
    s.beams.push_back({f, -1, -1, a, b, pa, pb, pa, pb, origin});
    if (!seen_along[a]) {
      seen_along[a] = 1;
      s.vertices.push_back({a, norm2(pts[pa]), pts[pa], id, true});
      edge_sighting(ya, y, origin, pa, true, pa, pa, id);
    }
    if (!seen_along[b]) {
      seen_along[b] = 1;
      s.vertices.push_back({b, norm2(pts[pb]), pts[pb], id, true});
      edge_sighting(yb, y, origin, pb, true, pb, pb, id);
    }
    edge_sighting(ab, a, pa, pb, true, pa, pb, id);
    if (within(segment_dist_sq(pts[pa], pts[pb], cx.edge_length_sq(ab)), bound))
      fan(id, f, ab, a, b, pa, pb, pa, pb, origin);
  }

  for (size_t i = 0; i < s.beams.size(); ++i) {
    if (s.beams[i].parent < 0) continue;
    const Beam bm = s.beams[i];
    const int id = static_cast<int>(i);
    VertexId c = cx.opposite(bm.face, bm.entry);
    int pc = point(reflect_rational(pts[bm.behind], pts[bm.right], pts[bm.left], cx.edge_length_sq(bm.entry)));
    int sr = cross(pts[bm.ray_r], pts[pc]).sign();
    int sl = cross(pts[pc], pts[bm.ray_l]).sign();
    auto child = [&](VertexId rv, VertexId lv, int r, int l, int rr, int rl, int behind) {
      EdgeId e = *cx.find_edge(rv, lv);
      edge_sighting(e, rv, r, l, false, rr, rl, id);
      if (wedge_dist(approx[r], approx[l], approx[rr], approx[rl]) <= reach)
        fan(id, bm.face, e, rv, lv, r, l, rr, rl, behind);
    };
    if (sr > 0 && sl > 0) {
      QField dsq = norm2(pts[pc]);
      if (within(dsq, bound)) s.vertices.push_back({c, std::move(dsq), pts[pc], id, false});
      child(bm.right_v, c, bm.right, pc, bm.ray_r, pc, bm.left);
      child(c, bm.left_v, pc, bm.left, pc, bm.ray_l, bm.right);
    } else if (sr <= 0) {
      child(c, bm.left_v, pc, bm.left, bm.ray_r, bm.ray_l, bm.right);
    } else {
      child(bm.right_v, c, bm.right, pc, bm.ray_r, bm.ray_l, bm.left);
    }
  }
}

std::vector<Rational> Geodesics::skeleton_bounds(VertexId s) {
  int n = cx_.num_vertices();
  std::vector<std::optional<Rational>> d(n);
  std::vector<char> done(n, 0);
  d[s] = Rational(0);
  for (;;) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && d[v] && (best < 0 || *d[v] < *d[best])) best = v;
    if (best < 0) break;
    done[best] = 1;
    for (EdgeId e : cx_.edges_at(best)) {
      VertexId w = cx_.other_end(e, best);
      Rational c = *d[best] + upper_len_[e];
      if (!d[w] || c < *d[w]) d[w] = c;
    }
  }
  std::vector<Rational> out(n, Rational(-1));
  for (int v = 0; v < n; ++v)
    if (d[v]) out[v] = *d[v];
  return out;
}

DistanceMap Geodesics::distances_from(VertexId src, const Rational& bound) {
  int n = cx_.num_vertices();
  DistanceMap m;
  m.source = src;
  m.bound = bound;
  m.dist.assign(n, std::nullopt);
  m.pred.assign(n, -1);
  m.pred_sight.assign(n, -1);
  m.tied.assign(n, 0);
  m.pred_scan.assign(n, nullptr);
  std::vector<double> approx(n, std::numeric_limits<double>::infinity());
  std::vector<char> done(n, 0);
  m.dist[src] = RadicalSum(0);
  approx[src] = 0;
  const double bd = bound.get_d();
  const RadicalSum rb{QField(bound)};
  // Every direct segment is at least 1 long, so popping in approximate order
  // settles each vertex at its exact distance.
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [dy, y] = pq.top();
    pq.pop();
    if (done[y] || dy != approx[y]) continue;
    done[y] = 1;
    if (dy > bd + 1e-9) continue;
    RadicalSum rest = rb - *m.dist[y];
    if (rest.approx() < 1 - 1e-9) continue;
    const Scan& sc = continuation_scan(m, y, upper_rational(rest));
    double reach = rest.approx() + 1e-9;
    for (size_t k = 0; k < sc.vertices.size(); ++k) {
      const auto& vs = sc.vertices[k];
      VertexId w = vs.vertex;
      if (done[w]) continue;
      double seg = std::sqrt(vs.dist_sq.to_double());
      if (seg > reach) continue;
      RadicalSum cand = *m.dist[y] + RadicalSum::sqrt_of(vs.dist_sq);
      double ca = dy + seg;
      if (m.dist[w]) {
        if (ca > approx[w] + 1e-6) continue;
        int c = cmp_radical_sums(cand, *m.dist[w]);
        if (c > 0) continue;
        if (c == 0) {
          m.tied[w] = 1;
          continue;
        }
      }
      m.dist[w] = cand;
      m.pred[w] = y;
      m.pred_sight[w] = static_cast<int>(k);
      m.pred_scan[w] = &sc;
      m.tied[w] = 0;
      approx[w] = cand.approx();
      pq.push({approx[w], w});
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!m.dist[v]) continue;
    if (!done[v] || (approx[v] > bd - 1e-6 && cmp_radical_sums(*m.dist[v], rb) > 0)) {
      m.dist[v].reset();
      m.pred[v] = -1;
    }
  }
  return m;
}

std::optional<QField> Geodesics::direct_distance(VertexId u, VertexId w, const RadicalSum& bound) {
  if (u == w) throw InputError("direct distance needs distinct vertices");
  require_inside(u, bound);
  const Scan& sc = scan(u, upper_rational(bound));
  std::optional<QField> best;
  for (const auto& vs : sc.vertices)
    if (vs.vertex == w && (!best || qf_compare(vs.dist_sq, *best) < 0)) best = vs.dist_sq;
  if (best && cmp_radical_sums(RadicalSum::sqrt_of(*best), bound) > 0) best.reset();
  return best;
}

GeodesicResult Geodesics::geodesic(const DistanceMap& m, VertexId w) {
  if (!m.known(w)) throw MarginExceeded("vertex " + std::to_string(w) + " is beyond the search bound");
  GeodesicResult g;
  g.from = m.source;
  g.to = w;
  g.length = *m.dist[w];
  for (VertexId v = w; v >= 0; v = m.pred[v]) {
    g.breakpoints.push_back(v);
    if (m.tied[v]) g.unique = false;
    if (v == m.source) break;
    const Scan* sc = m.pred_scan[v];
    g.corridors.push_back(sc->corridor(sc->vertices[m.pred_sight[v]].beam));
  }
  std::reverse(g.breakpoints.begin(), g.breakpoints.end());
  std::reverse(g.corridors.begin(), g.corridors.end());
  return g;
}

GeodesicResult Geodesics::vertex_distance(VertexId u, VertexId w) {
  require_inside(u, RadicalSum(0));
  require_inside(w, RadicalSum(0));
  if (u == w) {
    GeodesicResult g;
    g.from = g.to = u;
    g.breakpoints = {u};
    return g;
  }
  const DistanceMap* m = maps_.count(u) ? maps_[u].map.get() : nullptr;
  if (!m || !m->known(w)) m = &map_from(u, std::max<Rational>(m ? m->bound : Rational(0), skeleton_bounds(u)[w]));
  return geodesic(*m, w);
}

const DistanceMap& Geodesics::map_from(VertexId s, const Rational& bound) {
  auto& slot = maps_[s];
  if (slot.map && slot.map->bound >= bound) return *slot.map;
  // Quarter steps let nearby requests share a map.
  mpz_class quarters;
  mpz_class num = 4 * bound.get_num();
  mpz_cdiv_q(quarters.get_mpz_t(), num.get_mpz_t(), bound.get_den().get_mpz_t());
  if (slot.map) retired_maps_.push_back(std::move(slot));
  slot.map = std::make_unique<DistanceMap>(distances_from(s, Rational(quarters, 4)));
  slot.minima.reset();
  return *slot.map;
}

const std::vector<EdgeMinimum>& Geodesics::minima_from(VertexId s, const Rational& bound) {
  map_from(s, bound);
  auto& slot = maps_[s];
  if (!slot.minima) slot.minima = std::make_unique<std::vector<EdgeMinimum>>(edge_minima(*slot.map));
  return *slot.minima;
}

std::vector<EdgeMinimum> Geodesics::edge_minima(const DistanceMap& m) {
  std::vector<EdgeMinimum> out(cx_.num_edges());
  std::vector<double> approx(cx_.num_edges(), std::numeric_limits<double>::infinity());
  const double bd = m.bound.get_d();
  const RadicalSum rb{QField(m.bound)};
  auto offer = [&](EdgeId e, const RadicalSum& value, double va, const QField& t, VertexId via) {
    EdgeMinimum& cur = out[e];
    if (cur.via >= 0) {
      if (va > approx[e] + 1e-6) return;
      int c = va < approx[e] - 1e-6 ? -1 : cmp_radical_sums(value, cur.value);
      if (c > 0) return;
      if (c == 0) {
        if (!(t == cur.t)) cur.unique = false;
        return;
      }
    }
    cur.value = value;
    cur.t = t;
    cur.via = via;
    cur.unique = true;
    approx[e] = va;
  };
  for (EdgeId e = 0; e < cx_.num_edges(); ++e)
    for (int i = 0; i < 2; ++i) {
      VertexId v = cx_.edge(e)[i];
      if (m.known(v)) offer(e, *m.dist[v], m.dist[v]->approx(), QField(i), v);
    }
  for (VertexId y = 0; y < cx_.num_vertices(); ++y) {
    if (!m.known(y)) continue;
    RadicalSum rest = rb - *m.dist[y];
    double dy = m.dist[y]->approx();
    if (rest.approx() <= 0) continue;
    const Scan& sc = continuation_scan(m, y, upper_rational(rest));
    for (const auto& es : sc.edges) {
      if (dy + approx_closest(sc, es) > std::min(bd, approx[es.edge]) + 1e-6) continue;
      auto [dsq, t] = sighting_closest(sc, es);
      double va = dy + std::sqrt(dsq.to_double());
      if (va > bd + 1e-6 || va > approx[es.edge] + 1e-6) continue;
      offer(es.edge, *m.dist[y] + RadicalSum::sqrt_of(dsq), va, t, y);
    }
  }
  for (EdgeId e = 0; e < cx_.num_edges(); ++e) {
    EdgeMinimum& cur = out[e];
    cur.known = cur.via >= 0 && (approx[e] < bd - 1e-6 || cmp_radical_sums(cur.value, rb) <= 0);
  }
  return out;
}

EdgeMinimum Geodesics::edge_minimum(const DistanceMap& m, EdgeId e) { return edge_minima(m)[e]; }

std::optional<RadicalSum> Geodesics::edge_point_distance(const DistanceMap& m, EdgeId e, const Rational& t) {
  return edge_point_distances(m, {{e, t}}).front();
}

std::vector<std::optional<RadicalSum>> Geodesics::edge_point_distances(
    const DistanceMap& m, const std::vector<std::pair<EdgeId, Rational>>& points) {
  std::vector<std::optional<RadicalSum>> best(points.size());
  std::vector<double> approx(points.size(), std::numeric_limits<double>::infinity());
  std::vector<std::vector<size_t>> on_edge(cx_.num_edges());
  for (size_t i = 0; i < points.size(); ++i) {
    auto [e, t] = points[i];
    if (e < 0 || e >= cx_.num_edges()) throw InputError("edge " + std::to_string(e) + " out of range");
    if (t < 0 || t > 1) throw InputError("edge parameter outside [0, 1]");
    VertexId end = t == 0 ? cx_.edge(e)[0] : t == 1 ? cx_.edge(e)[1] : -1;
    if (end >= 0) {
      best[i] = m.dist[end];
      continue;
    }
    on_edge[e].push_back(i);
  }
  const RadicalSum rb{QField(m.bound)};
  for (VertexId y = 0; y < cx_.num_vertices(); ++y) {
    if (!m.known(y)) continue;
    RadicalSum rest = rb - *m.dist[y];
    if (rest.approx() <= 0) continue;
    const double dy = m.dist[y]->approx();
    const Scan& sc = continuation_scan(m, y, upper_rational(rest));
    for (const auto& es : sc.edges) {
      if (on_edge[es.edge].empty()) continue;
      auto [lo, hi] = sighting_params(sc, es);
      const Vec2& p0 = sc.points[es.p0];
      Vec2 d = sc.points[es.p1] - p0;
      for (size_t i : on_edge[es.edge]) {
        QField tq(points[i].second);
        if (qf_compare(tq, lo) < 0 || qf_compare(tq, hi) > 0) continue;
        QField dsq = norm2(p0 + tq * d);
        double ca = dy + std::sqrt(dsq.to_double());
        if (ca > approx[i] + 1e-6) continue;
        RadicalSum cand = *m.dist[y] + RadicalSum::sqrt_of(dsq);
        if (!best[i] || cmp_radical_sums(cand, *best[i]) < 0) {
          best[i] = cand;
          approx[i] = ca;
        }
      }
    }
  }
  for (auto& b : best)
    if (b && cmp_radical_sums(*b, rb) > 0) b.reset();
  return best;
}

const std::optional<RadicalSum>& Geodesics::safe_radius() {
  if (safe_done_) return safe_;
  safe_done_ = true;
  auto sk = skeleton_bounds(TriComplex::base());
  std::optional<Rational> reach;
  Rational far(0);
  for (VertexId v = 0; v < cx_.num_vertices(); ++v) {
    if (sk[v] < 0) continue;
    far = std::max(far, sk[v]);
    if (!cx_.is_interior(v) && (!reach || sk[v] < *reach)) reach = sk[v];
  }
  if (!reach) {
    base_map_ = std::make_unique<DistanceMap>(distances_from(TriComplex::base(), far + 1));
    return safe_;
  }
  base_map_ = std::make_unique<DistanceMap>(distances_from(TriComplex::base(), *reach));
  const DistanceMap& m = *base_map_;
  for (VertexId v = 0; v < cx_.num_vertices(); ++v)
    if (!cx_.is_interior(v) && m.known(v) && (!safe_ || cmp_radical_sums(*m.dist[v], *safe_) < 0)) safe_ = *m.dist[v];
  auto mins = edge_minima(m);
  for (EdgeId e = 0; e < cx_.num_edges(); ++e)
    if (cx_.is_frontier_edge(e) && mins[e].known && cmp_radical_sums(mins[e].value, *safe_) < 0) safe_ = mins[e].value;
  return safe_;
}

const DistanceMap& Geodesics::base_map() {
  safe_radius();
  return *base_map_;
}

void Geodesics::require_inside(VertexId v, const RadicalSum& reach) {
  if (v < 0 || v >= cx_.num_vertices()) throw InputError("vertex " + std::to_string(v) + " out of range");
  const auto& safe = safe_radius();
  if (!safe) return;
  const DistanceMap& m = *base_map_;
  if (!m.known(v) || cmp_radical_sums(*m.dist[v] + reach, *safe) >= 0)
    throw MarginExceeded("query around vertex " + std::to_string(v) + " reaches beyond the boundary margin (safe radius " +
                         std::to_string(safe->approx()) + ")");
}

Direction Geodesics::direction(const Scan& sc, const VertexSighting& s) {
  int b = s.beam;
  while (sc.beams[b].parent >= 0) b = sc.beams[b].parent;
  const Beam& root = sc.beams[b];
  Direction d;
  d.face = root.face;
  d.vec = s.image;
  d.right_v = root.right_v;
  d.left_v = root.left_v;
  d.right = sc.points[root.right];
  d.left = sc.points[root.left];
  if (s.along_edge) d.along = s.vertex;
  return d;
}

AngleResult Geodesics::angle_between(VertexId x, const Direction& a, const Direction& b) {
  AngleResult res;
  auto rel = [](const Vec2& v, const Vec2& w) {
    QField c = cross(w, v);
    return Vec2{dot(v, w), c.sign() < 0 ? -c : c};
  };
  if (!a.along && !b.along && a.face == b.face) {
    Vec2 r = rel(a.vec, b.vec);
    res.radians = std::atan2(r.y.to_double(), r.x.to_double());
    res.compare_pi = -1;
    if (r.y.sign() == 0 && r.x.sign() > 0) res.units = 0;
    return res;
  }
  struct Option {
    VertexId node;
    Vec2 partial;
  };
  const Vec2 unit{QField(1), QField(0)};
  auto options = [&](const Direction& d) {
    std::vector<Option> o;
    if (d.along) {
      o.push_back({*d.along, unit});
    } else {
      o.push_back({d.right_v, rel(d.vec, d.right)});
      o.push_back({d.left_v, rel(d.vec, d.left)});
    }
    return o;
  };
  // Breadth-first distances in the link of x, counted in link edges.
  std::map<VertexId, std::vector<VertexId>> ladj;
  for (FaceId f : cx_.faces_at(x)) {
    std::vector<VertexId> o;
    for (VertexId v : cx_.face(f))
      if (v != x) o.push_back(v);
    ladj[o[0]].push_back(o[1]);
    ladj[o[1]].push_back(o[0]);
  }
  auto bfs = [&](VertexId s) {
    std::map<VertexId, int> d{{s, 0}};
    std::deque<VertexId> q{s};
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      for (VertexId w : ladj[v])
        if (!d.count(w)) {
          d[w] = d[v] + 1;
          q.push_back(w);
        }
    }
    return d;
  };
  int u = cx_.angle_units(x);
  const double unit_rad = M_PI / 12;
  bool found = false;
  res.radians = std::numeric_limits<double>::infinity();
  int best_sign = 2;
  std::optional<int> best_units;
  for (const auto& oa : options(a)) {
    auto dist = bfs(oa.node);
    for (const auto& ob : options(b)) {
      auto it = dist.find(ob.node);
      if (it == dist.end()) continue;
      int k = it->second;
      double rad = angle_of(oa.partial) + angle_of(ob.partial) + k * u * unit_rad;
      int sign = compare_angle_sum(oa.partial, ob.partial, 12 - k * u);
      if (!found || rad < res.radians) {
        res.radians = rad;
        if (a.along && b.along) best_units = k * u;
      }
      best_sign = std::min(best_sign, sign);
      found = true;
    }
  }
  if (!found) throw MarginExceeded("directions at vertex " + std::to_string(x) + " are not joined in its link");
  res.compare_pi = best_sign;
  res.units = best_units;
  return res;
}

AngleResult Geodesics::angle_at(VertexId x, VertexId y, VertexId z) {
  if (y == x || z == x) throw InputError("angle needs directions away from the vertex");
  if (y == z) return AngleResult{0.0, 0, -1};
  auto sk = skeleton_bounds(x);
  DistanceMap m = distances_from(x, std::max(sk[y], sk[z]));
  GeodesicResult gy = geodesic(m, y), gz = geodesic(m, z);
  auto dir = [&](VertexId first) {
    const Scan* sc = m.pred_scan[first];
    return direction(*sc, sc->vertices[m.pred_sight[first]]);
  };
  return angle_between(x, dir(gy.breakpoints[1]), dir(gz.breakpoints[1]));
}

}  // namespace cat0
