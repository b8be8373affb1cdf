#include "cat0/expansion.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>

namespace cat0 {

namespace {

int compare(const RadicalSum& x, const RadicalSum& y) {
  double d = x.approx() - y.approx();
  if (d < -1e-9) return -1;
  if (d > 1e-9) return 1;
  return cmp_radical_sums(x, y);
}

const QField kHalf{Rational(1, 2)};
const QField kQuarter{Rational(1, 4)};

// min((r - sqrt(r^2 - 1/4)) / 2, (r - prev) / 2) when r^2 lies in the field;
// otherwise a rational below both, using r - sqrt(r^2 - 1/4) > 1/(8r).
EpsilonChoice choose_epsilon(const RadicalSum& r, const RadicalSum& prev) {
  RadicalSum gap = (r - prev).scaled(kHalf);
  if (auto r2 = r.square_in_field()) {
    RadicalSum bound = (r - RadicalSum::sqrt_of(*r2 - kQuarter)).scaled(kHalf);
    return {compare(bound, gap) <= 0 ? bound : gap, true};
  }
  Rational e = 1 / (16 * upper_rational(r));
  Rational g = 0;
  for (int bits = 40; sgn(g) <= 0; bits *= 2) {
    if (bits > max_precision_bits()) throw Undecided("gap between critical radii is too small to bound");
    g = lower_rational(gap, bits);
  }
  return {RadicalSum(QField(std::min(e, g))), false};
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

std::vector<int> bfs(const LinkGraph& lg, int from) {
  std::vector<int> dist(lg.nodes.size(), -1);
  std::deque<int> q{from};
  dist[from] = 0;
  while (!q.empty()) {
    int a = q.front();
    q.pop_front();
    for (int l : lg.adjacency[a]) {
      int b = lg.other(l, a);
      if (dist[b] < 0) {
        dist[b] = dist[a] + 1;
        q.push_back(b);
      }
    }
  }
  return dist;
}

}  // namespace

TreeEvidence tree_evidence(const TriComplex& cx, VertexId x, const LinkSubgraph& gamma) {
  LinkGraph lg = link_graph(cx, x);
  std::vector<int> idx;
  for (VertexId y : gamma.nodes) {
    int i = lg.node_index(y);
    if (i < 0) throw InputError("vertex " + std::to_string(y) + " is not in the link of " + std::to_string(x));
    idx.push_back(i);
  }
  auto pos = [&](VertexId y) {
    auto it = std::lower_bound(gamma.nodes.begin(), gamma.nodes.end(), y);
    if (it == gamma.nodes.end() || *it != y)
      throw InputError("link edge endpoint " + std::to_string(y) + " is not a node");
    return static_cast<int>(it - gamma.nodes.begin());
  };
  if (!std::is_sorted(gamma.nodes.begin(), gamma.nodes.end()) ||
      std::adjacent_find(gamma.nodes.begin(), gamma.nodes.end()) != gamma.nodes.end())
    throw InputError("link nodes must be sorted and distinct");
  UnionFind uf(static_cast<int>(gamma.nodes.size()));
  int components = static_cast<int>(gamma.nodes.size());
  std::set<std::array<VertexId, 2>> seen;
  for (auto [a, b] : gamma.edges) {
    if (!cx.find_face(x, a, b)) throw InputError("no face spans " + std::to_string(x) + "," + std::to_string(a) + "," + std::to_string(b));
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) throw InputError("repeated link edge");
    if (uf.unite(pos(a), pos(b))) --components;
  }
  TreeEvidence ev;
  ev.connected = components == 1;
  ev.acyclic = static_cast<int>(gamma.edges.size()) == static_cast<int>(gamma.nodes.size()) - components;
  for (size_t i = 0; i < idx.size(); ++i) {
    auto d = bfs(lg, idx[i]);
    for (size_t j = i + 1; j < idx.size(); ++j) {
      if (d[idx[j]] < 0) throw std::logic_error("link of " + std::to_string(x) + " is disconnected");
      ev.diameter_units = std::max(ev.diameter_units, d[idx[j]]);
    }
  }
  ev.diameter_ok = 2 * ev.diameter_units <= lg.order;
  return ev;
}

LinkSubgraph link_part(const TriComplex& cx, VertexId x, const SimplicialSet& c) {
  LinkSubgraph g;
  for (VertexId y : cx.neighbors(x))
    if (c.has_vertex(y)) g.nodes.push_back(y);
  for (FaceId f : cx.faces_at(x)) {
    EdgeId e = cx.opposite_edge(f, x);
    if (!c.has_edge(e)) continue;
    auto [a, b] = cx.edge(e);
    g.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(g.nodes.begin(), g.nodes.end());
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

SimplicialSet cone(const TriComplex& cx, VertexId x, const LinkSubgraph& gamma) {
  SimplicialSet s;
  s.vertices = {x};
  for (VertexId y : gamma.nodes) {
    auto e = cx.find_edge(x, y);
    if (!e) throw InputError("vertex " + std::to_string(y) + " is not in the link of " + std::to_string(x));
    s.edges.push_back(*e);
  }
  for (auto [a, b] : gamma.edges) {
    auto f = cx.find_face(x, a, b);
    if (!f) throw InputError("no face spans " + std::to_string(x) + "," + std::to_string(a) + "," + std::to_string(b));
    s.faces.push_back(*f);
  }
  return closure(cx, std::move(s));
}

EpsilonChoice Expansion::epsilon_for(VertexId v, const RadicalSum& r) {
  if (compare(r, RadicalSum(1)) < 0) throw InputError("no critical radius is below 1");
  auto radii = balls_.critical_radii(v, r);
  if (radii.empty() || compare(radii.back(), r) != 0) throw InputError("radius " + r.to_string() + " is not critical");
  RadicalSum prev = radii.size() >= 2 ? radii[radii.size() - 2] : RadicalSum(0);
  return choose_epsilon(r, prev);
}

std::vector<VertexId> Expansion::boundary_vertices(VertexId v, const RadicalSum& r) {
  auto p = balls_.vertices_within(v, r);
  if (!p.critical()) throw InputError("radius " + r.to_string() + " is not critical");
  return p.on;
}

ExpansionCertificate Expansion::expand_to(VertexId v, const RadicalSum& R, std::optional<std::uint64_t> shuffle_seed) {
  if (v < 0 || v >= cx_.num_vertices()) throw InputError("vertex " + std::to_string(v) + " out of range");
  ExpansionCertificate cert;
  cert.complex_hash = cx_.structural_hash();
  cert.base = v;
  cert.R = R;
  auto radii = balls_.critical_radii(v, R);
  std::mt19937_64 rng(shuffle_seed.value_or(0));
  SimplicialSet current = full_subcomplex(cx_, {v});
  RadicalSum prev = 0;
  for (const RadicalSum& r : radii) {
    ExpansionStage stage;
    stage.radius = r;
    stage.previous = prev;
    stage.epsilon = choose_epsilon(r, prev);
    SimplicialSet c = balls_.simplicial_ball(v, r - stage.epsilon.value);
    if (!(c == current)) throw std::logic_error("ball below radius " + r.to_string() + " differs from the previous stage");
    stage.initial_hash = set_hash(c);
    stage.boundary = boundary_vertices(v, r);
    std::vector<VertexId> order = stage.boundary;
    if (shuffle_seed) std::shuffle(order.begin(), order.end(), rng);
    int index = static_cast<int>(cert.stages.size());
    for (VertexId x : order) {
      ConeStep step{x, link_part(cx_, x, c), {}};
      step.evidence = tree_evidence(cx_, x, step.gamma);
      if (!step.evidence.valid())
        throw InvalidStep("cone step at vertex " + std::to_string(x) + " (radius " + r.to_string() + ") is invalid", index,
                          step);
      c = set_union(c, cone(cx_, x, step.gamma));
      stage.steps.push_back(std::move(step));
    }
    if (!(c == balls_.simplicial_ball(v, r)))
      throw std::logic_error("expansion at radius " + r.to_string() + " does not reach the simplicial ball");
    stage.final_hash = set_hash(c);
    cert.stages.push_back(std::move(stage));
    current = std::move(c);
    prev = r;
  }
  cert.final_hash = set_hash(current);
  return cert;
}

void Expansion::audit_convex(const SimplicialSet& s, VertexId hub, const std::string& name, BoundaryAudit& audit) {
  // Every vertex of s is the hub or one of its neighbours.
  auto hub_len = [&](VertexId w) -> Rational {
    if (w == hub) return 0;
    return sqrt_bounds(cx_.edge_length_sq(*cx_.find_edge(w, hub)), 20).hi;
  };
  for (size_t i = 0; i < s.vertices.size(); ++i) {
    VertexId a = s.vertices[i];
    if (i + 1 == s.vertices.size()) break;
    g_.require_inside(a, RadicalSum(0));
    Rational bound = 0;
    for (size_t j = i + 1; j < s.vertices.size(); ++j) bound = std::max(bound, hub_len(s.vertices[j]));
    const DistanceMap& m = g_.map_from(a, hub_len(a) + bound);
    for (size_t j = i + 1; j < s.vertices.size(); ++j) {
      VertexId b = s.vertices[j];
      g_.require_inside(b, RadicalSum(0));
      GeodesicResult g = g_.geodesic(m, b);
      ++audit.geodesics_checked;
      std::string where;
      for (VertexId w : g.breakpoints)
        if (!s.has_vertex(w)) where = "passes through vertex " + std::to_string(w);
      for (size_t k = 0; where.empty() && k + 1 < g.breakpoints.size(); ++k) {
        if (auto e = cx_.find_edge(g.breakpoints[k], g.breakpoints[k + 1])) {
          if (!s.has_edge(*e)) where = "runs along edge " + std::to_string(*e);
          continue;
        }
        for (FaceId f : g.corridors[k].faces)
          if (!s.has_face(f)) where = "crosses face " + std::to_string(f);
      }
      if (!where.empty())
        audit.violations.push_back({"convexity", {a, b}, "geodesic " + std::to_string(a) + "-" + std::to_string(b) +
                                                             " leaves " + name + ": " + where});
    }
  }
}

BoundaryAudit Expansion::audit_boundary_lemmas(VertexId v, const RadicalSum& r) {
  BoundaryAudit audit;
  audit.center = v;
  audit.radius = r;
  std::vector<VertexId> V = boundary_vertices(v, r);
  std::set<VertexId> in_v(V.begin(), V.end());
  audit.boundary_vertices = static_cast<int>(V.size());
  SimplicialSet ball = balls_.simplicial_ball(v, r);

  for (VertexId x : V)
    for (VertexId y : cx_.neighbors(x)) {
      if (y < x || !in_v.count(y)) continue;
      ++audit.boundary_edges;
      EdgeId e = *cx_.find_edge(x, y);
      int n = 0;
      for (FaceId f : cx_.faces_of_edge(e)) n += ball.has_face(f);
      if (n != 1)
        audit.violations.push_back({"free_edge", {x, y}, "edge " + std::to_string(e) + " lies in " + std::to_string(n) +
                                                             " faces of the simplicial ball"});
    }
  for (FaceId f : ball.faces) {
    const auto& fv = cx_.face(f);
    if (std::all_of(fv.begin(), fv.end(), [&](VertexId w) { return in_v.count(w) > 0; }))
      audit.violations.push_back({"three_in_boundary", {fv[0], fv[1], fv[2]},
                                  "face " + std::to_string(f) + " has all vertices at distance r"});
  }

  // The sphere of radius r - eps meets each edge from x to the ball once, or
  // twice when both ends are at distance r.
  RadicalSum inner = r - epsilon_for(v, r).value;
  try {
    BallView view = balls_.ball_view(v, inner);
    if (view.critical()) throw InputError("radius r - eps is critical");
    for (VertexId x : V)
      for (VertexId y : cx_.neighbors(x)) {
        if (!ball.has_vertex(y)) continue;
        EdgeId e = *cx_.find_edge(x, y);
        int want = in_v.count(y) ? 2 : 1;
        if (view.edge_crossings[e] != want)
          audit.violations.push_back({"transversality", {x, y}, "sphere of radius r - eps meets edge " + std::to_string(e) +
                                                                    " " + std::to_string(view.edge_crossings[e]) + " times"});
      }
  } catch (const MarginExceeded&) {
    throw;
  } catch (const InputError& e) {
    audit.violations.push_back({"transversality", {}, e.what()});
  }

  audit_convex(star(cx_, v), v, "st(" + std::to_string(v) + ")", audit);
  for (VertexId x : V) {
    audit_convex(star(cx_, x), x, "st(" + std::to_string(x) + ")", audit);
    audit_convex(adj(cx_, ball, x), x, "adj(" + std::to_string(x) + ")", audit);
  }
  return audit;
}

VerifyResult verify_certificate(const TriComplex& cx, const ExpansionCertificate& cert) {
  auto fail = [](int stage, int step, std::string reason) { return VerifyResult{false, stage, step, std::move(reason)}; };
  if (cert.complex_hash != cx.structural_hash()) return fail(-1, -1, "complex hash");
  if (cert.base < 0 || cert.base >= cx.num_vertices()) return fail(-1, -1, "base vertex out of range");
  const VertexId v = cert.base;
  try {
    Geodesics g(cx);
    Balls balls(g);
    auto radii = balls.critical_radii(v, cert.R);
    if (radii.size() != cert.stages.size()) return fail(-1, -1, "radius schedule");
    SimplicialSet current = full_subcomplex(cx, {v});
    RadicalSum prev = 0;
    for (size_t k = 0; k < radii.size(); ++k) {
      const ExpansionStage& st = cert.stages[k];
      const int si = static_cast<int>(k);
      const RadicalSum& r = st.radius;
      if (cmp_radical_sums(r, radii[k]) != 0) return fail(si, -1, "radius schedule");
      if (cmp_radical_sums(st.previous, prev) != 0) return fail(si, -1, "previous radius");
      const RadicalSum& eps = st.epsilon.value;
      // 0 < eps < r - sqrt(r^2 - 1/4)  <=>  0 < eps < r and eps (2r - eps) < 1/4.
      if (rs_sign(eps) <= 0 || cmp_radical_sums(eps, r) >= 0 ||
          cmp_radical_sums(eps * (r + r - eps), RadicalSum(kQuarter)) >= 0)
        return fail(si, -1, "epsilon bound");
      if (cmp_radical_sums(r - eps, prev) <= 0) return fail(si, -1, "epsilon gap");
      SimplicialSet c = balls.simplicial_ball(v, r - eps);
      if (set_hash(c) != st.initial_hash) return fail(si, -1, "initial hash");
      if (!(c == current)) return fail(si, -1, "initial set");

      auto p = balls.vertices_within(v, r);
      std::vector<VertexId> order;
      for (const auto& s : st.steps) order.push_back(s.x);
      std::sort(order.begin(), order.end());
      if (st.boundary != p.on || order != p.on) return fail(si, -1, "boundary vertices");

      for (size_t j = 0; j < st.steps.size(); ++j) {
        const ConeStep& step = st.steps[j];
        const int sj = static_cast<int>(j);
        TreeEvidence ev;
        try {
          ev = tree_evidence(cx, step.x, step.gamma);
        } catch (const MarginExceeded&) {
          throw;
        } catch (const InputError& e) {
          return fail(si, sj, std::string("gamma not in link: ") + e.what());
        }
        if (!ev.connected) return fail(si, sj, "not connected");
        if (!ev.acyclic) return fail(si, sj, "not acyclic");
        if (!ev.diameter_ok) return fail(si, sj, "diameter");
        if (!(ev == step.evidence)) return fail(si, sj, "evidence mismatch");
        if (!(step.gamma == link_part(cx, step.x, c))) return fail(si, sj, "gamma differs from lk(x) and the set");
        c = set_union(c, cone(cx, step.x, step.gamma));
      }
      if (set_hash(c) != st.final_hash) return fail(si, -1, "final hash");
      if (!(c == balls.simplicial_ball(v, r))) return fail(si, -1, "final set");
      current = std::move(c);
      prev = r;
    }
    if (set_hash(current) != cert.final_hash) return fail(-1, -1, "final hash");
  } catch (const MarginExceeded& e) {
    return fail(-1, -1, std::string("outside the safe margin: ") + e.what());
  } catch (const InputError& e) {
    return fail(-1, -1, e.what());
  }
  return {};
}

}  // namespace cat0
