#include "cat0/complex.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace cat0 {

namespace {

class Fnv64 {
 public:
  void add(std::int64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= static_cast<std::uint64_t>((v >> (8 * i)) & 0xff);
      h_ *= 0x100000001b3ULL;
    }
  }
  void add_tag(char c) {
    h_ ^= static_cast<unsigned char>(c);
    h_ *= 0x100000001b3ULL;
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// sin^2(k*pi/12) for the angles that occur in base triangles.
Rational sin_sq_units(int k) {
  switch (k) {
    case 2: return Rational(1, 4);
    case 3: return Rational(1, 2);
    case 4: return Rational(3, 4);
    case 6: return Rational(1);
    default: throw OutOfScope("angle not supported: " + std::to_string(k) + "*pi/12");
  }
}

// Rank of the face boundary matrix over GF(p).
long boundary_rank(const TriComplex& cx) {
  const std::int64_t p = 2147483647;
  auto inv = [&](std::int64_t a) {
    std::int64_t r = 1, e = p - 2;
    a %= p;
    if (a < 0) a += p;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  std::unordered_map<EdgeId, std::map<EdgeId, std::int64_t>> pivots;  // pivot edge -> reduced row
  long rank = 0;
  for (FaceId f = 0; f < cx.num_faces(); ++f) {
    const auto& vs = cx.face(f);
    std::map<EdgeId, std::int64_t> row;
    for (int i = 0; i < 3; ++i) {
      VertexId a = vs[i], b = vs[(i + 1) % 3];
      EdgeId e = *cx.find_edge(a, b);
      row[e] += (a < b) ? 1 : p - 1;
    }
    while (!row.empty()) {
      auto last = std::prev(row.end());
      if (last->second % p == 0) {
        row.erase(last);
        continue;
      }
      auto it = pivots.find(last->first);
      if (it == pivots.end()) {
        pivots[last->first] = row;
        ++rank;
        break;
      }
      std::int64_t factor = last->second * inv(it->second.rbegin()->second) % p;
      for (const auto& [e, c] : it->second) {
        std::int64_t& slot = row[e];
        slot = ((slot - factor * c) % p + p) % p;
        if (slot == 0) row.erase(e);
      }
    }
  }
  return rank;
}

Connectivity analyse_connectivity(const TriComplex& cx) {
  int nf = cx.num_faces(), ne = cx.num_edges();
  std::vector<char> face_alive(nf, 1), edge_alive(ne, 1);
  std::vector<int> edge_count(ne);
  for (EdgeId e = 0; e < ne; ++e) edge_count[e] = static_cast<int>(cx.faces_of_edge(e).size());
  std::deque<EdgeId> free_edges;
  for (EdgeId e = 0; e < ne; ++e)
    if (edge_count[e] == 1) free_edges.push_back(e);
  int faces_left = nf;
  while (!free_edges.empty()) {
    EdgeId e = free_edges.front();
    free_edges.pop_front();
    if (!edge_alive[e] || edge_count[e] != 1) continue;
    FaceId f = -1;
    for (FaceId g : cx.faces_of_edge(e))
      if (face_alive[g]) f = g;
    face_alive[f] = 0;
    edge_alive[e] = 0;
    --faces_left;
    for (EdgeId g : cx.face_edges(f)) {
      if (!edge_alive[g]) continue;
      if (--edge_count[g] == 1) free_edges.push_back(g);
    }
  }
  if (faces_left == 0) {
    long edges_left = std::count(edge_alive.begin(), edge_alive.end(), 1);
    if (edges_left == cx.num_vertices() - 1) return Connectivity::Collapsible;
    return Connectivity::NotSimplyConnected;
  }
  long euler = static_cast<long>(cx.num_vertices()) - ne + nf;
  long rank = boundary_rank(cx);
  bool h1_zero = rank == static_cast<long>(ne) - cx.num_vertices() + 1;
  if (euler == 1 && h1_zero) return Connectivity::HomologyOnly;
  return Connectivity::NotSimplyConnected;
}

}  // namespace

std::string DiskCondition::to_string() const {
  return "(" + std::to_string(n[0]) + "," + std::to_string(n[1]) + "," + std::to_string(n[2]) + ")";
}

DiskVerdict validate_disk_condition(const DiskCondition& dc) {
  for (int v : dc.n)
    if (v <= 0) throw InputError("disk condition entries must be positive: " + dc.to_string());
  Rational sum = Rational(1, dc.n[0]) + Rational(1, dc.n[1]) + Rational(1, dc.n[2]);
  DiskVerdict verdict{DiskStatus::Rejected, false, std::nullopt, sum};
  if (sum > Rational(1, 2)) return verdict;
  verdict.accepted = true;
  std::array<int, 3> sorted = dc.n;
  std::sort(sorted.begin(), sorted.end());
  static const std::array<std::array<int, 3>, 3> bases = {{{6, 6, 6}, {4, 8, 8}, {4, 6, 12}}};
  if (std::find(bases.begin(), bases.end(), sorted) != bases.end()) {
    verdict.status = DiskStatus::Base;
    verdict.base = sorted;
  } else {
    verdict.status = DiskStatus::OutOfScope;
  }
  return verdict;
}

void require_base(const DiskCondition& dc) {
  DiskVerdict v = validate_disk_condition(dc);
  if (v.status == DiskStatus::Rejected)
    throw InputError("disk condition " + dc.to_string() + " has 1/n1+1/n2+1/n3 > 1/2");
  if (v.status == DiskStatus::OutOfScope)
    throw OutOfScope("disk condition " + dc.to_string() + " is not one of (6,6,6), (4,8,8), (4,6,12)");
}

TriangleShape triangle_shape(const DiskCondition& dc) {
  require_base(dc);
  TriangleShape s;
  for (int i = 0; i < 3; ++i) s.angle_units[i] = 24 / dc.n[i];
  // Law of sines: side opposite angle A is proportional to sin A.
  std::array<Rational, 3> sq;
  for (int i = 0; i < 3; ++i) sq[i] = sin_sq_units(s.angle_units[i]);
  Rational least = *std::min_element(sq.begin(), sq.end());
  for (int i = 0; i < 3; ++i) s.side_sq[i] = sq[i] / least;
  return s;
}

TriComplex TriComplex::build(DiskCondition dc, std::vector<int> types, std::vector<std::array<VertexId, 3>> faces,
                             int boundary_margin) {
  TriComplex cx;
  require_base(dc);
  cx.dc_ = dc;
  cx.shape_ = triangle_shape(dc);
  cx.margin_ = boundary_margin;
  cx.types_ = std::move(types);
  cx.faces_ = std::move(faces);
  cx.validate();
  cx.index();
  return cx;
}

void TriComplex::validate() {
  if (margin_ < 0) throw InputError("boundary margin must be non-negative");
  if (types_.empty()) throw InputError("complex has no vertices");
  for (size_t v = 0; v < types_.size(); ++v)
    if (types_[v] < 1 || types_[v] > 3) throw InputError("vertex " + std::to_string(v) + " has invalid type");
  std::vector<std::array<VertexId, 3>> seen;
  seen.reserve(faces_.size());
  for (size_t f = 0; f < faces_.size(); ++f) {
    std::array<int, 3> ts{};
    for (int i = 0; i < 3; ++i) {
      VertexId v = faces_[f][i];
      if (v < 0 || v >= num_vertices()) throw InputError("face " + std::to_string(f) + " references unknown vertex");
      ts[i] = types_[v];
    }
    std::sort(ts.begin(), ts.end());
    if (ts != std::array<int, 3>{1, 2, 3})
      throw InputError("face " + std::to_string(f) + " does not have one vertex of each type");
    auto key = faces_[f];
    std::sort(key.begin(), key.end());
    seen.push_back(key);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) throw InputError("duplicate face");
}

void TriComplex::index() {
  int nv = num_vertices();
  std::unordered_map<std::uint64_t, EdgeId> edge_ids;
  std::vector<std::array<VertexId, 2>> pairs;
  for (const auto& f : faces_)
    for (int i = 0; i < 3; ++i) {
      VertexId a = f[(i + 1) % 3], b = f[(i + 2) % 3];
      pairs.push_back({std::min(a, b), std::max(a, b)});
    }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  edges_ = pairs;
  for (EdgeId e = 0; e < num_edges(); ++e) edge_ids[pair_key(edges_[e][0], edges_[e][1])] = e;

  vertex_edges_.assign(nv, {});
  vertex_faces_.assign(nv, {});
  neighbors_.assign(nv, {});
  edge_faces_.assign(edges_.size(), {});
  edge_len_sq_.resize(edges_.size());
  face_edges_.resize(faces_.size());
  for (EdgeId e = 0; e < num_edges(); ++e) {
    auto [a, b] = edges_[e];
    vertex_edges_[a].push_back(e);
    vertex_edges_[b].push_back(e);
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
    edge_len_sq_[e] = shape_.side_between(types_[a], types_[b]);
  }
  for (auto& n : neighbors_) std::sort(n.begin(), n.end());
  for (FaceId f = 0; f < num_faces(); ++f) {
    for (int i = 0; i < 3; ++i) {
      VertexId a = faces_[f][(i + 1) % 3], b = faces_[f][(i + 2) % 3];
      EdgeId e = edge_ids.at(pair_key(a, b));
      face_edges_[f][i] = e;
      edge_faces_[e].push_back(f);
      vertex_faces_[faces_[f][i]].push_back(f);
    }
  }

  graph_dist_.assign(nv, -1);
  std::deque<VertexId> queue{0};
  graph_dist_[0] = 0;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : neighbors_[v])
      if (graph_dist_[w] < 0) {
        graph_dist_[w] = graph_dist_[v] + 1;
        queue.push_back(w);
      }
  }
  for (VertexId v = 0; v < nv; ++v)
    if (graph_dist_[v] < 0) throw InputError("complex is not connected (vertex " + std::to_string(v) + ")");

  for (EdgeId e = 0; e < num_edges(); ++e) {
    if (!is_interior(edges_[e][0]) && !is_interior(edges_[e][1])) continue;
    if (edge_faces_[e].size() < 2)
      throw InputError("free edge {" + std::to_string(edges_[e][0]) + "," + std::to_string(edges_[e][1]) +
                       "} inside the boundary margin");
  }

  connectivity_ = analyse_connectivity(*this);
  if (connectivity_ == Connectivity::NotSimplyConnected) throw InputError("complex is not simply connected");
}

std::optional<EdgeId> TriComplex::find_edge(VertexId a, VertexId b) const {
  if (a < 0 || b < 0 || a >= num_vertices() || b >= num_vertices()) return std::nullopt;
  for (EdgeId e : vertex_edges_[a])
    if (other_end(e, a) == b) return e;
  return std::nullopt;
}

std::optional<FaceId> TriComplex::find_face(VertexId a, VertexId b, VertexId c) const {
  auto e = find_edge(a, b);
  if (!e) return std::nullopt;
  for (FaceId f : edge_faces_[*e])
    if (opposite(f, *e) == c) return f;
  return std::nullopt;
}

VertexId TriComplex::opposite(FaceId f, EdgeId e) const {
  for (int i = 0; i < 3; ++i)
    if (face_edges_[f][i] == e) return faces_[f][i];
  throw std::logic_error("edge not in face");
}

EdgeId TriComplex::opposite_edge(FaceId f, VertexId v) const {
  for (int i = 0; i < 3; ++i)
    if (faces_[f][i] == v) return face_edges_[f][i];
  throw std::logic_error("vertex not in face");
}

std::string TriComplex::structural_hash() const {
  Fnv64 h;
  for (int n : dc_.n) h.add(n);
  h.add(margin_);
  h.add_tag('v');
  for (int t : types_) h.add(t);
  h.add_tag('f');
  for (const auto& f : faces_)
    for (VertexId v : f) h.add(v);
  return h.hex();
}

bool SimplicialSet::has_vertex(VertexId v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
bool SimplicialSet::has_edge(EdgeId e) const { return std::binary_search(edges.begin(), edges.end(), e); }
bool SimplicialSet::has_face(FaceId f) const { return std::binary_search(faces.begin(), faces.end(), f); }

void SimplicialSet::normalize() {
  auto fix = [](std::vector<int>& xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  };
  fix(vertices);
  fix(edges);
  fix(faces);
}

SimplicialSet full_subcomplex(const TriComplex& cx, const std::vector<VertexId>& vertices) {
  std::vector<char> in(cx.num_vertices(), 0);
  for (VertexId v : vertices) in[v] = 1;
  SimplicialSet s;
  s.vertices = vertices;
  for (VertexId v : vertices) {
    for (EdgeId e : cx.edges_at(v)) {
      const auto& ed = cx.edge(e);
      if (ed[0] == v && in[ed[1]]) s.edges.push_back(e);
    }
    for (FaceId f : cx.faces_at(v)) {
      const auto& fc = cx.face(f);
      if (*std::min_element(fc.begin(), fc.end()) == v && in[fc[0]] && in[fc[1]] && in[fc[2]]) s.faces.push_back(f);
    }
  }
  s.normalize();
  return s;
}

SimplicialSet closure(const TriComplex& cx, SimplicialSet s) {
  for (FaceId f : s.faces) {
    for (EdgeId e : cx.face_edges(f)) s.edges.push_back(e);
    for (VertexId v : cx.face(f)) s.vertices.push_back(v);
  }
  for (EdgeId e : s.edges)
    for (VertexId v : cx.edge(e)) s.vertices.push_back(v);
  s.normalize();
  return s;
}

std::string set_hash(const SimplicialSet& s) {
  Fnv64 h;
  h.add_tag('v');
  for (VertexId v : s.vertices) h.add(v);
  h.add_tag('e');
  for (EdgeId e : s.edges) h.add(e);
  h.add_tag('f');
  for (FaceId f : s.faces) h.add(f);
  return h.hex();
}

SimplicialSet open_star(const TriComplex& cx, VertexId x) {
  SimplicialSet s;
  s.vertices = {x};
  s.edges = cx.edges_at(x);
  s.faces = cx.faces_at(x);
  s.normalize();
  return s;
}

SimplicialSet star(const TriComplex& cx, VertexId x) { return closure(cx, open_star(cx, x)); }

SimplicialSet link(const TriComplex& cx, VertexId x) { return set_difference(star(cx, x), open_star(cx, x)); }

SimplicialSet adj(const TriComplex& cx, const SimplicialSet& c, VertexId x) {
  return set_intersection(star(cx, x), c);
}

SimplicialSet adj_open(const TriComplex& cx, const SimplicialSet& c, VertexId x) {
  return set_intersection(open_star(cx, x), c);
}

namespace {
template <class Op>
std::vector<int> merge_with(const std::vector<int>& a, const std::vector<int>& b, Op op) {
  std::vector<int> out;
  op(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
}  // namespace

SimplicialSet set_union(const SimplicialSet& a, const SimplicialSet& b) {
  auto op = [](auto... args) { return std::set_union(args...); };
  return {merge_with(a.vertices, b.vertices, op), merge_with(a.edges, b.edges, op), merge_with(a.faces, b.faces, op)};
}

SimplicialSet set_intersection(const SimplicialSet& a, const SimplicialSet& b) {
  auto op = [](auto... args) { return std::set_intersection(args...); };
  return {merge_with(a.vertices, b.vertices, op), merge_with(a.edges, b.edges, op), merge_with(a.faces, b.faces, op)};
}

SimplicialSet set_difference(const SimplicialSet& a, const SimplicialSet& b) {
  auto op = [](auto... args) { return std::set_difference(args...); };
  return {merge_with(a.vertices, b.vertices, op), merge_with(a.edges, b.edges, op), merge_with(a.faces, b.faces, op)};
}

int LinkGraph::node_index(VertexId y) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), y);
  if (it == nodes.end() || *it != y) return -1;
  return static_cast<int>(it - nodes.begin());
}

LinkGraph link_graph(const TriComplex& cx, VertexId v) {
  if (v < 0 || v >= cx.num_vertices()) throw InputError("unknown vertex " + std::to_string(v));
  if (!cx.is_interior(v))
    throw MarginExceeded("vertex " + std::to_string(v) + " is outside the boundary margin; its link is incomplete");
  LinkGraph g;
  g.center = v;
  g.order = cx.order(v);
  g.nodes = cx.neighbors(v);
  g.adjacency.assign(g.nodes.size(), {});
  for (FaceId f : cx.faces_at(v)) {
    const auto& e = cx.edge(cx.opposite_edge(f, v));
    int a = g.node_index(e[0]), b = g.node_index(e[1]);
    int id = static_cast<int>(g.links.size());
    g.links.push_back({a, b});
    g.link_faces.push_back(f);
    g.adjacency[a].push_back(id);
    g.adjacency[b].push_back(id);
  }
  return g;
}

std::vector<int> shortest_cycle(const LinkGraph& g) {
  int n = static_cast<int>(g.nodes.size());
  std::vector<int> best;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1), parent_link(n, -1), parent(n, -1);
    std::deque<int> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      if (!best.empty() && 2 * dist[u] + 1 >= static_cast<int>(best.size())) break;
      for (int l : g.adjacency[u]) {
        if (l == parent_link[u]) continue;
        int w = g.other(l, u);
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          parent_link[w] = l;
          q.push_back(w);
        } else {
          int len = dist[u] + dist[w] + 1;
          if (best.empty() || len < static_cast<int>(best.size())) {
            std::vector<int> left, right;
            for (int x = u; x != -1; x = parent[x]) left.push_back(x);
            for (int x = w; x != -1; x = parent[x]) right.push_back(x);
            // Both paths end at s; only a simple cycle when they meet there first.
            std::vector<int> cyc(left.begin(), left.end());
            std::reverse(right.begin(), right.end());
            cyc.insert(cyc.end(), right.begin() + 1, right.end());
            std::vector<int> sorted = cyc;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) best = cyc;
          }
        }
      }
    }
  }
  return best;
}

LinkCheck check_link_condition(const LinkGraph& g) {
  LinkCheck r;
  std::vector<int> cyc = shortest_cycle(g);
  if (cyc.empty()) return r;
  int len = static_cast<int>(cyc.size());
  r.girth = len;
  r.girth_units = len * g.edge_units();
  r.pass = len >= g.order;
  if (!r.pass)
    for (int i : cyc) r.witness.push_back(g.nodes[i]);
  return r;
}

LinkCheck check_link_condition(const TriComplex& cx, VertexId v) { return check_link_condition(link_graph(cx, v)); }

Cat0Report certify_cat0(const TriComplex& cx) {
  Cat0Report r;
  r.connectivity = cx.connectivity();
  for (VertexId v = 0; v < cx.num_vertices(); ++v) {
    if (!cx.is_interior(v)) continue;
    ++r.interior_vertices;
    if (!check_link_condition(cx, v).pass) r.failing.push_back(v);
  }
  r.certified = r.failing.empty() && r.connectivity != Connectivity::NotSimplyConnected;
  return r;
}

}  // namespace cat0
