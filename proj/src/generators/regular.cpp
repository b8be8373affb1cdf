#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cat0/generators.hpp"

namespace cat0 {

namespace {

std::array<int, 2> other_types(int t) {
  std::array<int, 2> r{};
  int k = 0;
  for (int s = 1; s <= 3; ++s)
    if (s != t) r[k++] = s;
  return r;
}

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

// Incidence graph of the projective plane over F_q: points then lines.
std::vector<std::array<int, 2>> projective_plane_incidence(int q, int& points) {
  std::vector<std::array<int, 3>> reps;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) reps.push_back({1, a, b});
  for (int b = 0; b < q; ++b) reps.push_back({0, 1, b});
  reps.push_back({0, 0, 1});
  points = static_cast<int>(reps.size());
  std::vector<std::array<int, 2>> edges;
  for (int p = 0; p < points; ++p)
    for (int l = 0; l < points; ++l) {
      int s = reps[p][0] * reps[l][0] + reps[p][1] * reps[l][1] + reps[p][2] * reps[l][2];
      if (s % q == 0) edges.push_back({p, points + l});
    }
  return edges;
}

// A d-regular simple graph on `count` vertices with girth at least g, from a
// small catalogue. Returns false when none is known.
bool regular_graph(int d, int g, int& count, std::vector<std::array<int, 2>>& edges) {
  edges.clear();
  if (g <= 3) {  // complete graph
    count = d + 1;
    for (int a = 0; a < count; ++a)
      for (int b = a + 1; b < count; ++b) edges.push_back({a, b});
    return true;
  }
  if (g == 4) {  // complete bipartite
    count = 2 * d;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) edges.push_back({a, d + b});
    return true;
  }
  if (g <= 6 && is_prime(d - 1)) {
    int pts = 0;
    edges = projective_plane_incidence(d - 1, pts);
    count = 2 * pts;
    return true;
  }
  return false;
}

}  // namespace

int RegularSpec::order(int ti, int tj) const {
  auto key = std::make_pair(std::min(ti, tj), std::max(ti, tj));
  auto it = edge_orders.find(key);
  return it == edge_orders.end() ? 2 : it->second;
}

std::pair<std::pair<int, int>, int> parse_edge_order(const std::string& text) {
  int i = 0, j = 0, k = 0;
  char comma = 0, colon = 0;
  std::istringstream is(text);
  if (!(is >> i >> comma >> j >> colon >> k) || comma != ',' || colon != ':' || !is.eof())
    throw InputError("edge order must look like I,J:K, got '" + text + "'");
  if (i < 1 || i > 3 || j < 1 || j > 3 || i == j) throw InputError("edge order types must be distinct values in 1..3");
  if (k < 2) throw InputError("edge orders must be at least 2");
  return {{std::min(i, j), std::max(i, j)}, k};
}

LinkModel standard_link_model(const RegularSpec& spec, int type) {
  auto [tj, tk] = other_types(type);
  int a = spec.order(type, tj);  // degree of a node standing for a type-tj neighbour
  int b = spec.order(type, tk);
  int n = spec.dc.order(type);
  LinkModel m;
  auto add_nodes = [&](int count, int t) {
    int first = static_cast<int>(m.node_types.size());
    for (int i = 0; i < count; ++i) m.node_types.push_back(t);
    return first;
  };
  if (a == 2 && b == 2) {
    if (n % 2) throw InputError("a type-" + std::to_string(type) + " vertex of odd order cannot have a typed link");
    int half = n / 2;
    int j0 = add_nodes(half, tj), k0 = add_nodes(half, tk);
    for (int i = 0; i < half; ++i) {
      m.edges.push_back({j0 + i, k0 + i});
      m.edges.push_back({k0 + i, j0 + (i + 1) % half});
    }
    return m;
  }
  if (n == 4) {
    // Every type-tk node meets all type-tj nodes and vice versa.
    int j0 = add_nodes(b, tj), k0 = add_nodes(a, tk);
    for (int i = 0; i < b; ++i)
      for (int l = 0; l < a; ++l) m.edges.push_back({j0 + i, k0 + l});
    return m;
  }
  if ((a == 2) != (b == 2) && n % 2 == 0) {
    // Subdivide a regular graph: its vertices are the high-degree nodes and
    // each of its edges becomes a degree-2 node.
    int d = a == 2 ? b : a;
    int t_hi = a == 2 ? tk : tj;
    int t_lo = a == 2 ? tj : tk;
    int count = 0;
    std::vector<std::array<int, 2>> h;
    if (regular_graph(d, n / 2, count, h)) {
      int hi0 = add_nodes(count, t_hi);
      for (const auto& e : h) {
        int mid = add_nodes(1, t_lo);
        m.edges.push_back({hi0 + e[0], mid});
        m.edges.push_back({mid, hi0 + e[1]});
      }
      return m;
    }
  }
  if (a == b && n == 6 && is_prime(a - 1)) {
    int pts = 0;
    auto inc = projective_plane_incidence(a - 1, pts);
    add_nodes(pts, tj);
    add_nodes(pts, tk);
    m.edges = inc;
    return m;
  }
  throw InputError("no link model known for a type-" + std::to_string(type) + " vertex of order " + std::to_string(n) +
                   " with edge orders " + std::to_string(a) + " and " + std::to_string(b));
}

std::optional<int> model_girth(const LinkModel& m) {
  LinkGraph g;
  int n = static_cast<int>(m.node_types.size());
  g.order = 1;
  for (int i = 0; i < n; ++i) g.nodes.push_back(i);
  g.adjacency.assign(n, {});
  for (const auto& e : m.edges) {
    int id = static_cast<int>(g.links.size());
    g.links.push_back(e);
    g.adjacency[e[0]].push_back(id);
    g.adjacency[e[1]].push_back(id);
  }
  auto cyc = shortest_cycle(g);
  if (cyc.empty()) return std::nullopt;
  return static_cast<int>(cyc.size());
}

namespace {

void check_model(const RegularSpec& spec, int type, const LinkModel& m) {
  int n = static_cast<int>(m.node_types.size());
  std::vector<int> deg(n, 0);
  std::set<std::pair<int, int>> seen;
  for (const auto& e : m.edges) {
    if (e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n) throw InputError("link model edge out of range");
    if (m.node_types[e[0]] == m.node_types[e[1]]) throw InputError("link model edge joins nodes of equal type");
    if (!seen.insert({std::min(e[0], e[1]), std::max(e[0], e[1])}).second)
      throw InputError("link model has a repeated edge");
    ++deg[e[0]];
    ++deg[e[1]];
  }
  for (int i = 0; i < n; ++i) {
    int t = m.node_types[i];
    if (t == type || t < 1 || t > 3) throw InputError("link model node has an invalid type");
    if (deg[i] != spec.order(type, t))
      throw InputError("link model node degree " + std::to_string(deg[i]) + " does not match edge order " +
                       std::to_string(spec.order(type, t)));
  }
  int order = spec.dc.order(type);
  if (auto g = model_girth(m); g && *g < order)
    throw InputError("link of a type-" + std::to_string(type) + " vertex has a cycle of " + std::to_string(*g) +
                     " edges, angle " + std::to_string(*g) + "*2pi/" + std::to_string(order) + " < 2pi");
}

struct Builder {
  const RegularSpec& spec;
  std::array<LinkModel, 3> models;
  std::vector<int> type, dist, parent;
  std::vector<char> complete, dead;
  std::vector<std::array<int, 3>> faces;
  std::vector<std::vector<int>> nbr, vfaces;
  std::set<std::array<int, 3>> face_keys;
  std::map<std::pair<int, int>, int> edge_count;

  explicit Builder(const RegularSpec& s) : spec(s) {}

  int add_vertex(int t, int d) {
    int id = static_cast<int>(type.size());
    type.push_back(t);
    dist.push_back(d);
    parent.push_back(id);
    complete.push_back(0);
    dead.push_back(0);
    nbr.emplace_back();
    vfaces.emplace_back();
    return id;
  }

  static std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }
  static std::array<int, 3> face_key(int a, int b, int c) {
    std::array<int, 3> k{a, b, c};
    std::sort(k.begin(), k.end());
    return k;
  }

  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }

  bool adjacent(int a, int b) const { return std::find(nbr[a].begin(), nbr[a].end(), b) != nbr[a].end(); }

  void index_face(int id) {
    const auto& f = faces[id];
    for (int v : f) vfaces[v].push_back(id);
    for (int i = 0; i < 3; ++i) {
      int a = f[i], b = f[(i + 1) % 3];
      if (!adjacent(a, b)) {
        nbr[a].push_back(b);
        nbr[b].push_back(a);
      }
      ++edge_count[key(a, b)];
    }
  }

  void add_face(int a, int b, int c) {
    if (!face_keys.insert(face_key(a, b, c)).second) return;
    faces.push_back({a, b, c});
    index_face(static_cast<int>(faces.size()) - 1);
  }

  int faces_on(int a, int b) const {
    auto it = edge_count.find(key(a, b));
    return it == edge_count.end() ? 0 : it->second;
  }

  // Identify each group of vertices with its first member and rebuild the
  // incidence tables.
  void merge(const std::vector<std::vector<int>>& groups) {
    for (const auto& g : groups)
      for (size_t i = 1; i < g.size(); ++i) {
        int a = find(g[0]), b = find(g[i]);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        dead[b] = 1;
        dist[a] = std::min(dist[a], dist[b]);
        if (complete[a] && complete[b])
          throw InputError("generation failed: two completed vertices were identified");
        complete[a] = complete[a] || complete[b];
      }
    std::vector<std::array<int, 3>> old;
    old.swap(faces);
    face_keys.clear();
    edge_count.clear();
    for (auto& n : nbr) n.clear();
    for (auto& f : vfaces) f.clear();
    for (auto f : old) {
      for (int& v : f) v = find(v);
      if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) throw InputError("generation failed: degenerate identification");
      add_face(f[0], f[1], f[2]);
    }
    for (size_t v = 0; v < type.size(); ++v) {
      if (dead[v] || !complete[v]) continue;
      if (nbr[v].size() != models[type[v] - 1].node_types.size())
        throw InputError("generation failed: identification overfilled the link of vertex " + std::to_string(v));
    }
    for (const auto& [k, c] : edge_count)
      if (c > spec.order(type[k.first], type[k.second]))
        throw InputError("generation failed: identification overfilled an edge");
  }

  // Extend the link of x to its model graph. Partial-link nodes that must
  // occupy the same model node are identified, fewest identifications first.
  void complete_link(int x) {
    const LinkModel& model = models[type[x] - 1];
    int ln = static_cast<int>(model.node_types.size());
    std::vector<std::vector<char>> lmat(ln, std::vector<char>(ln, 0));
    for (const auto& e : model.edges) lmat[e[0]][e[1]] = lmat[e[1]][e[0]] = 1;

    std::vector<int> pnodes = nbr[x];
    std::sort(pnodes.begin(), pnodes.end());
    int pn = static_cast<int>(pnodes.size());
    std::map<int, int> pindex;
    for (int i = 0; i < pn; ++i) pindex[pnodes[i]] = i;
    std::vector<std::vector<int>> padj(pn);
    std::vector<std::vector<char>> pmat(pn, std::vector<char>(pn, 0));
    for (int f : vfaces[x]) {
      std::vector<int> others;
      for (int v : faces[f])
        if (v != x) others.push_back(v);
      int p = pindex.at(others[0]), q = pindex.at(others[1]);
      padj[p].push_back(q);
      padj[q].push_back(p);
      pmat[p][q] = pmat[q][p] = 1;
    }

    // Partial-link nodes component by component, breadth first.
    std::vector<int> visit;
    std::vector<char> seen(pn, 0);
    for (int s = 0; s < pn; ++s) {
      if (seen[s]) continue;
      seen[s] = 1;
      std::deque<int> q{s};
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        visit.push_back(u);
        for (int w : padj[u])
          if (!seen[w]) {
            seen[w] = 1;
            q.push_back(w);
          }
      }
    }

    std::vector<int> phi(pn, -1);
    std::vector<std::vector<int>> pre(ln);
    auto covered = [&](int l1, int l2) {
      for (int p : pre[l1])
        for (int q : pre[l2])
          if (pmat[p][q]) return true;
      return false;
    };
    auto closing_ok = [&]() {
      for (const auto& e : model.edges) {
        if (pre[e[0]].empty() || pre[e[1]].empty() || covered(e[0], e[1])) continue;
        int a = pnodes[pre[e[0]][0]], b = pnodes[pre[e[1]][0]];
        if (pre[e[0]].size() == 1 && pre[e[1]].size() == 1) {
          if (complete[a] || complete[b]) return false;
          if (faces_on(a, b) >= spec.order(type[a], type[b])) return false;
        }
      }
      return true;
    };
    std::function<bool(size_t, int)> search = [&](size_t k, int merges) -> bool {
      if (k == visit.size()) return merges == 0 && closing_ok();
      int p = visit[k];
      int want = type[pnodes[p]];
      for (int cand = 0; cand < ln; ++cand) {
        if (model.node_types[cand] != want) continue;
        bool shared = !pre[cand].empty();
        if (shared && merges == 0) continue;
        bool ok = true;
        for (int w : padj[p])
          if (phi[w] >= 0 && !lmat[cand][phi[w]]) {
            ok = false;
            break;
          }
        for (int q : pre[cand])
          if (pmat[p][q] || adjacent(pnodes[p], pnodes[q]) || (complete[pnodes[p]] && complete[pnodes[q]])) ok = false;
        if (!ok) continue;
        phi[p] = cand;
        pre[cand].push_back(p);
        if (search(k + 1, merges - (shared ? 1 : 0))) return true;
        pre[cand].pop_back();
        phi[p] = -1;
      }
      return false;
    };
    bool found = false;
    for (int m = std::max(0, pn - ln); m <= pn && !found; ++m) found = search(0, m);
    if (!found)
      throw InputError("generation failed: the partial link of vertex " + std::to_string(x) +
                       " does not embed in its model");

    std::vector<std::vector<int>> groups;
    for (int l = 0; l < ln; ++l)
      if (pre[l].size() > 1) {
        std::vector<int> g;
        for (int p : pre[l]) g.push_back(pnodes[p]);
        groups.push_back(g);
      }
    if (!groups.empty()) merge(groups);

    std::vector<int> vertex_of(ln, -1);
    for (int l = 0; l < ln; ++l)
      vertex_of[l] = pre[l].empty() ? add_vertex(model.node_types[l], dist[x] + 1) : find(pnodes[pre[l][0]]);
    for (const auto& e : model.edges) add_face(x, vertex_of[e[0]], vertex_of[e[1]]);
    complete[x] = 1;
    if (nbr[x].size() != static_cast<size_t>(ln))
      throw InputError("generation failed: link of vertex " + std::to_string(x) + " does not match its model");
  }
};

}  // namespace

TriComplex gen_regular(const RegularSpec& spec, int radius) {
  if (radius < 0) throw InputError("radius must be non-negative");
  require_base(spec.dc);
  for (const auto& [k, v] : spec.edge_orders) {
    if (k.first < 1 || k.second > 3 || k.first >= k.second) throw InputError("bad edge order key");
    if (v < 2) throw InputError("edge orders must be at least 2");
  }
  Builder b(spec);
  for (int t = 1; t <= 3; ++t) {
    auto it = spec.link_overrides.find(t);
    b.models[t - 1] = it != spec.link_overrides.end() ? it->second : standard_link_model(spec, t);
    check_model(spec, t, b.models[t - 1]);
  }
  b.add_vertex(1, 0);
  // One ring beyond the radius is completed as well, so that identifications
  // forced by links of the next ring are applied before truncating.
  for (size_t i = 0; i < b.type.size(); ++i) {
    if (b.dead[i] || b.dist[i] > radius) continue;
    b.complete_link(static_cast<int>(i));
  }
  if (radius > 0)
    for (size_t i = 0; i < b.type.size(); ++i)
      if (!b.dead[i] && !b.complete[i] && b.dist[i] == radius + 1) {
        bool touches_inside = false;
        for (int w : b.nbr[i]) touches_inside = touches_inside || b.dist[w] <= radius;
        if (touches_inside) b.complete_link(static_cast<int>(i));
      }

  int n = static_cast<int>(b.type.size());
  std::vector<int> dist(n, -1), new_id(n, -1), order;
  for (auto& v : b.nbr) std::sort(v.begin(), v.end());
  dist[0] = 0;
  std::deque<int> q{0};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    new_id[v] = static_cast<int>(order.size());
    order.push_back(v);
    if (dist[v] == radius) continue;
    std::vector<int> fresh;
    for (int w : b.nbr[v])
      if (dist[w] < 0) fresh.push_back(w);
    std::stable_sort(fresh.begin(), fresh.end(), [&](int x, int y) { return b.type[x] < b.type[y]; });
    for (int w : fresh) {
      dist[w] = dist[v] + 1;
      q.push_back(w);
    }
  }
  std::vector<int> types;
  for (int v : order) types.push_back(b.type[v]);
  std::vector<std::array<VertexId, 3>> faces;
  for (const auto& f : b.faces) {
    if (new_id[f[0]] < 0 || new_id[f[1]] < 0 || new_id[f[2]] < 0) continue;
    std::array<VertexId, 3> g{};
    for (int v : f) g[b.type[v] - 1] = new_id[v];
    faces.push_back(g);
  }
  std::sort(faces.begin(), faces.end());
  return TriComplex::build(spec.dc, std::move(types), std::move(faces), radius);
}

}  // namespace cat0
