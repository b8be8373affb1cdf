#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "cat0/generators.hpp"

namespace cat0 {

namespace {

struct RawPatch {
  std::vector<Vec2> points;
  std::vector<int> types;
  std::vector<std::array<int, 3>> faces;
};

// Tessellate the disc of radius `reach` around the origin by reflecting the
// base triangle across its sides.
RawPatch reflect_out(const DiskCondition& dc, const TriangleShape& shape, const Rational& reach) {
  RawPatch raw;
  std::map<Vec2, int, Vec2Less> index;
  auto vertex = [&](const Vec2& p, int type) {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(raw.points.size());
    raw.points.push_back(p);
    raw.types.push_back(type);
    index.emplace(p, id);
    return id;
  };
  QField l12 = *qf_sqrt(QField(shape.side_between(1, 2)));
  QField l13 = *qf_sqrt(QField(shape.side_between(1, 3)));
  int a1 = shape.angle_units[0];
  int v1 = vertex({QField(0), QField(0)}, 1);
  int v2 = vertex({l12, QField(0)}, 2);
  int v3 = vertex({l13 * cos_units(a1), l13 * sin_units(a1)}, 3);
  (void)dc;

  QField bound = QField(reach * reach);
  auto inside = [&](int v) { return qf_compare(norm2(raw.points[v]), bound) <= 0; };
  std::set<std::array<int, 3>> seen;
  std::deque<std::array<int, 3>> queue;
  auto push = [&](std::array<int, 3> f) {
    std::array<int, 3> key = f;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) return;
    if (!inside(f[0]) || !inside(f[1]) || !inside(f[2])) return;
    raw.faces.push_back(f);
    queue.push_back(f);
  };
  push({v1, v2, v3});
  while (!queue.empty()) {
    auto f = queue.front();
    queue.pop_front();
    for (int i = 0; i < 3; ++i) {
      int a = f[(i + 1) % 3], b = f[(i + 2) % 3];
      Vec2 p = reflect(raw.points[f[i]], raw.points[a], raw.points[b]);
      int c = vertex(p, raw.types[f[i]]);
      std::array<int, 3> g = f;
      g[i] = c;
      push(g);
    }
  }
  return raw;
}

}  // namespace

SeifertPatch gen_seifert_patch(const DiskCondition& dc, int radius) {
  if (radius < 0) throw InputError("radius must be non-negative");
  TriangleShape shape = triangle_shape(dc);
  // Every edge is at most 2 long, so radius steps stay within 2*radius.
  RawPatch raw = reflect_out(dc, shape, Rational(2 * radius + 4));

  int n = static_cast<int>(raw.points.size());
  std::vector<std::vector<int>> nbrs(n);
  for (const auto& f : raw.faces)
    for (int i = 0; i < 3; ++i) {
      nbrs[f[i]].push_back(f[(i + 1) % 3]);
      nbrs[f[i]].push_back(f[(i + 2) % 3]);
    }
  for (auto& v : nbrs) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  // Renumber breadth-first from the base; ties broken by type, then by position.
  std::vector<int> dist(n, -1), new_id(n, -1), order;
  dist[0] = 0;
  std::deque<int> q{0};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    new_id[v] = static_cast<int>(order.size());
    order.push_back(v);
    if (dist[v] == radius) continue;
    std::vector<int> fresh;
    for (int w : nbrs[v])
      if (dist[w] < 0) fresh.push_back(w);
    std::sort(fresh.begin(), fresh.end(), [&](int a, int b) {
      if (raw.types[a] != raw.types[b]) return raw.types[a] < raw.types[b];
      int cx = qf_compare(raw.points[a].x, raw.points[b].x);
      if (cx != 0) return cx < 0;
      return qf_compare(raw.points[a].y, raw.points[b].y) < 0;
    });
    for (int w : fresh) {
      dist[w] = dist[v] + 1;
      q.push_back(w);
    }
  }

  std::vector<int> types;
  std::vector<Vec2> coords;
  for (int v : order) {
    types.push_back(raw.types[v]);
    coords.push_back(raw.points[v]);
  }
  std::vector<std::array<VertexId, 3>> faces;
  for (const auto& f : raw.faces) {
    if (new_id[f[0]] < 0 || new_id[f[1]] < 0 || new_id[f[2]] < 0) continue;
    std::array<VertexId, 3> g{};
    for (int v : f) g[raw.types[v] - 1] = new_id[v];
    faces.push_back(g);
  }
  std::sort(faces.begin(), faces.end());
  return {TriComplex::build(dc, std::move(types), std::move(faces), radius), std::move(coords)};
}

TriComplex gen_seifert(const DiskCondition& dc, int radius) { return gen_seifert_patch(dc, radius).complex; }

}  // namespace cat0
