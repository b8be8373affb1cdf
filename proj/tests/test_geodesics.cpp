#include <gtest/gtest.h>

#include <random>

#include "cat0/generators.hpp"
#include "cat0/geodesics.hpp"
#include "planar_oracle.hpp"

using namespace cat0;

namespace {

DiskCondition dc(int a, int b, int c) { return DiskCondition{{a, b, c}}; }

VertexId at_point(const TriComplex& cx, const oracle::Planar& pl, Rational x, Rational y) {
  for (VertexId v = 0; v < cx.num_vertices(); ++v)
    if (pl.placed(v) && pl.at(v).x == x && pl.at(v).y == y) return v;
  return -1;
}

Vec2 vec(const char* x, const char* y) { return {QField(parse_rational(x)), QField(parse_rational(y))}; }

}  // namespace

TEST(Develop, CanonicalPlacement) {
  TriComplex hex = gen_seifert(dc(6, 6, 6), 2);
  DevelopedChart one = develop(hex, Corridor{{0}, {}});
  std::vector<Vec2> pts(one.face_points[0].begin(), one.face_points[0].end());
  Vec2 top{QField(Rational(1, 2)), QField(0, 0, Rational(1, 2), 0)};
  EXPECT_EQ(std::count(pts.begin(), pts.end(), vec("0", "0")), 1);
  EXPECT_EQ(std::count(pts.begin(), pts.end(), vec("1", "0")), 1);
  EXPECT_EQ(std::count(pts.begin(), pts.end(), top), 1);

  // Two faces across an edge form a rhombus; the far vertices are sqrt3 apart.
  EdgeId e = hex.face_edges(0)[0];
  FaceId other = hex.faces_of_edge(e)[0] == 0 ? hex.faces_of_edge(e)[1] : hex.faces_of_edge(e)[0];
  DevelopedChart two = develop(hex, Corridor{{0, other}, {e}});
  Vec2 a = two.position(hex, 0, hex.opposite(0, e)), b = two.position(hex, 1, hex.opposite(other, e));
  EXPECT_EQ(norm2(a - b), QField(3));

  TriComplex t = gen_seifert(dc(4, 6, 12), 1);
  DevelopedChart c = develop(t, Corridor{{0}, {}});
  const auto& f = t.face(0);
  EXPECT_EQ(c.face_points[0][2], vec("0", "0"));  // type 3, order 12
  EXPECT_EQ(c.face_points[0][1], vec("2", "0"));
  EXPECT_EQ(c.face_points[0][0], (Vec2{QField(Rational(3, 2)), QField(0, 0, Rational(1, 2), 0)}));
  EXPECT_EQ(t.type(f[2]), 3);

  EXPECT_THROW(develop(hex, Corridor{{0, 0}, {e}}), InputError);
  EXPECT_THROW(develop(hex, Corridor{{}, {}}), InputError);
}

TEST(Develop, MarginIsEnforced) {
  // Squares have faces spanned by three vertices of the outer ring.
  TriComplex hex = gen_seifert(dc(4, 8, 8), 2);
  FaceId outer = -1;
  for (FaceId f = 0; f < hex.num_faces() && outer < 0; ++f) {
    bool inside = false;
    for (VertexId v : hex.face(f)) inside = inside || hex.is_interior(v);
    if (!inside) outer = f;
  }
  ASSERT_GE(outer, 0);
  EXPECT_THROW(develop(hex, Corridor{{outer}, {}}), MarginExceeded);
}

TEST(DirectDistance, Examples) {
  TriComplex hex = gen_seifert(dc(6, 6, 6), 4);
  oracle::Planar pl(hex);
  Geodesics g(hex);
  VertexId n1 = at_point(hex, pl, 1, 0);
  VertexId diag = at_point(hex, pl, Rational(3, 2), Rational(1, 2));  // (3/2, sqrt3/2), sqrt3 from the base
  VertexId far = at_point(hex, pl, 2, 0);
  ASSERT_GE(n1, 0);
  ASSERT_GE(diag, 0);
  ASSERT_GE(far, 0);
  EXPECT_EQ(*g.direct_distance(0, n1, RadicalSum(2)), QField(1));
  EXPECT_EQ(*g.direct_distance(0, diag, RadicalSum(2)), QField(3));
  // The segment to (2,0) runs through (1,0): blocked.
  EXPECT_FALSE(g.direct_distance(0, far, RadicalSum(3)).has_value());
  EXPECT_FALSE(g.direct_distance(0, diag, RadicalSum(1)).has_value());
  auto path = g.vertex_distance(0, far);
  EXPECT_EQ(path.length, RadicalSum(2));
  EXPECT_EQ(path.breakpoints, (std::vector<VertexId>{0, n1, far}));
}

TEST(VertexDistance, EisensteinLattice) {
  TriComplex hex = gen_seifert(dc(6, 6, 6), 4);
  oracle::Planar pl(hex);
  Geodesics g(hex);
  // Lattice point 2 + w with w = exp(i pi/3): (5/2, sqrt3/2), norm 4 + 2 + 1 = 7.
  VertexId v = at_point(hex, pl, Rational(5, 2), Rational(1, 2));
  ASSERT_GE(v, 0);
  auto r = g.vertex_distance(0, v);
  EXPECT_EQ(r.length, RadicalSum::sqrt_of(QField(7)));
  EXPECT_TRUE(r.unique);
  EXPECT_EQ(r.breakpoints.size(), 2u);
  ASSERT_EQ(r.corridors.size(), 1u);
  // The witness corridor develops the target at distance sqrt7.
  DevelopedChart ch = develop(hex, r.corridors[0]);
  Vec2 a = ch.position(hex, 0, 0), b = ch.position(hex, ch.faces.size() - 1, v);
  EXPECT_EQ(norm2(a - b), QField(7));
  auto e = r.interval();
  EXPECT_GE(e.lo(), Rational(26457, 10000));
  EXPECT_LE(e.hi(), Rational(26458, 10000));
}

TEST(VertexDistance, SquareTiling) {
  TriComplex sq = gen_seifert(dc(4, 8, 8), 4);
  oracle::Planar pl(sq);
  Geodesics g(sq);
  VertexId a = at_point(sq, pl, 1, 0), b = at_point(sq, pl, 0, 1);  // two corners of the square around the base
  ASSERT_GE(a, 0);
  ASSERT_GE(b, 0);
  EXPECT_EQ(g.vertex_distance(a, b).length, RadicalSum::sqrt_of(QField(2)));
  VertexId c = at_point(sq, pl, -1, 0);
  EXPECT_EQ(g.vertex_distance(a, c).length, RadicalSum(2));
  EXPECT_EQ(g.vertex_distance(a, c).breakpoints.size(), 3u);  // through the centre
}

TEST(VertexDistance, NeighboursAreEdgeLengths) {
  for (const auto& d : {dc(6, 6, 6), dc(4, 8, 8), dc(4, 6, 12)}) {
    TriComplex cx = gen_seifert(d, 3);
    Geodesics g(cx);
    for (EdgeId e : cx.edges_at(0)) {
      VertexId w = cx.other_end(e, 0);
      EXPECT_EQ(g.vertex_distance(0, w).length, RadicalSum::sqrt_of(QField(cx.edge_length_sq(e))));
    }
  }
}

TEST(VertexDistance, MatchesPlanarDevelopment) {
  for (const auto& d : {dc(6, 6, 6), dc(4, 8, 8), dc(4, 6, 12)}) {
    TriComplex cx = gen_seifert(d, 4);
    oracle::Planar pl(cx);
    Geodesics g(cx);
    const auto& safe = *g.safe_radius();
    const auto& bm = g.base_map();
    std::vector<VertexId> inside;
    for (VertexId v = 0; v < cx.num_vertices(); ++v)
      if (bm.known(v) && cmp_radical_sums(*bm.dist[v], safe) < 0) inside.push_back(v);
    ASSERT_GT(inside.size(), 5u);
    Rational span = 2 * upper_rational(safe) + 1;
    for (VertexId u : inside) {
      DistanceMap m = g.distances_from(u, span);
      for (VertexId w : inside) {
        ASSERT_TRUE(m.known(w));
        EXPECT_EQ(*m.dist[w], RadicalSum::sqrt_of(QField(pl.dist_sq(u, w)))) << d.to_string() << " " << u << "-" << w;
      }
    }
  }
}

TEST(SafeRadius, HexagonApothem) {
  TriComplex cx = gen_seifert(dc(6, 6, 6), 5);
  Geodesics g(cx);
  // Distance from the centre to the ring-5 hexagon: 5*sqrt3/2, at an edge midpoint.
  EXPECT_EQ(*g.safe_radius(), RadicalSum::sqrt_of(QField(Rational(75, 4))));
  EXPECT_THROW(g.require_inside(0, RadicalSum(5)), MarginExceeded);
  EXPECT_NO_THROW(g.require_inside(0, RadicalSum(4)));
  TriComplex small = gen_seifert(dc(6, 6, 6), 0);
  Geodesics h(small);
  EXPECT_THROW(h.vertex_distance(0, 0), MarginExceeded);
}

TEST(Angles, Examples) {
  TriComplex hex = gen_seifert(dc(6, 6, 6), 3);
  oracle::Planar pl(hex);
  Geodesics g(hex);
  VertexId e0 = at_point(hex, pl, 1, 0), e60 = at_point(hex, pl, Rational(1, 2), Rational(1, 2));
  VertexId e180 = at_point(hex, pl, -1, 0);
  auto a = g.angle_at(0, e0, e60);
  EXPECT_EQ(*a.units, 4);
  EXPECT_NEAR(a.radians, M_PI / 3, 1e-12);
  EXPECT_EQ(a.compare_pi, -1);
  auto b = g.angle_at(0, e0, e180);
  EXPECT_EQ(*b.units, 12);
  EXPECT_EQ(b.compare_pi, 0);
  auto c = g.angle_at(0, e0, e0);
  EXPECT_EQ(c.radians, 0);
  EXPECT_THROW(g.angle_at(0, 0, e0), InputError);
  // Directions inside faces: towards (3/2, sqrt3/2) and (-3/2, -sqrt3/2) are opposite.
  VertexId p = at_point(hex, pl, Rational(3, 2), Rational(1, 2)), q = at_point(hex, pl, Rational(-3, 2), Rational(-1, 2));
  auto d = g.angle_at(0, p, q);
  EXPECT_EQ(d.compare_pi, 0);
  EXPECT_FALSE(d.units.has_value());
  EXPECT_NEAR(d.radians, M_PI, 1e-12);
  VertexId s = at_point(hex, pl, 0, 1);  // (0, sqrt3): angle 90 degrees from (1,0)
  auto r = g.angle_at(0, e0, s);
  EXPECT_NEAR(r.radians, M_PI / 2, 1e-12);
  EXPECT_EQ(r.compare_pi, -1);
}

TEST(Geodesics, BreakpointsBendByAtLeastPi) {
  RegularSpec spec{dc(6, 6, 6), {{{1, 2}, 3}, {{1, 3}, 3}, {{2, 3}, 3}}, {}};
  TriComplex cx = gen_regular(spec, 3);
  Geodesics g(cx);
  const auto& bm = g.base_map();
  int bent = 0;
  for (VertexId w = 1; w < cx.num_vertices(); ++w) {
    if (!bm.known(w)) continue;
    auto r = g.geodesic(bm, w);
    EXPECT_TRUE(r.unique);
    for (size_t i = 1; i + 1 < r.breakpoints.size(); ++i) {
      ++bent;
      auto ang = g.angle_at(r.breakpoints[i], r.breakpoints[i - 1], r.breakpoints[i + 1]);
      EXPECT_GE(ang.compare_pi, 0);
    }
  }
  EXPECT_GT(bent, 0);
}

TEST(Geodesics, TriangleInequalityAndComparison) {
  RegularSpec spec{dc(6, 6, 6), {{{1, 2}, 3}, {{1, 3}, 3}, {{2, 3}, 3}}, {}};
  TriComplex cx = gen_regular(spec, 3);
  Geodesics g(cx);
  const auto& safe = *g.safe_radius();
  const auto& bm = g.base_map();
  std::vector<VertexId> inside;
  for (VertexId v = 0; v < cx.num_vertices(); ++v)
    if (bm.known(v) && cmp_radical_sums(*bm.dist[v], safe) < 0) inside.push_back(v);
  std::mt19937 rng(7);
  std::uniform_int_distribution<size_t> pick(0, inside.size() - 1);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    VertexId p = inside[pick(rng)], q = inside[pick(rng)], r = inside[pick(rng)];
    if (p == q || q == r || p == r) continue;
    auto pq = g.vertex_distance(p, q), qr = g.vertex_distance(q, r), pr = g.vertex_distance(p, r);
    EXPECT_LE(cmp_radical_sums(pr.length, pq.length + qr.length), 0);
    // Breakpoints on [q, r] are no farther from p than in the comparison triangle.
    double a = qr.length.approx(), b = pr.length.approx(), c = pq.length.approx();
    for (size_t i = 1; i + 1 < qr.breakpoints.size(); ++i) {
      VertexId m = qr.breakpoints[i];
      double s = g.vertex_distance(q, m).length.approx();
      double comparison = std::sqrt(std::max(0.0, (b * b * s + c * c * (a - s)) / a - s * (a - s)));
      EXPECT_LE(g.vertex_distance(p, m).length.approx(), comparison + 1e-9);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Geodesics, SymmetricInBranchingComplex) {
  RegularSpec spec{dc(6, 6, 6), {{{1, 2}, 3}, {{1, 3}, 3}, {{2, 3}, 3}}, {}};
  TriComplex cx = gen_regular(spec, 3);
  Geodesics g(cx), h(cx);
  const auto& safe = *g.safe_radius();
  const auto& bm = g.base_map();
  std::vector<VertexId> inside;
  for (VertexId v = 0; v < cx.num_vertices(); ++v)
    if (bm.known(v) && cmp_radical_sums(*bm.dist[v], safe) < 0) inside.push_back(v);
  std::mt19937 rng(11);
  std::uniform_int_distribution<size_t> pick(0, inside.size() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    VertexId p = inside[pick(rng)], q = inside[pick(rng)];
    auto a = g.vertex_distance(p, q), b = h.vertex_distance(q, p);
    EXPECT_EQ(cmp_radical_sums(a.length, b.length), 0) << p << " " << q;
    auto back = b.breakpoints;
    std::reverse(back.begin(), back.end());
    EXPECT_EQ(a.breakpoints, back);
  }
}
