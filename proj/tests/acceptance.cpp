// Acceptance checks. Prints one PASS/FAIL line per criterion with its time
// budget; exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cat0/expansion.hpp"
#include "cat0/generators.hpp"
#include "planar_oracle.hpp"

using namespace cat0;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

DiskCondition dc(int a, int b, int c) { return DiskCondition{{a, b, c}}; }

const std::vector<DiskCondition> kSeifert{dc(6, 6, 6), dc(4, 8, 8), dc(4, 6, 12)};

RegularSpec edge_order_three() { return RegularSpec{dc(6, 6, 6), {{{1, 2}, 3}, {{1, 3}, 3}, {{2, 3}, 3}}, {}}; }

RadicalSum root(const Rational& q) { return RadicalSum::sqrt_of(QField(q)); }
RadicalSum num(const Rational& q) { return RadicalSum(QField(q)); }

// r^2 for a radius of a Seifert family, where squared distances are rational.
Rational square(const RadicalSum& r) {
  auto q = r.square_in_field();
  if (!q || !q->is_rational()) throw std::logic_error("radius " + r.to_string() + " has an irrational square");
  return q->a();
}

// Records the first failure and counts checks.
struct Checker {
  Outcome out;
  long checks = 0;
  bool operator()(bool ok, const std::string& what) {
    ++checks;
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
    return ok;
  }
  Outcome done(const std::string& summary) {
    if (out.pass) out.detail = summary;
    return out;
  }
};

// Vertices with oracle distance <= r from the base, as a sorted list.
std::vector<VertexId> oracle_within(const TriComplex& cx, const oracle::Planar& pl, const Rational& r2, bool strict) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < cx.num_vertices(); ++v) {
    Rational d = pl.dist_sq(0, v);
    if (strict ? d < r2 : d <= r2) out.push_back(v);
  }
  return out;
}

Outcome criterion1() {
  Checker c;
  const std::set<std::array<int, 3>> bases{{6, 6, 6}, {4, 8, 8}, {4, 6, 12}};
  int accepted = 0;
  for (int a = 1; a <= 16; ++a)
    for (int b = 1; b <= 16; ++b)
      for (int d = 1; d <= 16; ++d) {
        DiskVerdict v = validate_disk_condition(DiskCondition{{a, b, d}});
        // 1/a + 1/b + 1/d <= 1/2  <=>  2(ab + bd + da) <= abd.
        bool want = 2 * (a * b + b * d + d * a) <= a * b * d;
        std::array<int, 3> s{a, b, d};
        std::sort(s.begin(), s.end());
        bool base = bases.count(s) > 0;
        std::ostringstream os;
        os << "(" << a << "," << b << "," << d << ")";
        c(v.accepted == want, os.str() + " acceptance");
        c((v.status == DiskStatus::Base) == base, os.str() + " base status");
        if (base) c(v.base && *v.base == s, os.str() + " base triple");
        accepted += want;
      }
  return c.done("4096 triples, " + std::to_string(accepted) + " accepted");
}

Outcome criterion2() {
  Checker c;
  const std::vector<std::vector<Rational>> want{{1, 1, 1}, {1, 1, 2}, {1, 3, 4}};
  for (size_t i = 0; i < kSeifert.size(); ++i) {
    TriangleShape s = triangle_shape(kSeifert[i]);
    std::vector<Rational> got(s.side_sq.begin(), s.side_sq.end());
    std::sort(got.begin(), got.end());
    c(got == want[i], kSeifert[i].to_string() + " side squares");
  }
  return c.done("{1,1,1} {1,1,2} {1,3,4}");
}

Outcome criterion3() {
  Checker c;
  int vertices = 0;
  for (const auto& d : kSeifert) {
    TriComplex cx = gen_seifert(d, 4);
    for (VertexId v = 0; v < cx.num_vertices(); ++v) {
      if (!cx.is_interior(v)) continue;
      ++vertices;
      LinkCheck lc = check_link_condition(cx, v);
      c(lc.pass && lc.girth_units && *lc.girth_units == 24,
        d.to_string() + " vertex " + std::to_string(v) + " girth is not exactly 2pi");
    }
  }
  // A 5-cycle link at an order-6 vertex has girth 5 * 2pi/6 < 2pi.
  LinkGraph g;
  g.center = 0;
  g.order = 6;
  for (int i = 0; i < 5; ++i) g.nodes.push_back(i + 1);
  g.adjacency.assign(5, {});
  for (int i = 0; i < 5; ++i) {
    g.links.push_back({i, (i + 1) % 5});
    g.link_faces.push_back(i);
    g.adjacency[i].push_back(i);
    g.adjacency[(i + 1) % 5].push_back(i);
  }
  LinkCheck five = check_link_condition(g);
  c(!five.pass && five.girth_units && *five.girth_units == 20, "5-cycle link at an order-6 vertex passes");
  return c.done(std::to_string(vertices) + " interior vertices at girth 2pi; 5-cycle rejected (girth 20/12 pi)");
}

// Distances between all pairs of vertices within radius 4 of the base
// compared with an exact planar development.
Outcome distance_equivalence(const DiskCondition& d, bool eisenstein) {
  Checker c;
  TriComplex cx = gen_seifert(d, 5);
  oracle::Planar pl(cx);
  Geodesics g(cx);
  std::vector<VertexId> ball = oracle_within(cx, pl, 16, false);
  long pairs = 0;
  for (size_t i = 0; i < ball.size(); ++i)
    for (size_t j = i + 1; j < ball.size(); ++j) {
      VertexId u = ball[i], w = ball[j];
      Rational q = pl.dist_sq(u, w);
      if (eisenstein) {
        // Lattice coordinates: point = a + b*omega, omega = (1/2, sqrt3/2).
        Rational b = 2 * (pl.at(w).y - pl.at(u).y);
        Rational a = (pl.at(w).x - pl.at(u).x) - b / 2;
        q = a * a + a * b + b * b;
        if (!c(a.get_den() == 1 && b.get_den() == 1, "non-lattice point")) return c.out;
      }
      GeodesicResult r = g.vertex_distance(u, w);
      CertInterval iv = r.interval(64);
      bool contains = sgn(iv.lo()) >= 0 && iv.lo() * iv.lo() <= q && q <= iv.hi() * iv.hi();
      c(contains && r.length == root(q), d.to_string() + " pair " + std::to_string(u) + "-" + std::to_string(w));
      ++pairs;
    }
  return c.done(std::to_string(ball.size()) + " vertices, " + std::to_string(pairs) + " pairs");
}

Outcome criterion4() {
  Outcome o = distance_equivalence(dc(6, 6, 6), true);
  if (!o.pass) return o;
  TriComplex cx = gen_seifert(dc(6, 6, 6), 5);
  Geodesics g(cx);
  Balls balls(g);
  auto radii = balls.critical_radii(0, num(4));
  std::vector<RadicalSum> want{num(1), root(3), num(2), root(7), num(3), root(12), root(13), num(4)};
  bool same = radii.size() == want.size();
  for (size_t i = 0; same && i < want.size(); ++i) same = radii[i] == want[i];
  if (!same) return {false, "critical radii up to 4 differ"};
  o.detail += "; critical radii {1, sqrt3, 2, sqrt7, 3, 2sqrt3, sqrt13, 4}";
  return o;
}

Outcome criterion5() {
  Outcome a = distance_equivalence(dc(4, 8, 8), false);
  if (!a.pass) return a;
  Outcome b = distance_equivalence(dc(4, 6, 12), false);
  if (!b.pass) return b;
  return {true, "(4,8,8): " + a.detail + "; (4,6,12): " + b.detail};
}

// Regular radii: rationals in (lo, hi) at which no vertex sits on the sphere.
std::vector<RadicalSum> regular_radii(Balls& balls, double lo, double hi, int count) {
  std::vector<RadicalSum> out;
  for (int i = 0; static_cast<int>(out.size()) < count && i < 10 * count; ++i) {
    Rational r(static_cast<long>(std::lround((lo + (hi - lo) * (i + 0.5) / count) * 997)), 997);
    RadicalSum rs = num(r);
    if (!balls.vertices_within(0, rs).critical()) out.push_back(rs);
  }
  return out;
}

Outcome criterion6() {
  Checker c;
  int audits = 0, faces = 0;
  auto run = [&](const TriComplex& cx, const std::string& name, double hi) {
    Geodesics g(cx);
    Balls balls(g);
    auto radii = regular_radii(balls, 0.35, hi, 20);
    c(radii.size() >= 20, name + " has fewer than 20 regular radii");
    for (const auto& r : radii) {
      SphereAudit a = balls.audit_sphere_lemmas(0, r);
      ++audits;
      faces += a.faces_meeting;
      c(a.ok(), name + " r=" + r.to_string() + ": " + (a.ok() ? "" : a.violations.front().detail));
    }
  };
  for (const auto& d : kSeifert) run(gen_seifert(d, 5), d.to_string(), 3.9);
  run(gen_regular(edge_order_three(), 4), "edge orders 3", 2.2);
  return c.done(std::to_string(audits) + " audits over 4 families, " + std::to_string(faces) + " face meetings");
}

Outcome criterion7() {
  Checker c;
  int stages = 0, steps = 0;
  auto run = [&](const TriComplex& cx, const std::string& name, const RadicalSum& R, const oracle::Planar* pl) {
    Geodesics g(cx);
    Expansion ex(g);
    ExpansionCertificate cert = ex.expand_to(0, R);
    VerifyResult vr = verify_certificate(cx, certificate_from_json(certificate_to_json(cert)));
    c(vr.valid, name + ": " + vr.reason);
    // A separate distance computation for the stage balls.
    Geodesics fresh(cx);
    Balls balls(fresh);
    SimplicialSet cur = full_subcomplex(cx, {0});
    for (const auto& st : cert.stages) {
      ++stages;
      for (const auto& s : st.steps) {
        ++steps;
        LinkGraph lk = link_graph(cx, s.x);
        c(s.evidence.connected && s.evidence.acyclic && 2 * s.evidence.diameter_units <= lk.order,
          name + " invalid step at " + std::to_string(s.x));
        cur = set_union(cur, cone(cx, s.x, s.gamma));
      }
      c(cur == balls.simplicial_ball(0, st.radius), name + " stage " + st.radius.to_string() + " set");
      if (pl) {
        c(cur == full_subcomplex(cx, oracle_within(cx, *pl, square(st.radius), false)),
          name + " stage differs from the planar ball");
      }
    }
  };
  for (const auto& d : kSeifert) {
    TriComplex cx = gen_seifert(d, 5);
    oracle::Planar pl(cx);
    run(cx, d.to_string(), num(3), &pl);
  }
  run(gen_regular(edge_order_three(), 4), "edge orders 3", num(2), nullptr);
  return c.done(std::to_string(stages) + " stages, " + std::to_string(steps) + " cone steps verified");
}

Outcome criterion8() {
  Checker c;
  int total = 0, rejected = 0;
  auto attempt = [&](const TriComplex& cx, const ExpansionCertificate& m, const std::string& what) {
    ++total;
    bool killed = !verify_certificate(cx, m).valid;
    rejected += killed;
    c(killed, "mutation survived: " + what);
  };
  for (const auto& d : {dc(6, 6, 6), dc(4, 6, 12)}) {
    TriComplex cx = gen_seifert(d, 5);
    Geodesics g(cx);
    Expansion ex(g);
    const ExpansionCertificate cert = ex.expand_to(0, num(2));
    c(verify_certificate(cx, cert).valid, d.to_string() + " original certificate rejected");
    for (size_t k = 0; k < cert.stages.size(); ++k) {
      const auto& st = cert.stages[k];
      std::string sk = d.to_string() + " stage " + std::to_string(k);
      for (size_t j = 0; j < st.steps.size(); ++j)
        for (size_t e = 0; e < st.steps[j].gamma.edges.size(); ++e) {
          auto m = cert;
          auto& edges = m.stages[k].steps[j].gamma.edges;
          edges.erase(edges.begin() + static_cast<long>(e));
          attempt(cx, m, sk + " gamma edge deleted");
        }
      // Inflate epsilon to the bound and beyond it.
      const RadicalSum& r = st.radius;
      RadicalSum bound = r - RadicalSum::sqrt_of(*r.square_in_field() - QField(Rational(1, 4)));
      for (const RadicalSum& eps : {bound, bound + RadicalSum(QField(Rational(1, 1000))), bound.scaled(QField(2))}) {
        auto m = cert;
        m.stages[k].epsilon.value = eps;
        attempt(cx, m, sk + " epsilon inflated");
      }
      for (size_t j = 0; j < st.boundary.size(); ++j) {
        VertexId x = st.boundary[j];
        auto both = cert;
        both.stages[k].boundary.erase(both.stages[k].boundary.begin() + static_cast<long>(j));
        auto& steps = both.stages[k].steps;
        steps.erase(std::find_if(steps.begin(), steps.end(), [&](const ConeStep& s) { return s.x == x; }));
        attempt(cx, both, sk + " boundary vertex dropped");
        auto listed = cert;
        listed.stages[k].boundary.erase(listed.stages[k].boundary.begin() + static_cast<long>(j));
        attempt(cx, listed, sk + " boundary entry dropped");
      }
      for (int which = 0; which < 2; ++which) {
        auto m = cert;
        std::string& h = which ? m.stages[k].final_hash : m.stages[k].initial_hash;
        h.back() = h.back() == '0' ? '1' : '0';
        attempt(cx, m, sk + (which ? " final hash altered" : " initial hash altered"));
      }
    }
    auto m = cert;
    m.final_hash.back() = m.final_hash.back() == '0' ? '1' : '0';
    attempt(cx, m, d.to_string() + " certificate hash altered");
  }
  return c.done(std::to_string(rejected) + "/" + std::to_string(total) + " mutations rejected");
}

Outcome criterion9() {
  Checker c;
  TriComplex cx = gen_seifert(dc(6, 6, 6), 5);
  Geodesics g(cx);
  Expansion ex(g);
  const ExpansionCertificate ref = ex.expand_to(0, root(3));
  std::set<std::string> orders;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ExpansionCertificate cert = ex.expand_to(0, root(3), seed);
    std::string order;
    for (const auto& st : cert.stages)
      for (const auto& s : st.steps) order += std::to_string(s.x) + ",";
    orders.insert(order);
    c(verify_certificate(cx, cert).valid, "seed " + std::to_string(seed) + " certificate invalid");
    c(cert.final_hash == ref.final_hash, "seed " + std::to_string(seed) + " final set differs");
  }
  return c.done("20 orders (" + std::to_string(orders.size()) + " distinct), one final set");
}

Outcome criterion10() {
  Checker c;
  int radii_checked = 0;
  auto run = [&](const TriComplex& cx, const std::string& name, const RadicalSum& R, const oracle::Planar* pl) {
    Geodesics g(cx);
    Balls balls(g);
    Expansion ex(g);
    const QField quarter{Rational(1, 4)};
    for (const auto& r : balls.critical_radii(0, R)) {
      ++radii_checked;
      RadicalSum eps = ex.epsilon_for(0, r).value;
      std::string at = name + " r=" + r.to_string();
      // Polynomial form, valid for any r: 0 < eps < r and eps(2r - eps) < 1/4.
      c(rs_sign(eps) > 0 && eps < r && eps * (r + r - eps) < RadicalSum(quarter), at + " epsilon bound");
      // Direct form when sqrt(r^2 - 1/4) is a radical of the field.
      if (auto r2 = r.square_in_field()) c(eps < r - RadicalSum::sqrt_of(*r2 - quarter), at + " epsilon bound (direct)");
      std::vector<VertexId> inner = balls.simplicial_ball(0, r - eps).vertices;
      if (pl) {
        c(inner == oracle_within(cx, *pl, square(r), true), at + " inner ball differs from the plane");
      } else {
        VertexPartition p = balls.vertices_within(0, r);
        c(inner == p.inside, at + " inner ball differs from the vertices closer than r");
      }
    }
  };
  for (const auto& d : kSeifert) {
    TriComplex cx = gen_seifert(d, 5);
    oracle::Planar pl(cx);
    run(cx, d.to_string(), num(4), &pl);
  }
  run(gen_regular(edge_order_three(), 4), "edge orders 3", parse_radical("3.4"), nullptr);
  return c.done(std::to_string(radii_checked) + " critical radii");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "disk condition gate", 1, criterion1},
      {2, "triangle shapes", 1, criterion2},
      {3, "link condition", 5, criterion3},
      {4, "distances (6,6,6) vs Eisenstein lattice", 60, criterion4},
      {5, "distances (4,8,8), (4,6,12) vs development", 120, criterion5},
      {6, "sphere audit on regular radii", 120, criterion6},
      {7, "expansion round trip", 120, criterion7},
      {8, "certificate mutations", 30, criterion8},
      {9, "processing order stability", 30, criterion9},
      {10, "epsilon conformance", 30, criterion10},
  };
  int failures = 0;
  for (const auto& cr : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass && secs < cr.budget_s;
    if (o.pass && !pass) o.detail += "; over the time budget";
    failures += !pass;
    std::printf("criterion %2d %-44s %s  %7.2fs / %4.0fs  %s\n", cr.id, cr.name, pass ? "PASS" : "FAIL", secs, cr.budget_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
