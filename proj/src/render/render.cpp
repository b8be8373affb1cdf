#include "cat0/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <sstream>

#include "cat0/geodesics.hpp"

namespace cat0 {

namespace {

using Pt = std::array<double, 2>;

double cross(const Pt& o, const Pt& a, const Pt& b) { return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]); }

bool inside(const std::array<Pt, 3>& t, const Pt& p) {
  double s = cross(t[0], t[1], t[2]) > 0 ? 1 : -1;
  for (int i = 0; i < 3; ++i)
    if (s * cross(t[i], t[(i + 1) % 3], p) < -1e-12) return false;
  return true;
}

double segment_distance(const Pt& a, const Pt& b) {
  double dx = b[0] - a[0], dy = b[1] - a[1];
  double t = std::clamp(-(a[0] * dx + a[1] * dy) / (dx * dx + dy * dy), 0.0, 1.0);
  return std::hypot(a[0] + t * dx, a[1] + t * dy);
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  return s == "-0.000" ? "0.000" : s;
}

}  // namespace

std::vector<std::optional<Vec2>> develop_plane(const TriComplex& cx, VertexId v) {
  for (EdgeId e = 0; e < cx.num_edges(); ++e)
    if (cx.faces_of_edge(e).size() > 2)
      throw InputError("edge " + std::to_string(e) + " lies in " + std::to_string(cx.faces_of_edge(e).size()) +
                       " faces; only planar complexes can be drawn");
  std::vector<std::optional<Vec2>> pos(cx.num_vertices());
  pos[v] = Vec2{QField(0), QField(0)};
  if (cx.faces_at(v).empty()) return pos;
  FaceId f0 = cx.faces_at(v).front();
  DevelopedChart chart = develop(cx, Corridor{{f0}, {}});
  const auto& fv0 = cx.face(f0);
  Vec2 origin = chart.face_points[0][std::find(fv0.begin(), fv0.end(), v) - fv0.begin()];
  for (int i = 0; i < 3; ++i) pos[fv0[i]] = chart.face_points[0][i] - origin;
  std::vector<char> placed(cx.num_faces(), 0);
  placed[f0] = 1;
  std::deque<FaceId> queue{f0};
  while (!queue.empty()) {
    FaceId f = queue.front();
    queue.pop_front();
    for (EdgeId e : cx.face_edges(f)) {
      auto [p, q] = cx.edge(e);
      VertexId z = cx.opposite(f, e);
      for (FaceId g : cx.faces_of_edge(e)) {
        if (placed[g]) continue;
        placed[g] = 1;
        VertexId c = cx.opposite(g, e);
        Vec2 image = reflect(*pos[z], *pos[p], *pos[q]);
        if (pos[c] && !(*pos[c] == image))
          throw InputError("the complex does not develop into the plane (vertex " + std::to_string(c) + ")");
        pos[c] = image;
        queue.push_back(g);
      }
    }
  }
  return pos;
}

std::vector<std::array<double, 2>> circle_arcs_in_triangle(const std::array<std::array<double, 2>, 3>& tri, double r) {
  std::vector<double> angles;
  for (int i = 0; i < 3; ++i) {
    const Pt& a = tri[i];
    const Pt& b = tri[(i + 1) % 3];
    double dx = b[0] - a[0], dy = b[1] - a[1];
    double qa = dx * dx + dy * dy, qb = 2 * (a[0] * dx + a[1] * dy), qc = a[0] * a[0] + a[1] * a[1] - r * r;
    double disc = qb * qb - 4 * qa * qc;
    if (disc < 0) continue;
    double sq = std::sqrt(disc);
    for (double t : {(-qb - sq) / (2 * qa), (-qb + sq) / (2 * qa)})
      if (t >= 0 && t <= 1) angles.push_back(std::atan2(a[1] + t * dy, a[0] + t * dx));
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(), [](double x, double y) { return y - x < 1e-12; }), angles.end());
  std::vector<std::array<double, 2>> arcs;
  const double two_pi = 2 * std::acos(-1.0);
  for (size_t i = 0; i < angles.size(); ++i) {
    double from = angles[i];
    double to = i + 1 < angles.size() ? angles[i + 1] : angles[0] + two_pi;
    if (to - from < 1e-12) continue;
    double mid = (from + to) / 2;
    if (inside(tri, {r * std::cos(mid), r * std::sin(mid)})) arcs.push_back({from, to});
  }
  return arcs;
}

Rendering render_sphere(Balls& balls, VertexId v, const RadicalSum& r, const RenderOptions& opt) {
  const TriComplex& cx = balls.complex();
  BallView view = balls.ball_view(v, r);
  auto exact = develop_plane(cx, v);
  std::vector<std::optional<Pt>> pos(cx.num_vertices());
  for (VertexId w = 0; w < cx.num_vertices(); ++w)
    if (exact[w]) pos[w] = Pt{exact[w]->x.to_double(), exact[w]->y.to_double()};
  const double R = r.approx();
  SimplicialSet ball = full_subcomplex(cx, view.vertices());

  std::vector<FaceId> drawn;
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (FaceId f = 0; f < cx.num_faces(); ++f) {
    const auto& fv = cx.face(f);
    if (!pos[fv[0]] || !pos[fv[1]] || !pos[fv[2]]) continue;
    std::array<Pt, 3> t{*pos[fv[0]], *pos[fv[1]], *pos[fv[2]]};
    double d = inside(t, {0, 0}) ? 0 : std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) d = std::min(d, segment_distance(t[i], t[(i + 1) % 3]));
    if (d > R + 1) continue;
    drawn.push_back(f);
    for (const Pt& p : t) {
      lo_x = std::min(lo_x, p[0]), hi_x = std::max(hi_x, p[0]);
      lo_y = std::min(lo_y, p[1]), hi_y = std::max(hi_y, p[1]);
    }
  }
  const double s = opt.scale, pad = opt.padding;
  const double width = (hi_x - lo_x) * s + 2 * pad, height = (hi_y - lo_y) * s + 2 * pad + 24;
  auto X = [&](double x) { return num((x - lo_x) * s + pad); };
  auto Y = [&](double y) { return num((hi_y - y) * s + pad); };

  Rendering out;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n"
      << "<title>level sphere of radius " << r.to_string() << " about vertex " << v << "</title>\n"
      << "<style>.face{fill:#ffffff;stroke:#7f8c8d;stroke-width:1}.simplicial{fill:#d6eaf8}"
         ".arc{fill:none;stroke:#c0392b;stroke-width:2}.vertex{stroke:#2c3e50;stroke-width:1}"
         ".inside{fill:#2c3e50}.on{fill:#c0392b}.outside{fill:#ffffff}.center{fill:#f39c12}"
         "text{font-family:sans-serif;font-size:14px}</style>\n";
  svg << "<g id=\"faces\">\n";
  for (FaceId f : drawn) {
    const auto& fv = cx.face(f);
    svg << "<polygon class=\"face" << (ball.has_face(f) ? " simplicial" : "") << "\" data-face=\"" << f << "\"";
    if (!view.critical()) svg << " data-type=\"" << to_string(view.faces[f].type) << "\"";
    svg << " points=\"";
    for (int i = 0; i < 3; ++i) svg << (i ? " " : "") << X((*pos[fv[i]])[0]) << "," << Y((*pos[fv[i]])[1]);
    svg << "\"/>\n";
  }
  svg << "</g>\n<g id=\"arcs\">\n";
  for (FaceId f : drawn) {
    const auto& fv = cx.face(f);
    auto arcs = circle_arcs_in_triangle({*pos[fv[0]], *pos[fv[1]], *pos[fv[2]]}, R);
    out.faces.push_back({f, static_cast<int>(arcs.size())});
    for (const auto& a : arcs) {
      // The y axis points down in SVG, so counterclockwise arcs have sweep flag 0.
      svg << "<path class=\"arc\" data-face=\"" << f << "\" d=\"M " << X(R * std::cos(a[0])) << " "
          << Y(R * std::sin(a[0])) << " A " << num(R * s) << " " << num(R * s) << " 0 "
          << (a[1] - a[0] > std::acos(-1.0) ? 1 : 0) << " 0 " << X(R * std::cos(a[1])) << " " << Y(R * std::sin(a[1]))
          << "\"/>\n";
    }
  }
  svg << "</g>\n<g id=\"vertices\">\n";
  for (VertexId w = 0; w < cx.num_vertices(); ++w) {
    if (!pos[w]) continue;
    bool used = false;
    for (FaceId f : drawn) {
      const auto& fv = cx.face(f);
      used = used || std::find(fv.begin(), fv.end(), w) != fv.end();
    }
    if (!used) continue;
    const char* side = view.side[w] < 0 ? "inside" : view.side[w] == 0 ? "on" : "outside";
    svg << "<circle class=\"vertex " << (w == v ? "center" : side) << "\" data-vertex=\"" << w << "\" cx=\""
        << X((*pos[w])[0]) << "\" cy=\"" << Y((*pos[w])[1]) << "\" r=\"3\"/>\n";
  }
  svg << "</g>\n<text x=\"" << num(pad) << "\" y=\"" << num(height - 8) << "\">r = " << to_decimal(r) << " ("
      << r.to_string() << ")" << (view.critical() ? ", critical" : "") << "</text>\n</svg>\n";
  out.svg = svg.str();
  return out;
}

}  // namespace cat0
