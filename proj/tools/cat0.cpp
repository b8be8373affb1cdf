// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 input error, 3 precision budget exhausted.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cat0/complex_io.hpp"
#include "cat0/expansion.hpp"
#include "cat0/generators.hpp"
#include "cat0/render.hpp"

using namespace cat0;

namespace {

constexpr int kOk = 0, kFailed = 1, kInput = 2, kUndecided = 3;

struct Options {
  std::vector<int> dc;
  int comb_radius = 3;
  std::vector<std::string> orders;
  std::string file, cert, out, render_path, radius;
  VertexId base = 0;
  std::optional<std::uint64_t> seed;
  double scale = 60;
};

RadicalSum radius_of(const Options& o) {
  try {
    RadicalSum r = parse_radical(o.radius);
    if (rs_sign(r) < 0) throw InputError("radius must be non-negative");
    return r;
  } catch (const std::invalid_argument& e) {
    throw InputError("bad radius '" + o.radius + "': " + e.what());
  }
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) std::cout << text;
  else write_text_file(o.out, text);
}

std::string show(const RadicalSum& r) { return to_decimal(r) + "  " + r.to_string(); }

int cmd_generate(const Options& o) {
  if (o.dc.size() != 3) throw InputError("--dc needs three integers");
  DiskCondition dc{{o.dc[0], o.dc[1], o.dc[2]}};
  TriComplex cx = [&] {
    if (o.orders.empty()) return gen_seifert(dc, o.comb_radius);
    RegularSpec spec{dc, {}, {}};
    for (const auto& t : o.orders) {
      auto [key, k] = parse_edge_order(t);
      spec.edge_orders[key] = k;
    }
    return gen_regular(spec, o.comb_radius);
  }();
  emit(o, store_complex(cx));
  return kOk;
}

int cmd_validate(const Options& o) {
  TriComplex cx = read_complex_file(o.file);
  const DiskCondition& dc = cx.disk_condition();
  DiskVerdict dv = validate_disk_condition(dc);
  std::cout << "disk condition " << dc.to_string() << ": sum 1/n = " << rational_to_string(dv.reciprocal_sum)
            << (dv.status == DiskStatus::Base ? ", base" : dv.accepted ? ", accepted, not a base condition" : ", rejected")
            << "\n";
  std::cout << "vertices " << cx.num_vertices() << ", edges " << cx.num_edges() << ", faces " << cx.num_faces()
            << ", boundary margin " << cx.boundary_margin() << "\n";
  Cat0Report rep = certify_cat0(cx);
  std::map<int, int> girths;  // girth in pi/12 units -> vertex count
  for (VertexId v = 0; v < cx.num_vertices(); ++v) {
    if (!cx.is_interior(v)) continue;
    LinkCheck lc = check_link_condition(cx, v);
    ++girths[lc.girth_units.value_or(-1)];
  }
  std::cout << "interior vertices " << rep.interior_vertices << ", link girths:";
  for (auto [units, n] : girths) {
    if (units < 0) std::cout << " acyclic x" << n;
    else std::cout << " " << units << "/12 pi x" << n;
  }
  std::cout << "\nlink condition: " << (rep.failing.empty() ? "pass" : "fail at " + std::to_string(rep.failing.size()) + " vertices");
  if (!rep.failing.empty()) std::cout << " (first " << rep.failing.front() << ")";
  const char* conn = rep.connectivity == Connectivity::Collapsible    ? "collapsible"
                     : rep.connectivity == Connectivity::HomologyOnly ? "Euler characteristic 1, no homology"
                                                                      : "not simply connected";
  std::cout << "\nsimple connectivity: " << conn << "\n";
  Geodesics g(cx);
  const auto& safe = g.safe_radius();
  std::cout << "safe radius: " << (safe ? show(*safe) : std::string("unbounded")) << "\n";
  std::cout << "CAT(0): " << (rep.certified ? "certified" : "not certified") << "\n";
  return rep.certified ? kOk : kFailed;
}

int cmd_criticals(const Options& o) {
  TriComplex cx = read_complex_file(o.file);
  Geodesics g(cx);
  Balls balls(g);
  for (const auto& r : balls.critical_radii(o.base, radius_of(o))) std::cout << show(r) << "\n";
  return kOk;
}

int cmd_ball(const Options& o) {
  TriComplex cx = read_complex_file(o.file);
  Geodesics g(cx);
  Balls balls(g);
  RadicalSum r = radius_of(o);
  BallView view = balls.ball_view(o.base, r);
  VertexPartition p = balls.vertices_within(o.base, r);
  SimplicialSet s = balls.simplicial_ball(o.base, r);
  std::cout << "radius " << show(r) << (view.critical() ? " (critical)" : " (regular)") << "\n";
  std::cout << "vertices inside " << p.inside.size() << ", on the sphere " << p.on.size() << "\n";
  std::cout << "simplicial ball: " << s.vertices.size() << " vertices, " << s.edges.size() << " edges, " << s.faces.size()
            << " faces, hash " << set_hash(s) << "\n";
  if (!view.critical()) {
    std::map<std::string, int> types;
    for (const auto& f : view.faces) ++types[to_string(f.type)];
    std::cout << "faces:";
    for (auto [t, n] : types) std::cout << " " << t << " " << n;
    std::cout << "\n";
  }
  return kOk;
}

int cmd_audit(const Options& o) {
  TriComplex cx = read_complex_file(o.file);
  Geodesics g(cx);
  Balls balls(g);
  RadicalSum r = radius_of(o);
  if (balls.vertices_within(o.base, r).critical()) {
    Expansion ex(g);
    BoundaryAudit a = ex.audit_boundary_lemmas(o.base, r);
    std::cout << "boundary audit at " << show(r) << ": " << a.boundary_vertices << " boundary vertices, "
              << a.boundary_edges << " boundary edges, " << a.geodesics_checked << " geodesics\n";
    for (const auto& v : a.violations) std::cout << v.kind << ": " << v.detail << "\n";
    std::cout << (a.ok() ? "no violations" : std::to_string(a.violations.size()) + " violations") << "\n";
    return a.ok() ? kOk : kFailed;
  }
  SphereAudit a = balls.audit_sphere_lemmas(o.base, r);
  std::cout << "sphere audit at " << show(r) << ": " << a.faces_meeting << " faces meet the sphere, "
            << a.edges_checked << " edges checked\n";
  for (const auto& v : a.violations) std::cout << v.kind << ": " << v.detail << "\n";
  std::cout << (a.ok() ? "no violations" : std::to_string(a.violations.size()) + " violations") << "\n";
  return a.ok() ? kOk : kFailed;
}

int cmd_expand(const Options& o) {
  TriComplex cx = read_complex_file(o.file);
  Geodesics g(cx);
  Expansion ex(g);
  try {
    ExpansionCertificate cert = ex.expand_to(o.base, radius_of(o), o.seed);
    emit(o, certificate_to_json(cert));
    std::size_t steps = 0;
    for (const auto& s : cert.stages) steps += s.steps.size();
    std::cerr << cert.stages.size() << " stages, " << steps << " cone steps\n";
  } catch (const InvalidStep& e) {
    std::cerr << "invalid step: " << e.what() << "; gamma has " << e.step.gamma.nodes.size() << " nodes and "
              << e.step.gamma.edges.size() << " edges, diameter " << e.step.evidence.diameter_units << "\n";
    return kFailed;
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  TriComplex cx = read_complex_file(o.file);
  ExpansionCertificate cert = certificate_from_json(read_text_file(o.cert));
  VerifyResult r = verify_certificate(cx, cert);
  if (r.valid) {
    std::cout << "valid\n";
    return kOk;
  }
  std::cout << "invalid";
  if (r.stage >= 0) std::cout << ": stage " << r.stage;
  if (r.step >= 0) std::cout << " step " << r.step;
  std::cout << ": " << r.reason << "\n";
  return kFailed;
}

int cmd_render(const Options& o) {
  TriComplex cx = read_complex_file(o.file);
  Geodesics g(cx);
  Balls balls(g);
  RenderOptions ro;
  ro.scale = o.scale;
  Rendering out = render_sphere(balls, o.base, radius_of(o), ro);
  if (o.render_path.empty()) std::cout << out.svg;
  else write_text_file(o.render_path, out.svg);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangle complexes: geodesics, metric balls and ball expansion certificates"};
  app.require_subcommand(1);
  Options o;
  int (*handler)(const Options&) = nullptr;

  auto add_file = [&](CLI::App* c) { c->add_option("file", o.file, "complex file")->required()->check(CLI::ExistingFile); };
  auto add_base = [&](CLI::App* c) { c->add_option("--base-vertex", o.base, "centre vertex id")->default_val(0); };
  auto add_radius = [&](CLI::App* c) {
    c->add_option("--radius", o.radius, "radius, e.g. 2, 1.5 or sqrt(3)")->required();
  };

  auto* gen = app.add_subcommand("generate", "write a complex file");
  gen->add_option("--dc", o.dc, "disk condition N1,N2,N3")->required()->delimiter(',')->expected(3);
  gen->add_option("--radius", o.comb_radius, "combinatorial radius")->default_val(3);
  gen->add_option("--orders", o.orders, "edge orders I,J:K (branching complex)");
  gen->add_option("--out", o.out, "output path (default stdout)");
  gen->callback([&] { handler = cmd_generate; });

  auto* val = app.add_subcommand("validate", "disk condition, link condition and simple connectivity");
  add_file(val);
  val->callback([&] { handler = cmd_validate; });

  auto* crit = app.add_subcommand("criticals", "critical radii up to R");
  add_file(crit);
  add_base(crit);
  add_radius(crit);
  crit->callback([&] { handler = cmd_criticals; });

  auto* ball = app.add_subcommand("ball", "metric and simplicial ball report");
  add_file(ball);
  add_base(ball);
  add_radius(ball);
  ball->callback([&] { handler = cmd_ball; });

  auto* audit = app.add_subcommand("audit", "sphere audit (regular radius) or boundary audit (critical radius)");
  add_file(audit);
  add_base(audit);
  add_radius(audit);
  audit->callback([&] { handler = cmd_audit; });

  auto* exp = app.add_subcommand("expand", "expansion certificate up to R");
  add_file(exp);
  add_base(exp);
  add_radius(exp);
  exp->add_option("--out", o.out, "certificate path (default stdout)");
  exp->add_option("--seed", o.seed, "shuffle the boundary order with this seed");
  exp->callback([&] { handler = cmd_expand; });

  auto* ver = app.add_subcommand("verify", "check a certificate against a complex");
  add_file(ver);
  ver->add_option("certificate", o.cert, "certificate file")->required()->check(CLI::ExistingFile);
  ver->callback([&] { handler = cmd_verify; });

  auto* ren = app.add_subcommand("render", "SVG of the level sphere in a planar complex");
  add_file(ren);
  add_base(ren);
  add_radius(ren);
  ren->add_option("--render", o.render_path, "SVG path (default stdout)");
  ren->add_option("--scale", o.scale, "pixels per unit")->default_val(60);
  ren->callback([&] { handler = cmd_render; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }
  try {
    return handler(o);
  } catch (const Undecided& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::logic_error& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}
