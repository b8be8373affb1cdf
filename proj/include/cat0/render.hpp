#pragma once

// SVG pictures of a level sphere in a planar complex.
//
// The complex is developed into the plane with the centre at the origin, the
// faces near the ball are drawn, and the sphere appears face by face as
// circular arcs. Faces of the simplicial ball are shaded. Output is for
// inspection only.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cat0/balls.hpp"

namespace cat0 {

struct RenderOptions {
  double scale = 60;    // pixels per unit length
  double padding = 20;  // pixels around the drawing
};

// Vertex images of a development of the whole complex with v at the origin.
// Throws InputError when an edge lies in more than two faces or the
// development is not single valued.
std::vector<std::optional<Vec2>> develop_plane(const TriComplex& cx, VertexId v);

// Angular intervals [from, to] (counterclockwise, radians) of the circle of
// radius r about the origin that lie inside the triangle.
std::vector<std::array<double, 2>> circle_arcs_in_triangle(const std::array<std::array<double, 2>, 3>& tri, double r);

struct RenderedFace {
  FaceId face;
  int arcs;  // number of arcs drawn in the face
};

struct Rendering {
  std::string svg;
  std::vector<RenderedFace> faces;
};

// Same errors as Balls::ball_view and develop_plane.
Rendering render_sphere(Balls& balls, VertexId v, const RadicalSum& r, const RenderOptions& opt = {});

}  // namespace cat0
