#pragma once

// Disk-model scenes and their SVG rendering. Output is byte-deterministic:
// coordinates are printed with 9 significant digits and primitives are
// emitted in insertion order.

#include <string>
#include <variant>
#include <vector>

#include "hyperbot/core.hpp"
#include "hyperbot/group.hpp"
#include "hyperbot/tiling.hpp"

namespace hyperbot {

struct Style {
  std::string stroke = "#1f3b73";
  std::string fill = "none";
  double width = 1;
  double radius = 2;  // point marker radius in pixels
};

// All coordinates are disk coordinates.
struct ScenePoint {
  Complex at;
  Style style;
};
struct SceneSegment {
  Complex from, to;
  Style style;
};
struct ScenePolygon {
  std::vector<Complex> vertices;
  Style style;
};
struct SceneLabel {
  Complex at;
  std::string text;
  Style style;
};

using Primitive = std::variant<ScenePoint, SceneSegment, ScenePolygon, SceneLabel>;

struct Scene {
  std::string title;
  std::vector<Primitive> items;

  void point(Complex at, Style s = {}) { items.emplace_back(ScenePoint{at, std::move(s)}); }
  void segment(Complex a, Complex b, Style s = {}) {
    items.emplace_back(SceneSegment{a, b, std::move(s)});
  }
  void polygon(std::vector<Complex> v, Style s = {}) {
    items.emplace_back(ScenePolygon{std::move(v), std::move(s)});
  }
  void label(Complex at, std::string text, Style s = {}) {
    items.emplace_back(SceneLabel{at, std::move(text), std::move(s)});
  }
};

// Circle (or diameter) carrying the geodesic segment from `from` to `to`.
struct Arc {
  Complex from, to;
  bool chord = false;
  Complex center;       // unset for a chord
  double radius = 0;    // sqrt(|center|^2 - 1)
  double start_angle = 0, end_angle = 0;  // polar angles of from / to about center
  double length = 0;    // hyperbolic length
};

// Throws std::invalid_argument when the points coincide or leave the disk.
Arc geodesic_arc(Complex from, Complex to);

// Hyperbolic distance in the disk.
double disk_distance(Complex w1, Complex w2);

// Throws std::invalid_argument for width < 64 and std::out_of_range naming
// the primitive index for a point outside the open disk.
std::string render_svg(const Scene& scene, int width_px = 800);

// Arcs of every segment and polygon side in emission order.
std::vector<Arc> scene_arcs(const Scene& scene);

Scene tiling_scene(const Tiling& tiling);
Scene tree_scene(const TreeEmbedding& tree);
Scene orbit_scene(const OrbitReport& orbit);
// Images of [p, A p] under (A R)^j for j < iterations.
Scene iteration_scene(double r, int iterations);
// The closed path p, (A R) p, (A R)^2 p, ... until it returns, at most max_sides.
Scene polygon_path_scene(double r, int max_sides);

// Top-down orthographic projection of the sphere construction over the
// hexagonal tiling (centers at distance 2, radius sqrt 2), `rings` rings out.
std::string render_hexagon_projection(int rings = 2, int width_px = 800);

}  // namespace hyperbot
