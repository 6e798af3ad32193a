#include "hyperbot/render.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hyperbot {

double disk_distance(Complex w1, Complex w2) {
  return 2 * std::atanh(std::abs(w1 - w2) / std::abs(1.0 - std::conj(w1) * w2));
}

Arc geodesic_arc(Complex from, Complex to) {
  if (!(std::abs(from) < 1) || !(std::abs(to) < 1)) {
    throw std::invalid_argument("geodesic_arc: point outside the disk");
  }
  if (from == to) throw std::invalid_argument("geodesic_arc: coincident points");
  Arc arc;
  arc.from = from;
  arc.to = to;
  arc.length = disk_distance(from, to);
  const double cross = from.real() * to.imag() - from.imag() * to.real();
  if (std::abs(cross) < 1e-12) {
    arc.chord = true;
    return arc;
  }
  // 2 <c, w> = 1 + |w|^2 for both endpoints.
  const double u = (1 + std::norm(from)) / 2;
  const double v = (1 + std::norm(to)) / 2;
  arc.center = {(u * to.imag() - v * from.imag()) / cross, (v * from.real() - u * to.real()) / cross};
  arc.radius = std::sqrt(std::norm(arc.center) - 1);
  arc.start_angle = std::arg(from - arc.center);
  arc.end_angle = std::arg(to - arc.center);
  return arc;
}

namespace {

std::string num(double x, const char* format = "%.9g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, format, x);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

std::string exact(double x) { return num(x, "%.17g"); }

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Viewport {
  double half;
  double scale;
  double x(Complex w) const { return half + scale * w.real(); }
  double y(Complex w) const { return half - scale * w.imag(); }
  std::string xy(Complex w) const { return num(x(w)) + " " + num(y(w)); }
};

std::string style_attrs(const Style& s) {
  return "fill=\"" + escape(s.fill) + "\" stroke=\"" + escape(s.stroke) + "\" stroke-width=\"" +
         num(s.width) + "\"";
}

std::string arc_comment(std::size_t index, const Arc& a) {
  std::string s = "<!-- arc " + std::to_string(index);
  if (a.chord) {
    s += " chord";
  } else {
    s += " center=" + exact(a.center.real()) + "," + exact(a.center.imag()) + " radius=" + exact(a.radius);
  }
  return s + " length=" + exact(a.length) + " -->\n";
}

// Path command continuing from a.from to a.to.
std::string arc_command(const Viewport& vp, const Arc& a) {
  if (a.chord) return "L " + vp.xy(a.to);
  const double px = vp.x(a.from) - vp.x(a.center), py = vp.y(a.from) - vp.y(a.center);
  const double qx = vp.x(a.to) - vp.x(a.center), qy = vp.y(a.to) - vp.y(a.center);
  const int sweep = px * qy - py * qx > 0 ? 1 : 0;
  const std::string rho = num(vp.scale * a.radius);
  return "A " + rho + " " + rho + " 0 0 " + std::to_string(sweep) + " " + vp.xy(a.to);
}

void check_inside(Complex w, std::size_t index) {
  if (!(std::abs(w) < 1)) {
    throw std::out_of_range("render_svg: primitive " + std::to_string(index) + " leaves the disk");
  }
}

}  // namespace

std::vector<Arc> scene_arcs(const Scene& scene) {
  std::vector<Arc> out;
  for (const Primitive& item : scene.items) {
    if (const auto* s = std::get_if<SceneSegment>(&item)) {
      out.push_back(geodesic_arc(s->from, s->to));
    } else if (const auto* p = std::get_if<ScenePolygon>(&item)) {
      for (std::size_t k = 0; k < p->vertices.size(); ++k) {
        out.push_back(geodesic_arc(p->vertices[k], p->vertices[(k + 1) % p->vertices.size()]));
      }
    }
  }
  return out;
}

std::string render_svg(const Scene& scene, int width_px) {
  if (width_px < 64) throw std::invalid_argument("render_svg: width must be at least 64");
  constexpr double kMargin = 8;
  const Viewport vp{width_px / 2.0, width_px / 2.0 - kMargin};
  const std::string w = std::to_string(width_px);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" + w +
         "\" viewBox=\"0 0 " + w + " " + w + "\">\n";
  if (!scene.title.empty()) out += "<title>" + escape(scene.title) + "</title>\n";
  out += "<circle cx=\"" + num(vp.half) + "\" cy=\"" + num(vp.half) + "\" r=\"" + num(vp.scale) +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  std::size_t arc_index = 0;
  for (std::size_t i = 0; i < scene.items.size(); ++i) {
    const Primitive& item = scene.items[i];
    if (const auto* p = std::get_if<ScenePoint>(&item)) {
      check_inside(p->at, i);
      out += "<circle cx=\"" + num(vp.x(p->at)) + "\" cy=\"" + num(vp.y(p->at)) + "\" r=\"" +
             num(p->style.radius) + "\" fill=\"" + escape(p->style.stroke) + "\"/>\n";
    } else if (const auto* s = std::get_if<SceneSegment>(&item)) {
      check_inside(s->from, i);
      check_inside(s->to, i);
      const Arc a = geodesic_arc(s->from, s->to);
      out += arc_comment(arc_index++, a);
      Style st = s->style;
      st.fill = "none";
      out += "<path d=\"M " + vp.xy(a.from) + " " + arc_command(vp, a) + "\" " + style_attrs(st) + "/>\n";
    } else if (const auto* poly = std::get_if<ScenePolygon>(&item)) {
      if (poly->vertices.size() < 2) continue;
      for (Complex v : poly->vertices) check_inside(v, i);
      std::string d = "M " + vp.xy(poly->vertices.front());
      for (std::size_t k = 0; k < poly->vertices.size(); ++k) {
        const Arc a = geodesic_arc(poly->vertices[k], poly->vertices[(k + 1) % poly->vertices.size()]);
        out += arc_comment(arc_index++, a);
        d += " " + arc_command(vp, a);
      }
      out += "<path d=\"" + d + " Z\" " + style_attrs(poly->style) + "/>\n";
    } else if (const auto* l = std::get_if<SceneLabel>(&item)) {
      check_inside(l->at, i);
      out += "<text x=\"" + num(vp.x(l->at)) + "\" y=\"" + num(vp.y(l->at)) +
             "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + escape(l->style.stroke) + "\">" +
             escape(l->text) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

Scene tiling_scene(const Tiling& tiling) {
  Scene scene;
  scene.title = "tiling n=" + std::to_string(tiling.n) + " depth=" + std::to_string(tiling.depth);
  for (std::size_t k = 0; k < tiling.triangles.size(); ++k) {
    std::vector<Complex> v;
    for (Complex z : tiling.triangles[k].vertices) v.push_back(half_plane_to_disk(z));
    Style s;
    s.width = 0.5;
    if (k == 0) s.fill = "#f2c14e";
    scene.polygon(std::move(v), s);
  }
  return scene;
}

Scene tree_scene(const TreeEmbedding& tree) {
  Scene scene;
  scene.title = "tree r=" + num(tree.r) + " depth=" + std::to_string(tree.depth);
  Style edge;
  edge.width = 0.75;
  for (std::size_t k = 1; k < tree.vertices.size(); ++k) {
    scene.segment(half_plane_to_disk(tree.vertices[static_cast<std::size_t>(tree.parent[k])]),
                  half_plane_to_disk(tree.vertices[k]), edge);
  }
  Style star;
  star.stroke = "#c0392b";
  star.width = 2;
  for (Complex s : tree.star) scene.segment(half_plane_to_disk(kBasePoint), half_plane_to_disk(s), star);
  Style vertex;
  vertex.radius = 1.5;
  for (Complex v : tree.vertices) scene.point(half_plane_to_disk(v), vertex);
  return scene;
}

Scene orbit_scene(const OrbitReport& orbit) {
  Scene scene;
  scene.title = "orbit r=" + num(orbit.r) + " depth=" + std::to_string(orbit.depth_reached);
  Style s;
  s.radius = 1;
  for (Complex z : orbit.points) {
    const Complex w = half_plane_to_disk(z);
    if (std::abs(w) < 1) scene.point(w, s);
  }
  return scene;
}

Scene iteration_scene(double r, int iterations) {
  const Generators g = generators(r);
  const Isometry2 step = g.A * g.R;
  Scene scene;
  scene.title = "iterations of A R on [p, A p], r=" + num(r) + ", count=" + std::to_string(iterations);
  Style s;
  s.width = 0.75;
  Isometry2 m;
  for (int j = 0; j < iterations; ++j) {
    scene.segment(half_plane_to_disk(m.apply(kBasePoint)), half_plane_to_disk((m * g.A).apply(kBasePoint)), s);
    m = m * step;
  }
  return scene;
}

Scene polygon_path_scene(double r, int max_sides) {
  const Generators g = generators(r);
  const Isometry2 step = g.A * g.R;
  std::vector<Complex> vertices;
  Isometry2 m;
  for (int j = 0; j < max_sides; ++j) {
    vertices.push_back(half_plane_to_disk(m.apply(kBasePoint)));
    m = m * step;
    if (is_identity(m)) break;
  }
  Scene scene;
  scene.title = "path of A R steps, r=" + num(r);
  Style s;
  s.width = 1.25;
  s.fill = "#8fb3de";
  scene.polygon(std::move(vertices), s);
  return scene;
}

std::string render_hexagon_projection(int rings, int width_px) {
  if (width_px < 64) throw std::invalid_argument("render_hexagon_projection: width must be at least 64");
  const double extent = 2.0 * rings + std::sqrt(2.0) + 0.5;
  const double half = width_px / 2.0;
  const double scale = (half - 8) / extent;
  auto sx = [&](double x) { return num(half + scale * x); };
  auto sy = [&](double y) { return num(half - scale * y); };
  const std::string w = std::to_string(width_px);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" + w +
         "\" viewBox=\"0 0 " + w + " " + w + "\">\n";
  out += "<title>top-down orthographic projection: spheres of radius sqrt 2 over a hexagonal tiling</title>\n";
  const Complex u(2, 0), v = std::polar(2.0, kPi / 3);
  const double circum = 2 / std::sqrt(3.0);
  for (int i = -rings; i <= rings; ++i) {
    for (int j = -rings; j <= rings; ++j) {
      if (std::abs(i) > rings || std::abs(j) > rings || std::abs(i + j) > rings) continue;
      const Complex c = static_cast<double>(i) * u + static_cast<double>(j) * v;
      std::string d;
      for (int k = 0; k < 6; ++k) {
        const Complex q = c + std::polar(circum, kPi / 6 + k * kPi / 3);
        d += (k == 0 ? "M " : " L ") + sx(q.real()) + " " + sy(q.imag());
      }
      out += "<path d=\"" + d + " Z\" fill=\"none\" stroke=\"#7f8c8d\" stroke-width=\"0.75\"/>\n";
      out += "<circle cx=\"" + sx(c.real()) + "\" cy=\"" + sy(c.imag()) + "\" r=\"" +
             num(scale * std::sqrt(2.0)) + "\" fill=\"none\" stroke=\"#1f3b73\" stroke-width=\"1\"/>\n";
    }
  }
  out += "<text x=\"12\" y=\"20\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\">projection</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace hyperbot
