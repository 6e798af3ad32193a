#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "hyperbot/classifier.hpp"
#include "hyperbot/render.hpp"

using namespace hyperbot;

namespace {

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(HYPERBOT_GOLDEN_DIR) + "/" + name, std::ios::binary);
  REQUIRE_MESSAGE(in, "missing golden file " << name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct ArcComment {
  bool chord = false;
  double cx = 0, cy = 0, radius = 0, length = 0;
};

std::vector<ArcComment> parse_arcs(const std::string& svg) {
  static const std::regex arc(R"(<!-- arc \d+ (?:center=([^,]+),(\S+) radius=(\S+)|chord) length=(\S+) -->)");
  std::vector<ArcComment> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), arc); it != std::sregex_iterator(); ++it) {
    ArcComment a;
    a.chord = !(*it)[1].matched;
    if (!a.chord) {
      a.cx = std::stod((*it)[1]);
      a.cy = std::stod((*it)[2]);
      a.radius = std::stod((*it)[3]);
    }
    a.length = std::stod((*it)[4]);
    out.push_back(a);
  }
  return out;
}

// Disk distance from the cross-ratio form.
double disk_dist_oracle(Complex a, Complex b) {
  return 2 * std::atanh(std::abs(a - b) / std::abs(1.0 - std::conj(a) * b));
}

}  // namespace

TEST_CASE("geodesic_arc examples") {
  const Arc d = geodesic_arc({0.3, 0}, {-0.3, 0});
  CHECK(d.chord);
  CHECK(std::abs(d.length - disk_dist_oracle({0.3, 0}, {-0.3, 0})) < 1e-12);

  const Arc a = geodesic_arc({0.3, 0}, {0, 0.3});
  CHECK_FALSE(a.chord);
  CHECK(std::abs(std::norm(a.center) - a.radius * a.radius - 1) < 1e-9);
  CHECK(std::abs(std::abs(Complex(0.3, 0) - a.center) - a.radius) < 1e-10);
  CHECK(std::abs(std::abs(Complex(0, 0.3) - a.center) - a.radius) < 1e-10);
  CHECK_THROWS_AS(geodesic_arc({0.1, 0.1}, {0.1, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(geodesic_arc({0.1, 0.1}, {1.1, 0}), std::invalid_argument);
}

TEST_CASE("geodesic arcs are orthogonal to the boundary and pass through their endpoints") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> rad(0, 0.97), ang(0, 2 * kPi);
  for (int k = 0; k < 500; ++k) {
    const Complex p = std::polar(rad(rng), ang(rng)), q = std::polar(rad(rng), ang(rng));
    const Arc a = geodesic_arc(p, q);
    CHECK(std::abs(a.length - disk_dist_oracle(p, q)) < 1e-9 * (1 + a.length));
    if (a.chord) continue;
    CHECK(std::abs(std::norm(a.center) - a.radius * a.radius - 1) < 1e-9 * std::norm(a.center));
    CHECK(std::abs(std::abs(p - a.center) - a.radius) < 1e-10 * a.radius);
    CHECK(std::abs(std::abs(q - a.center) - a.radius) < 1e-10 * a.radius);
    CHECK(std::abs(a.center + a.radius * std::polar(1.0, a.start_angle) - p) < 1e-9 * a.radius);
    CHECK(std::abs(a.center + a.radius * std::polar(1.0, a.end_angle) - q) < 1e-9 * a.radius);
  }
}

TEST_CASE("empty scene draws only the boundary") {
  const std::string svg = render_svg(Scene{});
  CHECK(svg.find("<circle cx=\"400\" cy=\"400\" r=\"392\"") != std::string::npos);
  CHECK(svg.find("<path") == std::string::npos);
  CHECK(svg.rfind("</svg>") != std::string::npos);
}

TEST_CASE("render_svg errors") {
  Scene s;
  s.point({0.1, 0.1});
  s.segment({0.2, 0}, {1.2, 0});
  CHECK_THROWS_WITH_AS(render_svg(s), doctest::Contains("primitive 1"), std::out_of_range);
  CHECK_THROWS_AS(render_svg(Scene{}, 63), std::invalid_argument);
  CHECK_NOTHROW(render_svg(Scene{}, 64));
}

TEST_CASE("golden tiling n = 5, depth 4") {
  const std::string svg = render_svg(tiling_scene(generate_tiling(5, 4)));
  CHECK(svg == render_svg(tiling_scene(generate_tiling(5, 4))));
  CHECK(svg == read_golden("fig_tiling_r5.svg"));
}

TEST_CASE("golden tiling n = 6, depth 3") {
  CHECK(render_svg(tiling_scene(generate_tiling(6, 3))) == read_golden("fig_tiling_n6.svg"));
}

TEST_CASE("golden tree at r_inf + 0.05, depth 5") {
  CHECK(render_svg(tree_scene(tree_embedding(kRInf + 0.05, 5))) == read_golden("fig_tree.svg"));
}

TEST_CASE("emitted arcs satisfy the orthogonality identity") {
  const std::string svg = render_svg(tiling_scene(generate_tiling(7, 4)));
  const auto arcs = parse_arcs(svg);
  REQUIRE(arcs.size() > 100);
  for (const auto& a : arcs) {
    if (a.chord) continue;
    const double c2 = a.cx * a.cx + a.cy * a.cy;
    CHECK(std::abs(c2 - a.radius * a.radius - 1) < 1e-9 * c2);
  }
}

TEST_CASE("segment lengths survive an isometry of the scene") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> rad(0, 0.8), ang(0, 2 * kPi);
  Scene s;
  for (int k = 0; k < 60; ++k) s.segment(std::polar(rad(rng), ang(rng)), std::polar(rad(rng), ang(rng)));
  // Disk automorphism z -> e^{i phi} (z - a) / (1 - conj(a) z).
  const Complex a{0.3, -0.2};
  const double phi = 0.7;
  auto move = [&](Complex z) { return std::polar(1.0, phi) * (z - a) / (1.0 - std::conj(a) * z); };
  Scene moved;
  for (const auto& item : s.items) {
    const auto& seg = std::get<SceneSegment>(item);
    moved.segment(move(seg.from), move(seg.to));
  }
  const auto before = parse_arcs(render_svg(s));
  const auto after = parse_arcs(render_svg(moved));
  REQUIRE(before.size() == after.size());
  for (std::size_t k = 0; k < before.size(); ++k) CHECK(std::abs(before[k].length - after[k].length) < 1e-9);
}

TEST_CASE("scene_arcs follows emission order") {
  Scene s;
  s.segment({0, 0}, {0.5, 0});
  s.polygon({{0, 0}, {0.2, 0.3}, {-0.1, 0.4}});
  s.point({0.1, 0.1});
  const auto arcs = scene_arcs(s);
  REQUIRE(arcs.size() == 4);
  CHECK(arcs[0].chord);
  CHECK(std::abs(arcs[1].from) < 1e-15);
  CHECK(std::abs(arcs[3].to) < 1e-15);
}

TEST_CASE("figure scenes render") {
  CHECK_NOTHROW(render_svg(orbit_scene(orbit_bfs(r_n(5), 5))));
  const Scene it = iteration_scene(r_of_t(2 * kPi), 50);
  CHECK(scene_arcs(it).size() == 50);
  const Scene poly = polygon_path_scene(r_n(5), 64);
  CHECK(scene_arcs(poly).size() == 5);
  for (const Arc& a : scene_arcs(poly)) CHECK(std::abs(a.length - r_n(5)) < 1e-9);
  // t = 9/2: the path closes after 9 sides.
  CHECK(scene_arcs(polygon_path_scene(r_of_t(4.5), 64)).size() == 9);
  const std::string hex = render_hexagon_projection();
  CHECK(hex.find("projection") != std::string::npos);
  CHECK(hex == render_hexagon_projection());
}
