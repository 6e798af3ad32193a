#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hyperbot/classifier.hpp"
#include "hyperbot/tiling.hpp"

using namespace hyperbot;

namespace {

std::array<double, 3> sorted_sides(const Triangle& t) {
  std::array<double, 3> s = t.sides;
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST_CASE("fundamental triangle") {
  for (int n = 5; n <= 12; ++n) {
    const Triangle t = fundamental_triangle(n);
    CHECK(std::abs(t.vertices[0] - kBasePoint) < 1e-15);
    CHECK(t.angles[0] == doctest::Approx(kPi / 4).epsilon(1e-10));
    CHECK(t.angles[1] == doctest::Approx(kPi / 4).epsilon(1e-10));
    CHECK(t.angles[2] == doctest::Approx(2 * kPi / n).epsilon(1e-10));
    CHECK(std::abs(t.sides[2] - r_n(n)) < 1e-10);
    CHECK(std::abs(t.sides[2] - second_law_side(kPi / 4, kPi / 4, 2 * kPi / n)) < 1e-10);
    // Both laws of cosines on every corner.
    for (int k = 0; k < 3; ++k) {
      const double a = t.sides[(k + 1) % 3], b = t.sides[(k + 2) % 3];
      CHECK(std::abs(law_of_cosines_side(a, b, t.angles[k]) - t.sides[k]) < 1e-10);
      CHECK(std::abs(second_law_side(t.angles[(k + 1) % 3], t.angles[(k + 2) % 3], t.angles[k]) -
                     t.sides[k]) < 1e-10);
    }
    CHECK(t.angles[0] + t.angles[1] + t.angles[2] < kPi);
  }
  CHECK(std::abs(fundamental_triangle(6).sides[2] - std::acosh(2.0)) < 1e-10);
  CHECK_THROWS_WITH_AS(fundamental_triangle(4), "no such hyperbolic triangle", std::domain_error);
}

TEST_CASE("gluing maps") {
  for (int n = 5; n <= 9; ++n) {
    const GluingMaps g = gluing_maps(n);
    const Generators gen = generators(r_n(n));
    CHECK(is_identity(g.sigma1 * g.sigma1));
    const auto c1 = classify_isometry(g.sigma1);
    CHECK(c1.kind == IsometryClass::Kind::Elliptic);
    CHECK(c1.angle == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(std::abs(g.sigma1.apply(g.m) - g.m) < 1e-12);
    CHECK(std::abs(dist(kBasePoint, g.m) - r_n(n) / 2) < 1e-10);
    CHECK(std::abs(dist(g.m, gen.A.apply(kBasePoint)) - r_n(n) / 2) < 1e-10);

    const auto c2 = classify_isometry(g.sigma2);
    CHECK(c2.kind == IsometryClass::Kind::Elliptic);
    CHECK(c2.angle == doctest::Approx(2 * kPi / n).epsilon(1e-10));
    // sigma2 fixes o and swaps the sides meeting there.
    const Triangle t = fundamental_triangle(n);
    CHECK(std::abs(g.sigma2.apply(t.vertices[2]) - t.vertices[2]) < 1e-12);
    // sigma1^-1 sigma2 = R^-1 recovers the generators.
    CHECK(approx_equal(g.sigma1.inverse() * g.sigma2, gen.R.inverse(), 1e-12));
    CHECK(approx_equal(g.sigma2 * gen.R.inverse(), gen.A, 1e-12));
  }
}

TEST_CASE("tiling at n = 5, depth 4") {
  const Tiling t = generate_tiling(5, 4);
  CHECK_FALSE(t.truncated);
  CHECK(t.triangles.size() == t.elements.size());
  CHECK(is_identity(t.elements[0]));
  const auto base = sorted_sides(fundamental_triangle(5));
  for (const Triangle& tri : t.triangles) {
    const auto s = sorted_sides(tri);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(s[k] - base[k]) < 1e-9);
  }
  const auto overlaps = tiling_overlaps(t, 1000);
  CHECK(overlaps.overlapping_pairs == 0);
  CHECK(overlaps.pairs_tested > 0);
}

TEST_CASE("tile census around vertex images") {
  for (int n : {5, 6, 7}) {
    const Tiling t = generate_tiling(n, 4);
    const StarCensus o = o_star_census(t);
    CHECK(o.complete_stars > 0);
    CHECK(o.min_count == n);
    CHECK(o.max_count == n);
    const StarCensus p = p_star_census(t);
    CHECK(p.complete_stars > 0);
    CHECK(p.min_count == 8);
    CHECK(p.max_count == 8);
  }
}

TEST_CASE("overlap detection is not vacuous") {
  // A tiling with a duplicated, slightly rotated tile must be caught.
  Tiling t = generate_tiling(5, 2);
  t.triangles.push_back(transform(Isometry2::rotation(0.05), t.triangles[0]));
  CHECK(tiling_overlaps(t, 1000).overlapping_pairs >= 1);
}

TEST_CASE("tiling guards and determinism") {
  CHECK_THROWS_AS(generate_tiling(5, 9), std::invalid_argument);
  CHECK_THROWS_AS(generate_tiling(4, 2), std::domain_error);
  const Tiling a = generate_tiling(6, 3), b = generate_tiling(6, 3);
  REQUIRE(a.elements.size() == b.elements.size());
  for (std::size_t k = 0; k < a.elements.size(); ++k) CHECK(a.elements[k].entries() == b.elements[k].entries());
  const Tiling small = generate_tiling(5, 8, 50);
  CHECK(small.truncated);
  CHECK(small.triangles.size() <= 50);
}

TEST_CASE("tiling overlaps serial and parallel agree") {
  const Tiling t = generate_tiling(7, 4);
  const auto a = tiling_overlaps(t, 200, 5, Execution::Serial);
  const auto b = tiling_overlaps(t, 200, 5, Execution::Parallel);
  CHECK(a.pairs_tested == b.pairs_tested);
  CHECK(a.overlapping_pairs == b.overlapping_pairs);
}

TEST_CASE("tree at r_inf + 0.05, depth 5") {
  const double r = kRInf + 0.05;
  const TreeEmbedding t = tree_embedding(r, 5);
  CHECK(t.vertices.size() == 1 + 4 * (243 - 1) / 2);
  CHECK(t.max_edge_error < 1e-9);
  CHECK(t.interior_degrees_ok);
  CHECK(t.crossings == 0);
  for (Complex s : t.star) CHECK(std::abs(dist(kBasePoint, s) - r / 2) < 1e-10);
  for (std::size_t k = 1; k < t.vertices.size(); ++k) {
    const auto par = static_cast<std::size_t>(t.parent[k]);
    CHECK(std::abs(dist(t.vertices[k], t.vertices[par]) - r) < 1e-9);
  }
}

TEST_CASE("tree vertex counts follow the ball formula") {
  for (int depth = 0; depth <= 6; ++depth) {
    std::size_t pow3 = 1;
    for (int k = 0; k < depth; ++k) pow3 *= 3;
    CHECK(tree_embedding(3.0, depth).vertices.size() == 1 + 4 * (pow3 - 1) / 2);
  }
}

TEST_CASE("tree at r_inf has no transversal crossings") {
  const TreeEmbedding t = tree_embedding(kRInf, 4);
  CHECK(t.crossings == 0);
  CHECK(t.interior_degrees_ok);
  CHECK_THROWS_AS(tree_embedding(1.5, 3), std::domain_error);
  CHECK_THROWS_AS(tree_embedding(2.0, 9), std::invalid_argument);
}
