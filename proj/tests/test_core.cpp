#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperbot/core.hpp"

using namespace hyperbot;

namespace {

// Half-plane distance straight from the cosh formula.
double dist_oracle(Complex z, Complex w) {
  return std::acosh(1 + std::norm(z - w) / (2 * z.imag() * w.imag()));
}

Isometry2 random_isometry(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a * d - b * c > 0.1) return Isometry2(a, b, c, d);
  }
}

Complex random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-3, 3), y(0.2, 3);
  return {x(rng), y(rng)};
}

const Isometry2 kR(1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0));

}  // namespace

TEST_CASE("construction normalizes determinant and sign") {
  const Isometry2 g(-2, -1, -1, -1);
  CHECK(g.matrix().det() == doctest::Approx(1).epsilon(1e-12));
  CHECK(g.a() > 0);
  CHECK_THROWS_AS(Isometry2(0, 1, 1, 0), std::invalid_argument);
  CHECK(approx_equal(Isometry2(1, 2, 0, 1), Isometry2(-1, -2, 0, -1)));
}

TEST_CASE("apply examples") {
  CHECK(std::abs(Isometry2{}.apply(kBasePoint) - kBasePoint) < 1e-15);
  const Isometry2 t(std::exp(0.5), 0, 0, std::exp(-0.5));
  CHECK(std::abs(t.apply(kBasePoint) - Complex(0, std::exp(1.0))) < 1e-14);
  CHECK(std::abs(kR.apply(kBasePoint) - kBasePoint) < 1e-15);
  const Point2 q = apply(t, Point2::disk({0.2, -0.1}));
  CHECK(q.model() == Model::Disk);
}

TEST_CASE("dist examples and oracle") {
  CHECK(dist(kBasePoint, kBasePoint) == 0);
  CHECK(dist(kBasePoint, Complex(0, std::exp(1.5))) == doctest::Approx(1.5).epsilon(1e-14));
  const Isometry2 a(std::exp(0.35), 0, 0, std::exp(-0.35));
  CHECK(std::abs(dist(kBasePoint, a.apply(kBasePoint)) - 0.7) < 1e-14);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const Complex z = random_point(rng), w = random_point(rng);
    CHECK(std::abs(dist(z, w) - dist_oracle(z, w)) < 1e-10 * (1 + dist_oracle(z, w)));
  }
}

TEST_CASE("dist is invariant under isometries") {
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const Isometry2 g = random_isometry(rng);
    const Complex z = random_point(rng), w = random_point(rng);
    worst = std::max(worst, std::abs(dist(g.apply(z), g.apply(w)) - dist(z, w)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("disk and half-plane round trip") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 500; ++k) {
    const Complex z = random_point(rng);
    CHECK(std::abs(disk_to_half_plane(half_plane_to_disk(z)) - z) < 1e-12 * (1 + std::abs(z)));
  }
  CHECK(std::abs(half_plane_to_disk(kBasePoint)) < 1e-16);
  CHECK_THROWS_AS(Point2::disk({1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Point2::half_plane({0, 0}), std::invalid_argument);
}

TEST_CASE("classify_isometry examples") {
  const auto hyp = classify_isometry(Isometry2(std::exp(1.0), 0, 0, std::exp(-1.0)));
  CHECK(hyp.kind == IsometryClass::Kind::Hyperbolic);
  CHECK(hyp.length == doctest::Approx(2).epsilon(1e-14));

  const auto ell = classify_isometry(kR);
  CHECK(ell.kind == IsometryClass::Kind::Elliptic);
  CHECK(ell.angle == doctest::Approx(kPi / 2).epsilon(1e-14));

  const Isometry2 a(std::exp(kRInf / 2), 0, 0, std::exp(-kRInf / 2));
  CHECK(classify_isometry(a * kR).kind == IsometryClass::Kind::Parabolic);
  CHECK(classify_isometry(Isometry2{}).kind == IsometryClass::Kind::Identity);
  CHECK(classify_isometry(Isometry2(1, 1, 0, 1)).kind == IsometryClass::Kind::Parabolic);
}

TEST_CASE("classification is conjugation invariant") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 300; ++k) {
    const Isometry2 g = random_isometry(rng), h = random_isometry(rng);
    const auto c1 = classify_isometry(h);
    const auto c2 = classify_isometry(g * h * g.inverse());
    CHECK(c1.kind == c2.kind);
  }
}

TEST_CASE("reflections") {
  const Geodesic2 axis = Geodesic2::from_endpoints({0, false}, {0, true});
  const Motion2 s = reflect(axis);
  CHECK(s.reversing());
  CHECK(std::abs((s * s).apply({1, 1}) - Complex(1, 1)) < 1e-14);
  CHECK(std::abs(s.apply({0, 2.5}) - Complex(0, 2.5)) < 1e-14);

  // Axis through i turned 45 degrees clockwise from vertical, composed with the vertical axis: R.
  const Motion2 tilted = reflect(Geodesic2::through(kBasePoint, kPi / 2 - kPi / 4));
  const Isometry2 product = (tilted * s).as_isometry();
  CHECK(approx_equal(product, kR, 1e-12));
  CHECK_THROWS_AS(s.as_isometry(), std::logic_error);
}

TEST_CASE("reflections in geodesics meeting at angle theta compose to a rotation by 2 theta") {
  for (double theta : {kPi / 6, kPi / 4, kPi / 3}) {
    const Motion2 s1 = reflect(Geodesic2::through(kBasePoint, kPi / 2));
    const Motion2 s2 = reflect(Geodesic2::through(kBasePoint, kPi / 2 + theta));
    const auto c = classify_isometry((s2 * s1).as_isometry());
    CHECK(c.kind == IsometryClass::Kind::Elliptic);
    CHECK(c.angle == doctest::Approx(2 * theta).epsilon(1e-12));
  }
}

TEST_CASE("disk circles of geodesics are orthogonal to the boundary") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 200; ++k) {
    const auto g = Geodesic2::through_points(random_point(rng), random_point(rng));
    const DiskCircle c = g.disk_circle();
    if (c.diameter) continue;
    CHECK(std::abs(std::norm(c.center) - 1 - c.radius * c.radius) < 1e-9 * std::norm(c.center));
  }
}

TEST_CASE("bisector is equidistant") {
  const Complex z{0.3, 1.2}, w{-1.0, 0.4};
  const auto g = Geodesic2::bisector(z, w);
  const Motion2 s = reflect(g);
  CHECK(std::abs(s.apply(z) - w) < 1e-12);
}

TEST_CASE("law of cosines") {
  const double c = law_of_cosines_side(1, 1, kPi / 2);
  CHECK(std::abs(c - std::acosh(std::cosh(1.0) * std::cosh(1.0))) < 1e-14);
  CHECK(c == doctest::Approx(1.513374006596504).epsilon(1e-12));
  CHECK(std::abs(law_of_cosines_side(1, 1e-9, 1.0) - 1) < 1e-8);
  CHECK(std::abs(law_of_cosines_side(0.8, 0.8, kPi - 1e-6) - 1.6) < 1e-4);
}

TEST_CASE("second law matches the r_n formula") {
  for (int n = 5; n <= 200; ++n) {
    const double side = second_law_side(kPi / 4, kPi / 4, 2 * kPi / n);
    CHECK(std::abs(side - std::acosh(1 + 2 * std::cos(2 * kPi / n))) < 1e-12);
  }
  CHECK(second_law_side(kPi / 4, kPi / 4, 2 * kPi / 5) == doctest::Approx(1.0612750619).epsilon(1e-10));
  CHECK(second_law_side(kPi / 4, kPi / 4, kPi / 3) == doctest::Approx(1.3169578969).epsilon(1e-10));
  CHECK_THROWS_WITH_AS(second_law_side(kPi / 2, kPi / 4, kPi / 4), "no hyperbolic triangle",
                       std::domain_error);
}

TEST_CASE("second law inverts the corner-angle relation") {
  // Triangle with angles pi/2, pi/4, alpha has side r/2 between the first two,
  // where r = 2 acosh(sqrt 2 cos alpha).
  for (double alpha : {0.2, 0.4, 0.6}) {
    const double half = second_law_side(kPi / 2, kPi / 4, alpha);
    CHECK(std::abs(2 * half - 2 * std::acosh(std::sqrt(2.0) * std::cos(alpha))) < 1e-12);
  }
}

TEST_CASE("law of cosines agrees with the second law on a constructed triangle") {
  const Complex u = kBasePoint, v{0.7, 1.9}, w{-0.4, 0.6};
  const double a = dist(v, w), b = dist(u, w), c = dist(u, v);
  const double gu = angle_at(u, v, w), gv = angle_at(v, u, w), gw = angle_at(w, u, v);
  CHECK(std::abs(law_of_cosines_side(b, c, gu) - a) < 1e-10);
  CHECK(std::abs(second_law_side(gu, gv, gw) - c) < 1e-10);
}

TEST_CASE("geodesic_point and midpoint") {
  const Complex z{0.2, 0.9};
  const Complex q = geodesic_point(z, 1.1, 0.75);
  CHECK(std::abs(dist(z, q) - 0.75) < 1e-12);
  const Complex m = midpoint(z, q);
  CHECK(std::abs(dist(z, m) - 0.375) < 1e-12);
  CHECK(std::abs(dist(m, q) - 0.375) < 1e-12);
}
