#include "hyperbot/core.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace hyperbot {

namespace {

constexpr double kSignEps = 1e-12;

Mat2 canonical_sign(Mat2 m) {
  for (double x : {m.a, m.b, m.c, m.d}) {
    if (std::abs(x) > kSignEps) {
      if (x < 0) m = {-m.a, -m.b, -m.c, -m.d};
      break;
    }
  }
  return m;
}

// Rescale to |det| = 1 and pick the canonical sign representative.
Mat2 normalize(Mat2 m) {
  const double s = 1.0 / std::sqrt(std::abs(m.det()));
  return canonical_sign({m.a * s, m.b * s, m.c * s, m.d * s});
}

double frobenius(double a, double b, double c, double d) {
  return std::sqrt(a * a + b * b + c * c + d * d);
}

bool nearly_same(double x, double y) {
  return std::abs(x - y) <= 1e-15 * (std::abs(x) + std::abs(y) + 1e-300);
}

}  // namespace

Isometry2::Isometry2(double a, double b, double c, double d) {
  const Mat2 m{a, b, c, d};
  if (!(m.det() > 0) || !std::isfinite(m.det())) {
    throw std::invalid_argument("Isometry2: determinant must be positive");
  }
  m_ = normalize(m);
}

Isometry2 Isometry2::translation(double length) {
  const double e = std::exp(length / 2);
  return {e, 0, 0, 1 / e};
}

Isometry2 Isometry2::rotation(double angle) {
  const double t = -angle / 2;
  return {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
}

Isometry2 Isometry2::unimodular(const Mat2& m) {
  if (!std::isfinite(m.a) || !std::isfinite(m.b) || !std::isfinite(m.c) || !std::isfinite(m.d)) {
    throw std::domain_error("Isometry2: product is too large to represent");
  }
  // det is 1 in exact arithmetic. Far from p the computed det is dominated by
  // cancellation, and only the sign is fixed.
  const double det = m.det();
  Isometry2 out;
  out.m_ = det > 0 && std::abs(det - 1) < 1e-6 ? normalize(m) : canonical_sign(m);
  return out;
}

Isometry2 Isometry2::operator*(const Isometry2& o) const { return unimodular(m_ * o.m_); }

Isometry2 Isometry2::inverse() const { return unimodular({m_.d, -m_.b, -m_.c, m_.a}); }

Isometry2 Isometry2::pow(int k) const {
  const Isometry2 base = k < 0 ? inverse() : *this;
  Isometry2 out;
  for (int i = 0; i < std::abs(k); ++i) out = out * base;
  return out;
}

double matrix_distance(const Isometry2& g, const Isometry2& h) {
  const Mat2& x = g.matrix();
  const Mat2& y = h.matrix();
  const double minus = frobenius(x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d);
  const double plus = frobenius(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d);
  return std::min(minus, plus);
}

double distance_to_identity(const Isometry2& g) { return matrix_distance(g, Isometry2{}); }

bool is_identity(const Isometry2& g, double tol) { return distance_to_identity(g) < tol; }

bool approx_equal(const Isometry2& g, const Isometry2& h, double tol) {
  return matrix_distance(g, h) < tol;
}

Complex half_plane_to_disk(Complex z) { return (z - Complex(0, 1)) / (z + Complex(0, 1)); }

Complex disk_to_half_plane(Complex w) { return Complex(0, 1) * (1.0 + w) / (1.0 - w); }

Complex disk_to_klein(Complex w) { return 2.0 * w / (1.0 + std::norm(w)); }

Point2 Point2::half_plane(Complex z) {
  if (!(z.imag() > 0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument("Point2: half-plane point needs Im(z) > 0");
  }
  return {Model::HalfPlane, z};
}

Point2 Point2::disk(Complex w) {
  if (!(std::abs(w) < 1)) throw std::invalid_argument("Point2: disk point needs |w| < 1");
  return {Model::Disk, w};
}

Complex Point2::half_plane_coord() const {
  return model_ == Model::HalfPlane ? z_ : disk_to_half_plane(z_);
}

Complex Point2::disk_coord() const {
  return model_ == Model::Disk ? z_ : half_plane_to_disk(z_);
}

Point2 apply(const Isometry2& g, const Point2& p) {
  const Complex image = g.apply(p.half_plane_coord());
  const Point2 out = Point2::half_plane(Complex(image.real(), std::max(image.imag(), 1e-300)));
  return p.model() == Model::HalfPlane ? out : out.to_disk();
}

double dist(Complex z, Complex w) {
  return 2.0 * std::asinh(std::abs(z - w) / (2.0 * std::sqrt(z.imag() * w.imag())));
}

double dist(const Point2& p, const Point2& q) {
  return dist(p.half_plane_coord(), q.half_plane_coord());
}

namespace {
// Isometry half-plane -> disk sending z to 0.
Complex to_disk_at(Complex z, Complex w) { return (w - z) / (w - std::conj(z)); }
Complex from_disk_at(Complex z, Complex u) { return (z - u * std::conj(z)) / (1.0 - u); }
}  // namespace

double angle_at(Complex z, Complex w1, Complex w2) {
  const Complex u1 = to_disk_at(z, w1);
  const Complex u2 = to_disk_at(z, w2);
  return std::abs(std::arg(u1 / u2));
}

Complex geodesic_point(Complex z, double direction, double s) {
  // d/dw of to_disk_at at w = z is 1 / (2 i Im z): directions turn by -pi/2.
  const Complex u = std::polar(std::tanh(s / 2), direction - kPi / 2);
  return from_disk_at(z, u);
}

Complex midpoint(Complex z, Complex w) {
  const Complex u = to_disk_at(z, w);
  const double radius = std::abs(u);
  if (radius == 0) return z;
  const double half = std::tanh(std::atanh(radius) / 2);
  return from_disk_at(z, u / radius * half);
}

std::string IsometryClass::name() const {
  switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::Elliptic: return "elliptic";
    case Kind::Parabolic: return "parabolic";
    case Kind::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

IsometryClass classify_isometry(const Isometry2& g) {
  IsometryClass out;
  if (is_identity(g)) return out;
  const double tr = std::abs(g.trace());
  if (std::abs(tr - 2) < kTolId) {
    out.kind = IsometryClass::Kind::Parabolic;
  } else if (tr < 2) {
    out.kind = IsometryClass::Kind::Elliptic;
    out.angle = 2 * std::acos(tr / 2);
  } else {
    out.kind = IsometryClass::Kind::Hyperbolic;
    out.length = 2 * std::acosh(tr / 2);
  }
  return out;
}

Geodesic2 Geodesic2::from_endpoints(IdealPoint u, IdealPoint v) {
  if (u.infinite == v.infinite && (u.infinite || u.x == v.x)) {
    throw std::invalid_argument("Geodesic2: endpoints must be distinct");
  }
  return {u, v};
}

Geodesic2 Geodesic2::through_points(Complex z, Complex w) {
  if (z == w) throw std::invalid_argument("Geodesic2: points must be distinct");
  if (nearly_same(z.real(), w.real())) {
    return from_endpoints({z.real(), false}, {0, true});
  }
  const double c = (std::norm(z) - std::norm(w)) / (2 * (z.real() - w.real()));
  const double rho = std::abs(z - c);
  return from_endpoints({c - rho, false}, {c + rho, false});
}

Geodesic2 Geodesic2::through(Complex z, double direction) {
  const double cosd = std::cos(direction);
  if (std::abs(cosd) < 1e-15) return from_endpoints({z.real(), false}, {0, true});
  const double c = z.real() + z.imag() * std::tan(direction);
  const double rho = std::abs(z - c);
  return from_endpoints({c - rho, false}, {c + rho, false});
}

Geodesic2 Geodesic2::bisector(Complex z, Complex w) {
  const double h1 = z.imag();
  const double h2 = w.imag();
  if (nearly_same(h1, h2)) {
    return from_endpoints({(z.real() + w.real()) / 2, false}, {0, true});
  }
  const double c = (h2 * z.real() - h1 * w.real()) / (h2 - h1);
  const double rho2 = c * c - (h2 * std::norm(z) - h1 * std::norm(w)) / (h2 - h1);
  const double rho = std::sqrt(std::max(rho2, 0.0));
  return from_endpoints({c - rho, false}, {c + rho, false});
}

DiskCircle Geodesic2::disk_circle() const {
  auto to_circle = [](IdealPoint e) {
    return e.infinite ? Complex(1, 0) : half_plane_to_disk(Complex(e.x, 0));
  };
  const Complex u = to_circle(u_);
  const Complex v = to_circle(v_);
  DiskCircle out;
  const double cos_delta = (u * std::conj(v)).real();
  if (1 + cos_delta < 1e-12) {
    out.diameter = true;
    out.direction = u / std::abs(u);
    return out;
  }
  out.center = (u + v) / (1 + cos_delta);
  out.radius = std::sqrt(std::max(std::norm(out.center) - 1, 0.0));
  return out;
}

Motion2::Motion2(const Isometry2& g) : m_(g.matrix()) {}

Complex Motion2::apply(Complex z) const {
  const Complex x = reversing_ ? std::conj(z) : z;
  return (m_.a * x + m_.b) / (m_.c * x + m_.d);
}

Motion2 Motion2::operator*(const Motion2& o) const {
  // For real matrices conj(M x) = M conj(x), so composition is a matrix product.
  Motion2 out;
  out.m_ = normalize(m_ * o.m_);
  out.reversing_ = reversing_ != o.reversing_;
  return out;
}

Isometry2 Motion2::as_isometry() const {
  if (reversing_) throw std::logic_error("Motion2: orientation reversing motion");
  return Isometry2(m_);
}

Motion2 reflect(const Geodesic2& g) {
  Motion2 out;
  out.reversing_ = true;
  const IdealPoint u = g.first();
  const IdealPoint v = g.second();
  if (u.infinite || v.infinite) {
    const double x = u.infinite ? v.x : u.x;
    out.m_ = {-1, 2 * x, 0, 1};
    return out;
  }
  const double c = (u.x + v.x) / 2;
  const double rho = std::abs(v.x - u.x) / 2;
  out.m_ = {c / rho, (rho * rho - c * c) / rho, 1 / rho, -c / rho};
  return out;
}

double law_of_cosines_side(double a, double b, double gamma) {
  const double x = std::cosh(a) * std::cosh(b) - std::sinh(a) * std::sinh(b) * std::cos(gamma);
  assert(x > 1 - 1e-12);
  return std::acosh(std::max(1.0, x));
}

double second_law_side(double alpha, double beta, double gamma) {
  for (double x : {alpha, beta, gamma}) {
    if (!(x > 0 && x < kPi)) throw std::domain_error("no hyperbolic triangle");
  }
  if (!(alpha + beta + gamma < kPi)) throw std::domain_error("no hyperbolic triangle");
  const double x = (std::cos(gamma) + std::cos(alpha) * std::cos(beta)) /
                   (std::sin(alpha) * std::sin(beta));
  return std::acosh(std::max(1.0, x));
}

}  // namespace hyperbot
