#include "hyperbot/h3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "hyperbot/group.hpp"

namespace hyperbot {

double dist(const Point3& p, const Point3& q) {
  const double dz = std::norm(p.z - q.z);
  const double dh = p.h - q.h;
  // cosh d = 1 + |p - q|^2 / (2 h h'), written through asinh for small distances.
  return 2 * std::asinh(std::sqrt(dz + dh * dh) / (2 * std::sqrt(p.h * q.h)));
}

namespace {

bool needs_flip(Complex x) {
  const double scale = std::abs(x);
  if (x.real() < -1e-12 * scale) return true;
  return std::abs(x.real()) <= 1e-12 * scale && x.imag() < 0;
}

}  // namespace

Isometry3::Isometry3(Complex a, Complex b, Complex c, Complex d) {
  const Complex det = a * d - b * c;
  if (!(std::abs(det) > 0)) throw std::invalid_argument("Isometry3: singular matrix");
  const Complex s = 1.0 / std::sqrt(det);
  a_ = a * s;
  b_ = b * s;
  c_ = c * s;
  d_ = d * s;
  for (Complex x : {a_, b_, c_, d_}) {
    if (std::abs(x) > 1e-12) {
      if (needs_flip(x)) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
        d_ = -d_;
      }
      break;
    }
  }
}

std::array<double, 8> Isometry3::entries() const {
  return {a_.real(), a_.imag(), b_.real(), b_.imag(), c_.real(), c_.imag(), d_.real(), d_.imag()};
}

Isometry3 Isometry3::operator*(const Isometry3& o) const {
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
          c_ * o.b_ + d_ * o.d_};
}

Isometry3 Isometry3::pow(int k) const {
  Isometry3 base = k < 0 ? inverse() : *this;
  Isometry3 out;
  for (int n = std::abs(k); n > 0; n >>= 1) {
    if (n & 1) out = out * base;
    base = base * base;
  }
  return out;
}

Point3 Isometry3::apply(const Point3& q) const {
  const Complex czd = c_ * q.z + d_;
  const double h2 = q.h * q.h;
  const double denom = std::norm(czd) + std::norm(c_) * h2;
  const Complex z = ((a_ * q.z + b_) * std::conj(czd) + a_ * std::conj(c_) * h2) / denom;
  return {z, q.h / denom};
}

double matrix_distance(const Isometry3& g, const Isometry3& h) {
  return LatticeIndex<8>::distance(g.entries(), h.entries());
}

bool approx_equal(const Isometry3& g, const Isometry3& h, double tol) {
  return matrix_distance(g, h) < tol;
}

Generators3 generators3(double r) {
  if (!(r > 0) || !std::isfinite(r)) throw std::invalid_argument("generators3: r must be positive");
  const Generators g2 = generators(r);
  Generators3 g;
  g.A = Isometry3(g2.A);
  g.R12 = Isometry3(g2.R);
  const Complex e = std::polar(1.0, kPi / 4);
  g.R23 = Isometry3(e, 0, 0, std::conj(e));
  g.R31 = g.R23 * g.R12 * g.R23.inverse();
  g.T = {g.A, g.R12 * g.A * g.R12.inverse(), g.R31 * g.A * g.R31.inverse()};
  return g;
}

std::vector<Isometry3> rotation_group(const Generators3& g) {
  const std::array<Isometry3, 3> gens = {g.R12, g.R23, g.R31};
  LatticeIndex<8> index(1e-8);
  std::vector<Isometry3> out = {Isometry3{}};
  index.insert(out.front().entries());
  for (std::size_t k = 0; k < out.size() && out.size() < 1000; ++k) {
    for (const Isometry3& s : gens) {
      const Isometry3 x = out[k] * s;
      if (index.find_or_insert(x.entries()).second) out.push_back(x);
    }
  }
  return out;
}

Classification3 classify3(double r) {
  Classification3 out;
  out.planar = classify(r);
  using V = Classification::Verdict;
  switch (out.planar.verdict) {
    case V::DiscretePolygonal:
      out.covolume = out.planar.n == 5   ? "cocompact"
                     : out.planar.n == 6 ? "finite covolume"
                                         : "infinite covolume";
      break;
    case V::DiscreteTree: out.covolume = "degree-6 tree"; break;
    default: out.covolume = "not discrete"; break;
  }
  return out;
}

namespace {

// Bisector of p and q in H^3 as a hemisphere over the boundary plane.
struct Hemisphere {
  Complex center;
  double radius = 0;
  bool region_inside = false;  // whether the half-space containing q is the ball
};

Hemisphere bisector3(const Point3& p, const Point3& q) {
  auto norm3 = [](const Point3& x) { return std::norm(x.z) + x.h * x.h; };
  const double h1 = p.h, h2 = q.h;
  Hemisphere out;
  out.center = (h2 * p.z - h1 * q.z) / (h2 - h1);
  out.radius = std::sqrt(std::norm(out.center) - (h2 * norm3(p) - h1 * norm3(q)) / (h2 - h1));
  out.region_inside = std::norm(q.z - out.center) + q.h * q.h < out.radius * out.radius;
  return out;
}

// Distance between two such half-spaces, or minus the angle between their
// boundaries when they cross; -infinity when one contains the other.
double region_margin(const Hemisphere& s, const Hemisphere& t) {
  const double inv = (std::norm(s.center - t.center) - s.radius * s.radius - t.radius * t.radius) /
                     (2 * s.radius * t.radius);
  if (std::abs(inv) < 1) return -std::acos(std::abs(inv));
  if (s.region_inside && t.region_inside) {
    return inv >= 1 ? std::acosh(inv) : -std::numeric_limits<double>::infinity();
  }
  if (s.region_inside != t.region_inside) {
    // The ball must sit inside the other sphere, and be the smaller one.
    const Hemisphere& ball = s.region_inside ? s : t;
    const Hemisphere& outer = s.region_inside ? t : s;
    return inv <= -1 && ball.radius < outer.radius ? std::acosh(-inv)
                                                   : -std::numeric_limits<double>::infinity();
  }
  return -std::numeric_limits<double>::infinity();
}

}  // namespace

Tree6Regions tree6_regions(double r) {
  const Generators3 g = generators3(r);
  std::vector<Hemisphere> planes;
  for (const Isometry3& t : g.T) {
    planes.push_back(bisector3(kBasePoint3, t.apply(kBasePoint3)));
    planes.push_back(bisector3(kBasePoint3, t.inverse().apply(kBasePoint3)));
  }
  Tree6Regions out;
  out.disjoint = pingpong_regions(r).disjoint;
  out.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < planes.size(); ++i) {
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      out.margin = std::min(out.margin, region_margin(planes[i], planes[j]));
    }
  }
  out.numeric_disjoint = out.margin > -std::sqrt(kTolId);
  return out;
}

Tree6Report tree6_embedding(double r, int depth) {
  if (r < kRInf - kTolId) throw std::domain_error("hypothesis violated: r < r_inf");
  if (depth < 0 || depth > 6) throw std::invalid_argument("tree6_embedding: depth must lie in [0, 6]");
  const Generators3 g = generators3(r);
  const Generators3 half = generators3(r / 2);
  const Point3 p = kBasePoint3;

  // Letters 2i and 2i + 1 are T_i and T_i^-1.
  std::array<Isometry3, 6> letters;
  for (std::size_t i = 0; i < 3; ++i) {
    letters[2 * i] = g.T[i];
    letters[2 * i + 1] = g.T[i].inverse();
  }
  Tree6Report out;
  out.r = r;
  out.depth = depth;
  for (std::size_t i = 0; i < 3; ++i) {
    for (const Isometry3& m : {half.T[i], half.T[i].inverse()}) {
      out.max_star_error = std::max(out.max_star_error, std::abs(dist(p, m.apply(p)) - r / 2));
    }
  }

  std::vector<Isometry3> values = {Isometry3{}};
  std::vector<int> last = {-1};
  std::vector<int> length = {0};
  std::vector<std::int32_t> parent = {-1};
  std::size_t begin = 0;
  for (int level = 1; level <= depth; ++level) {
    const std::size_t end = values.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (int l = 0; l < 6; ++l) {
        if (last[k] >= 0 && (last[k] ^ 1) == l) continue;
        values.push_back(values[k] * letters[static_cast<std::size_t>(l)]);
        last.push_back(l);
        length.push_back(level);
        parent.push_back(static_cast<std::int32_t>(k));
      }
    }
    begin = end;
  }
  out.vertex_count = values.size();
  std::vector<int> degree(values.size(), 0);
  for (std::size_t k = 1; k < values.size(); ++k) {
    const auto u = static_cast<std::size_t>(parent[k]);
    ++degree[u];
    ++degree[k];
    const double len = dist(values[u].apply(p), values[k].apply(p));
    out.max_edge_error = std::max(out.max_edge_error, std::abs(len - r));
  }
  out.interior_degrees_ok = true;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (length[k] < depth && degree[k] != 6) out.interior_degrees_ok = false;
  }

  const std::vector<Isometry3> stab = rotation_group(g);
  out.stabilizer_order = stab.size();
  LatticeIndex<8> index(1e-8);
  out.cosets_distinct = true;
  for (const Isometry3& x : values) {
    for (const Isometry3& s : stab) {
      if (!index.find_or_insert((x * s).entries()).second) out.cosets_distinct = false;
    }
  }
  out.conjugation_closed = true;
  for (const Isometry3& s : stab) {
    for (const Isometry3& t : g.T) {
      const Isometry3 c = s * t * s.inverse();
      const bool hit = std::any_of(letters.begin(), letters.end(),
                                   [&](const Isometry3& l) { return approx_equal(c, l, 1e-9); });
      if (!hit) out.conjugation_closed = false;
    }
  }
  return out;
}

std::string PolyhedronReport::kind_name() const {
  switch (kind) {
    case Kind::CompactDodecahedron: return "compact-dodecahedron";
    case Kind::HoroballType: return "horoball-type";
    case Kind::InfiniteVolumeLifted: return "infinite-volume-lifted";
    case Kind::Infeasible: return "infeasible";
  }
  return "";
}

std::vector<PolyhedronReport> euler_scan(int n_min, int n_max) {
  if (n_min < 3 || n_max < n_min) throw std::invalid_argument("euler_scan: need 3 <= n_min <= n_max");
  std::vector<PolyhedronReport> out;
  for (int n = n_min; n <= n_max; ++n) {
    PolyhedronReport rep;
    rep.n = n;
    // (6 - n) F = 12 with V = n F / 3 and E = n F / 2.
    if (n < 6 && 12 % (6 - n) == 0) {
      const int f = 12 / (6 - n);
      if ((n * f) % 3 == 0 && (n * f) % 2 == 0) {
        rep.F = f;
        rep.V = n * f / 3;
        rep.E = n * f / 2;
      }
    }
    // Right-angled regular n-gons exist in H^2 only for n >= 5.
    if (n == 5) {
      rep.kind = PolyhedronReport::Kind::CompactDodecahedron;
    } else if (n == 6) {
      rep.kind = PolyhedronReport::Kind::HoroballType;
    } else if (n >= 7) {
      rep.kind = PolyhedronReport::Kind::InfiniteVolumeLifted;
      const LiftedParams lp = lifted_polyhedron_params(n);
      rep.s_n = lp.s_n;
      rep.t0 = lp.t0;
    }
    out.push_back(rep);
  }
  return out;
}

HexagonSphereReport hexagon_sphere_construction() {
  HexagonSphereReport out;
  // Hexagon centers on the lattice spanned by 2 and 2 e^{i pi/3}; spheres of
  // radius sqrt 2 about each center.
  constexpr double kRadiusSq = 2;
  const double d = 2;
  out.center_distance_sq = d * d;
  out.radius_sq_sum = kRadiusSq + kRadiusSq;
  out.orthogonal_exact = out.center_distance_sq == out.radius_sq_sum;

  // Side k of the face over the hexagon at 0 lies on the sphere about the
  // neighbor 2 e^{i k pi/3}: it is the arc q(phi) = rot_k (1, sin phi, cos phi).
  const double phi0 = std::asin(1 / std::sqrt(3.0));
  auto side_point = [](int k, double phi) {
    return Point3{std::polar(1.0, k * kPi / 3) * Complex(1, std::sin(phi)), std::cos(phi)};
  };
  auto side_tangent = [](int k, double phi) {
    const Complex dz = std::polar(1.0, k * kPi / 3) * Complex(0, std::cos(phi));
    return std::array<double, 3>{dz.real(), dz.imag(), -std::sin(phi)};
  };
  for (int k = 0; k < 6; ++k) {
    auto speed = [&](double phi) {
      const auto t = side_tangent(k, phi);
      return std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]) / side_point(k, phi).h;
    };
    out.side_quadrature[static_cast<std::size_t>(k)] =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(speed, -phi0, phi0, 10, 1e-14);
    out.side_distance[static_cast<std::size_t>(k)] = dist(side_point(k, -phi0), side_point(k, phi0));
  }

  // Normals of the two spheres at a point of their intersection.
  const Point3 q = side_point(0, 0.3);
  const std::array<double, 3> n1 = {q.z.real(), q.z.imag(), q.h};
  const std::array<double, 3> n2 = {q.z.real() - d, q.z.imag(), q.h};
  auto dot = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  out.dihedral_angle = std::acos(dot(n1, n2) / std::sqrt(dot(n1, n1) * dot(n2, n2)));

  // The vertex shared by side 0 (at phi0) and side 1 (at -phi0).
  std::array<double, 3> u = side_tangent(0, phi0);
  for (double& x : u) x = -x;
  const std::array<double, 3> v = side_tangent(1, -phi0);
  out.vertex_angle = std::acos(dot(u, v) / std::sqrt(dot(u, u) * dot(v, v)));
  return out;
}

double lifted_distance(double s, double t) {
  const Point3 alpha{Complex(0, std::tanh(t)), 1 / std::cosh(t)};
  const double k = std::exp(s);
  const Point3 beta{k * alpha.z, k * alpha.h};
  return dist(alpha, beta);
}

LiftedParams lifted_polyhedron_params(int n) {
  if (n < 7) throw std::invalid_argument("lifted_polyhedron_params: n must be at least 7");
  LiftedParams out;
  out.n = n;
  out.s_n = 2 * std::acosh(std::cos(kPi / n) / std::sin(kPi / 3));
  out.r_n = r_n(n);
  out.t0 = std::acosh(std::sqrt((std::cosh(out.r_n) - 1) / (std::cosh(out.s_n) - 1)));
  auto f = [&](double t) { return lifted_distance(out.s_n, t) - out.r_n; };
  double hi = 1;
  while (f(hi) < 0) hi *= 2;
  std::uintmax_t iters = 200;
  const auto bracket =
      boost::math::tools::toms748_solve(f, 0.0, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  out.t0_root = (bracket.first + bracket.second) / 2;
  return out;
}

}  // namespace hyperbot
