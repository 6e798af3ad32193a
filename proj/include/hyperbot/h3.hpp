#pragma once

// Upper half-space H^3 = {(z, h) : z complex, h > 0} acted on by PSL2(C).
// Base point p = (0, 0, 1).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperbot/classifier.hpp"
#include "hyperbot/core.hpp"
#include "hyperbot/state_index.hpp"

namespace hyperbot {

struct Point3 {
  Complex z{0, 0};
  double h = 1;
};

inline constexpr Point3 kBasePoint3{Complex{0, 0}, 1.0};

double dist(const Point3& p, const Point3& q);

// Unit-determinant complex matrix modulo sign. The canonical representative
// has its first entry of modulus above 1e-12 in the half-plane Re > 0 (or on
// the positive imaginary axis).
class Isometry3 {
 public:
  Isometry3() = default;
  // Throws std::invalid_argument when the determinant vanishes.
  Isometry3(Complex a, Complex b, Complex c, Complex d);
  explicit Isometry3(const Isometry2& g) : Isometry3(g.a(), g.b(), g.c(), g.d()) {}

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  std::array<double, 8> entries() const;

  Complex trace() const { return a_ + d_; }
  Isometry3 inverse() const { return {d_, -b_, -c_, a_}; }
  Isometry3 operator*(const Isometry3& o) const;
  Isometry3 pow(int k) const;

  Point3 apply(const Point3& q) const;

 private:
  Complex a_{1, 0}, b_{0, 0}, c_{0, 0}, d_{1, 0};
};

double matrix_distance(const Isometry3& g, const Isometry3& h);
bool approx_equal(const Isometry3& g, const Isometry3& h, double tol = kTolEq);

struct Generators3 {
  Isometry3 A;    // translation by r along the vertical axis through p
  Isometry3 R12;  // quarter turn about the horizontal geodesic over the imaginary axis
  Isometry3 R23;  // quarter turn about the vertical axis
  Isometry3 R31;  // R23 R12 R23^-1: quarter turn about the geodesic over the real axis
  std::array<Isometry3, 3> T;  // A, R12 A R12^-1, R31 A R31^-1
};

// Throws std::invalid_argument for r <= 0.
Generators3 generators3(double r);

// The group S generated by R12, R23, R31 (stabilizer of p and its frame axes).
std::vector<Isometry3> rotation_group(const Generators3& g);

// A state of a turtle in H^3: the element carrying the reference frame at p.
struct Frame {
  Isometry3 element;
  Point3 base() const { return element.apply(kBasePoint3); }
};

struct Classification3 {
  Classification planar;
  // "cocompact", "finite covolume", "infinite covolume", "degree-6 tree" or "not discrete"
  std::string covolume;
};

Classification3 classify3(double r);

struct Tree6Regions {
  bool disjoint = false;          // reduction to the plane through p, T1 p, T2 p
  bool numeric_disjoint = false;  // from the twelve bisector hemispheres
  double margin = 0;              // smallest distance between two regions, negative on overlap
};

Tree6Regions tree6_regions(double r);

struct Tree6Report {
  double r = 0;
  int depth = 0;
  std::size_t vertex_count = 0;
  bool interior_degrees_ok = false;
  double max_edge_error = 0;
  double max_star_error = 0;       // | dist(p, star endpoint) - r/2 |
  std::size_t stabilizer_order = 0;
  bool cosets_distinct = false;    // X s distinct over words X and s in S
  bool conjugation_closed = false; // s T_i s^-1 in {T_j^(+-1)} for s in S
};

// Throws std::domain_error for r < r_inf and std::invalid_argument for depth
// outside [0, 6].
Tree6Report tree6_embedding(double r, int depth);

struct PolyhedronReport {
  enum class Kind { CompactDodecahedron, HoroballType, InfiniteVolumeLifted, Infeasible };
  int n = 0;
  std::optional<int> V, E, F;
  Kind kind = Kind::Infeasible;
  std::optional<double> s_n, t0;

  std::string kind_name() const;
};

// Throws std::invalid_argument unless 3 <= n_min <= n_max.
std::vector<PolyhedronReport> euler_scan(int n_min, int n_max);

struct HexagonSphereReport {
  double center_distance_sq = 0;  // 4, exact
  double radius_sq_sum = 0;       // 2 + 2, exact
  bool orthogonal_exact = false;
  std::array<double, 6> side_quadrature{};  // arc length of each face side
  std::array<double, 6> side_distance{};    // distance between its end vertices
  double dihedral_angle = 0;      // between the face sphere and a neighbor sphere
  double vertex_angle = 0;        // interior angle of the face at a vertex
};

HexagonSphereReport hexagon_sphere_construction();

struct LiftedParams {
  int n = 0;
  double s_n = 0;
  double r_n = 0;
  double t0 = 0;          // closed form
  double t0_root = 0;     // root of d(t) = r_n
};

// Distance between alpha(t) = (0, tanh t, sech t) and e^s alpha(t), two unit
// speed geodesics perpendicular to the plane y = 0 at points s apart.
double lifted_distance(double s, double t);

// Throws std::invalid_argument for n < 7.
LiftedParams lifted_polyhedron_params(int n);

}  // namespace hyperbot
