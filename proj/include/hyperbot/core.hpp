#pragma once

// Plane hyperbolic geometry in the upper half-plane model.
//
// The half-plane is the working model: every isometry is a real 2x2 matrix
// of determinant one acting by z -> (az + b) / (cz + d). The Poincare disk is
// reached through z -> (z - i) / (z + i) and is used for presentation only.

#include <array>
#include <complex>
#include <string>

namespace hyperbot {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Identity / parabolic boundary tests.
inline constexpr double kTolId = 1e-9;
// Metric identities.
inline constexpr double kTolEq = 1e-10;

// acosh(3) = log(3 + 2 sqrt 2): limit of the right-angled n-gon sides and
// threshold of the tree regime.
inline constexpr double kRInf = 1.76274717403908605046521864995958461805632065652;

// Raw 2x2 real matrix. No normalization.
struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

// Element of PSL2(R): a unit-determinant matrix modulo sign.
//
// The constructor rescales to determinant one and picks the canonical sign
// representative (first entry of a, b, c, d with magnitude above 1e-12 is
// positive), so equal group elements built the same way compare bit-equal.
class Isometry2 {
 public:
  Isometry2() = default;
  // Throws std::invalid_argument when ad - bc <= 0.
  Isometry2(double a, double b, double c, double d);
  explicit Isometry2(const Mat2& m) : Isometry2(m.a, m.b, m.c, m.d) {}

  static Isometry2 identity() { return {}; }
  // Translation of length `length` along the imaginary axis (upwards).
  static Isometry2 translation(double length);
  // Rotation about i by `angle` radians, counterclockwise for positive angle.
  static Isometry2 rotation(double angle);

  double a() const { return m_.a; }
  double b() const { return m_.b; }
  double c() const { return m_.c; }
  double d() const { return m_.d; }
  const Mat2& matrix() const { return m_; }
  std::array<double, 4> entries() const { return {m_.a, m_.b, m_.c, m_.d}; }

  double trace() const { return m_.a + m_.d; }
  Isometry2 inverse() const;
  // Throws std::domain_error when an entry overflows.
  Isometry2 operator*(const Isometry2& o) const;
  Isometry2 pow(int k) const;

  // Action on a half-plane coordinate.
  Complex apply(Complex z) const { return (m_.a * z + m_.b) / (m_.c * z + m_.d); }

 private:
  // m must have determinant one up to rounding.
  static Isometry2 unimodular(const Mat2& m);

  Mat2 m_;
};

// Frobenius distance minimized over the two sign representatives.
double matrix_distance(const Isometry2& g, const Isometry2& h);
double distance_to_identity(const Isometry2& g);
bool is_identity(const Isometry2& g, double tol = kTolId);
bool approx_equal(const Isometry2& g, const Isometry2& h, double tol = kTolEq);

enum class Model { HalfPlane, Disk };

Complex half_plane_to_disk(Complex z);
Complex disk_to_half_plane(Complex w);
// Beltrami-Klein coordinates of a disk point; geodesics are chords there.
Complex disk_to_klein(Complex w);

class Point2 {
 public:
  // Throws std::invalid_argument when Im z <= 0.
  static Point2 half_plane(Complex z);
  // Throws std::invalid_argument when |w| >= 1.
  static Point2 disk(Complex w);

  Model model() const { return model_; }
  Complex coord() const { return z_; }
  Complex half_plane_coord() const;
  Complex disk_coord() const;
  Point2 to_half_plane() const { return half_plane(half_plane_coord()); }
  Point2 to_disk() const { return disk(disk_coord()); }

 private:
  Point2(Model m, Complex z) : model_(m), z_(z) {}
  Model model_ = Model::HalfPlane;
  Complex z_{0, 1};
};

// The base point of every construction: i in the half-plane, 0 in the disk.
inline constexpr Complex kBasePoint{0.0, 1.0};

// g * p in the model p is expressed in.
Point2 apply(const Isometry2& g, const Point2& p);

double dist(Complex z, Complex w);
double dist(const Point2& p, const Point2& q);

// Angle at z between the geodesics from z to w1 and from z to w2, in [0, pi].
double angle_at(Complex z, Complex w1, Complex w2);

// Point at signed distance `s` from z along the geodesic through z with
// Euclidean tangent direction `direction` (radians from the positive real axis).
Complex geodesic_point(Complex z, double direction, double s);

// Hyperbolic midpoint of the segment [z, w].
Complex midpoint(Complex z, Complex w);

struct IsometryClass {
  enum class Kind { Identity, Elliptic, Parabolic, Hyperbolic };
  Kind kind = Kind::Identity;
  double angle = 0;   // elliptic rotation angle in (0, pi] (unsigned)
  double length = 0;  // hyperbolic translation length

  std::string name() const;
};

IsometryClass classify_isometry(const Isometry2& g);

// A point of the boundary of the half-plane: a real number or infinity.
struct IdealPoint {
  double x = 0;
  bool infinite = false;
};

// Circle or line carrying a disk-model geodesic.
struct DiskCircle {
  bool diameter = false;
  Complex center;     // circle center (unused for a diameter)
  double radius = 0;  // circle radius (unused for a diameter)
  Complex direction;  // unit direction of a diameter
};

class Geodesic2 {
 public:
  // Throws std::invalid_argument when the endpoints coincide.
  static Geodesic2 from_endpoints(IdealPoint u, IdealPoint v);
  static Geodesic2 through_points(Complex z, Complex w);
  // Geodesic through z with the given Euclidean tangent direction.
  static Geodesic2 through(Complex z, double direction);
  // Points equidistant from z and w.
  static Geodesic2 bisector(Complex z, Complex w);

  IdealPoint first() const { return u_; }
  IdealPoint second() const { return v_; }
  DiskCircle disk_circle() const;

 private:
  Geodesic2(IdealPoint u, IdealPoint v) : u_(u), v_(v) {}
  IdealPoint u_, v_;
};

// An isometry of the half-plane that may reverse orientation. Reversing maps
// act by z -> (a conj(z) + b) / (c conj(z) + d) with ad - bc = -1.
class Motion2 {
 public:
  Motion2() = default;
  explicit Motion2(const Isometry2& g);

  bool reversing() const { return reversing_; }
  const Mat2& matrix() const { return m_; }
  Complex apply(Complex z) const;
  Motion2 operator*(const Motion2& o) const;
  // Throws std::logic_error for an orientation reversing motion.
  Isometry2 as_isometry() const;

 private:
  friend Motion2 reflect(const Geodesic2& g);
  Mat2 m_;
  bool reversing_ = false;
};

// Axial symmetry: the reversing isometry fixing the geodesic pointwise.
Motion2 reflect(const Geodesic2& g);

// Side opposite `gamma` from two sides and the included angle.
double law_of_cosines_side(double a, double b, double gamma);

// Side between the vertices carrying angles alpha and beta (opposite gamma).
// Throws std::domain_error("no hyperbolic triangle") when the angle sum is >= pi.
double second_law_side(double alpha, double beta, double gamma);

}  // namespace hyperbot
