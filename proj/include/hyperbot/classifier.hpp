#pragma once

// Discreteness verdict for G_r = <A_r, R> and the numeric certificates
// attached to it.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperbot/core.hpp"

namespace hyperbot {

// acosh(1 + 2 cos(2 pi / t)). Throws std::invalid_argument for t <= 4.
double r_of_t(double t);
// Side of the regular right-angled n-gon. Throws std::invalid_argument for n < 5.
double r_n(int n);
// Inverse of r_of_t on (0, r_inf). Throws std::invalid_argument outside it.
double t_of_r(double r);

// First continued-fraction convergent p/q of t with q <= max_den and
// |t - p/q| < tol.
std::optional<std::pair<long, long>> detect_rational(double t, long max_den = 1000,
                                                     double tol = 1e-9);

struct Classification {
  enum class Verdict { DiscretePolygonal, DiscreteTree, DenseRational, DenseIrrational };
  Verdict verdict = Verdict::DenseIrrational;
  int n = 0;              // polygonal
  bool critical = false;  // tree
  long p = 0, q = 0;      // dense rational
  double r = 0;
  std::optional<double> t;
  std::optional<double> rotation_angle;  // of A_r R, when elliptic
  std::optional<int> elliptic_order;
  std::optional<double> jorgensen_value;
  std::optional<double> pingpong_margin;

  bool discrete() const {
    return verdict == Verdict::DiscretePolygonal || verdict == Verdict::DiscreteTree;
  }
  std::string verdict_name() const;
  // Human-readable banner, e.g. "discrete (critical tree)".
  std::string banner() const;
};

// Throws std::invalid_argument for r <= 0.
Classification classify(double r);

// Least k <= max_order with (A_r R)^k = +-I, or none (also for r >= r_inf).
std::optional<int> elliptic_order(double r, int max_order = 1000);

// 4 sin^2(pi/p) ((1 + cos(2 pi q/p)) / sin(2 pi q/p))^2. Throws
// std::invalid_argument unless gcd(p, q) = 1, q >= 1 and p > 4q.
double jorgensen_value(long p, long q);

// k with (A_r R)^k a rotation by 2 pi / p when t = p/q: the inverse of q mod p.
long rotation_power(long p, long q);

// |tr(X)^2 - 4| + |tr(X Y X^-1 Y^-1) - 2|.
double jorgensen_lhs(const Isometry2& x, const Isometry2& y);

// dist(p, o) for the fixed point o of A_{r_t} R. Throws for t <= 4.
double fixed_point_distance(double t);

// Fixed point in the half-plane of an elliptic element.
// Throws std::domain_error when g is not elliptic.
Complex elliptic_fixed_point(const Isometry2& g);

struct InequalityCheck {
  bool holds = false;          // reduced form 2 cos(2x) < 2 cos(x)
  bool holds_direct = false;   // 4 sin^2 x (1 + cos 4x)^2 / sin^2 4x < 1
  double lhs = 0;              // direct left-hand side
  double reduced_margin = 0;   // 2 cos(x) - 2 cos(2x)
};

// Throws std::invalid_argument unless 0 < x < pi/4.
InequalityCheck final_inequality_check(double x);

// r_5, ..., r_12 and r_inf: the values a slider snaps to.
struct Breakpoint {
  std::string label;
  double r;
};
std::vector<Breakpoint> breakpoints();

}  // namespace hyperbot
