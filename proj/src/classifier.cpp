#include "hyperbot/classifier.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hyperbot/group.hpp"

namespace hyperbot {

double r_of_t(double t) {
  if (!(t > 4)) throw std::invalid_argument("r_of_t: t must exceed 4");
  return std::acosh(1 + 2 * std::cos(2 * kPi / t));
}

double r_n(int n) {
  if (n < 5) throw std::invalid_argument("r_n: n must be at least 5");
  return r_of_t(n);
}

double t_of_r(double r) {
  if (!(r > 0) || !(r < kRInf)) throw std::invalid_argument("t_of_r: r must lie in (0, r_inf)");
  // 1 - cos(theta) = cosh(r_inf) - cosh(r) over 2, factored to keep precision near r_inf.
  const double s = std::sinh((kRInf + r) / 2) * std::sinh((kRInf - r) / 2) / 2;
  const double theta = 2 * std::asin(std::sqrt(s));
  return 2 * kPi / theta;
}

std::optional<std::pair<long, long>> detect_rational(double t, long max_den, double tol) {
  if (!std::isfinite(t)) return std::nullopt;
  long p0 = 1, q0 = 0;
  long p1 = static_cast<long>(std::floor(t)), q1 = 1;
  double x = t - std::floor(t);
  for (int iter = 0; iter < 64 && q1 <= max_den; ++iter) {
    if (std::abs(t - static_cast<double>(p1) / static_cast<double>(q1)) < tol) {
      const long g = std::gcd(p1, q1);
      return std::make_pair(p1 / g, q1 / g);
    }
    if (x < 1e-15) break;
    x = 1 / x;
    const long a = static_cast<long>(std::floor(x));
    x -= static_cast<double>(a);
    const long p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return std::nullopt;
}

std::string Classification::verdict_name() const {
  switch (verdict) {
    case Verdict::DiscretePolygonal: return "discrete_polygonal";
    case Verdict::DiscreteTree: return "discrete_tree";
    case Verdict::DenseRational: return "dense_rational";
    case Verdict::DenseIrrational: return "dense_irrational";
  }
  return "";
}

std::string Classification::banner() const {
  switch (verdict) {
    case Verdict::DiscretePolygonal: return "discrete (polygonal, n = " + std::to_string(n) + ")";
    case Verdict::DiscreteTree: return critical ? "discrete (critical tree)" : "discrete (tree)";
    case Verdict::DenseRational:
      return "dense (t = " + std::to_string(p) + "/" + std::to_string(q) + ")";
    case Verdict::DenseIrrational: return "dense (no rational t with denominator <= 1000)";
  }
  return "";
}

Classification classify(double r) {
  if (!(r > 0) || !std::isfinite(r)) throw std::invalid_argument("classify: r must be positive");
  Classification out;
  out.r = r;
  if (r >= kRInf - kTolId) {
    out.verdict = Classification::Verdict::DiscreteTree;
    out.critical = std::abs(r - kRInf) < kTolId;
    out.pingpong_margin = pingpong_regions(r).margin;
    return out;
  }
  const double t = t_of_r(r);
  out.t = t;
  out.rotation_angle = 2 * kPi / t;
  const auto frac = detect_rational(t);
  if (frac && frac->second == 1 && frac->first >= 5) {
    out.verdict = Classification::Verdict::DiscretePolygonal;
    out.n = static_cast<int>(frac->first);
    out.elliptic_order = out.n;
  } else if (frac && frac->second >= 2) {
    out.verdict = Classification::Verdict::DenseRational;
    out.p = frac->first;
    out.q = frac->second;
    out.elliptic_order = static_cast<int>(out.p);
    out.jorgensen_value = jorgensen_value(out.p, out.q);
  } else {
    out.verdict = Classification::Verdict::DenseIrrational;
  }
  return out;
}

std::optional<int> elliptic_order(double r, int max_order) {
  if (!(r > 0)) throw std::invalid_argument("elliptic_order: r must be positive");
  if (r >= kRInf) return std::nullopt;
  const Generators g = generators(r);
  const Isometry2 x = g.A * g.R;
  Isometry2 m = x;
  for (int k = 1; k <= max_order; ++k) {
    if (is_identity(m)) return k;
    m = m * x;
  }
  return std::nullopt;
}

double jorgensen_value(long p, long q) {
  if (q < 1 || p <= 4 * q || std::gcd(p, q) != 1) {
    throw std::invalid_argument("jorgensen_value: need gcd(p, q) = 1, q >= 1, p/q > 4");
  }
  const double s = std::sin(kPi / static_cast<double>(p));
  const double angle = 2 * kPi * static_cast<double>(q) / static_cast<double>(p);
  const double ratio = (1 + std::cos(angle)) / std::sin(angle);
  return 4 * s * s * ratio * ratio;
}

long rotation_power(long p, long q) {
  if (p < 2 || std::gcd(p, q) != 1) throw std::invalid_argument("rotation_power: need gcd(p, q) = 1");
  long old_r = q % p, r = p, old_s = 1, s = 0;
  while (r != 0) {
    const long quot = old_r / r;
    old_r -= quot * r;
    std::swap(old_r, r);
    old_s -= quot * s;
    std::swap(old_s, s);
  }
  return ((old_s % p) + p) % p;
}

double jorgensen_lhs(const Isometry2& x, const Isometry2& y) {
  const double tx = x.trace();
  const Isometry2 comm = x * y * x.inverse() * y.inverse();
  return std::abs(tx * tx - 4) + std::abs(comm.trace() - 2);
}

double fixed_point_distance(double t) {
  if (!(t > 4)) throw std::invalid_argument("fixed_point_distance: t must exceed 4");
  const double angle = 2 * kPi / t;
  return std::acosh((1 + std::cos(angle)) / std::sin(angle));
}

Complex elliptic_fixed_point(const Isometry2& g) {
  const double tr = g.trace();
  if (!(std::abs(tr) < 2 - kTolId) || std::abs(g.c()) < 1e-300) {
    throw std::domain_error("elliptic_fixed_point: not elliptic");
  }
  // Root with positive imaginary part of c z^2 + (d - a) z - b = 0.
  return {(g.a() - g.d()) / (2 * g.c()), std::sqrt(4 - tr * tr) / (2 * std::abs(g.c()))};
}

InequalityCheck final_inequality_check(double x) {
  if (!(x > 0) || !(x < kPi / 4)) {
    throw std::invalid_argument("final_inequality_check: x must lie in (0, pi/4)");
  }
  InequalityCheck out;
  const double s = std::sin(x);
  const double s4 = std::sin(4 * x);
  const double c4 = 1 + std::cos(4 * x);
  out.lhs = 4 * s * s * c4 * c4 / (s4 * s4);
  out.holds_direct = out.lhs < 1;
  out.reduced_margin = 2 * std::cos(x) - 2 * std::cos(2 * x);
  out.holds = out.reduced_margin > 0;
  return out;
}

std::vector<Breakpoint> breakpoints() {
  std::vector<Breakpoint> out;
  for (int n = 5; n <= 12; ++n) out.push_back({"r_" + std::to_string(n), r_n(n)});
  out.push_back({"r_inf", kRInf});
  return out;
}

}  // namespace hyperbot
