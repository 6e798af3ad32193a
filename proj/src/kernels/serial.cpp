#include <algorithm>
#include <cmath>
#include <random>

#include "common.hpp"

namespace hyperbot::kernels {

namespace detail {

namespace {

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

bool strictly_inside(const KleinTriangle& t, Complex q) {
  const double orient = cross(t[0], t[1], t[2]) > 0 ? 1.0 : -1.0;
  for (int k = 0; k < 3; ++k) {
    if (orient * cross(t[k], t[(k + 1) % 3], q) <= 0) return false;
  }
  return true;
}

bool samples_hit(const KleinTriangle& s, const KleinTriangle& t, int samples, std::mt19937_64& rng) {
  constexpr double kShrink = 0.999;
  const Complex centroid = (s[0] + s[1] + s[2]) / 3.0;
  KleinTriangle shrunk;
  for (int k = 0; k < 3; ++k) shrunk[k] = centroid + kShrink * (s[k] - centroid);
  if (strictly_inside(t, centroid)) return true;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 0; n < samples; ++n) {
    double u = unit(rng);
    double v = unit(rng);
    if (u + v > 1) {
      u = 1 - u;
      v = 1 - v;
    }
    const Complex q = shrunk[0] + u * (shrunk[1] - shrunk[0]) + v * (shrunk[2] - shrunk[0]);
    if (strictly_inside(t, q)) return true;
  }
  return false;
}

}  // namespace

bool boxes_overlap(const KleinTriangle& s, const KleinTriangle& t) {
  auto lo = [](const KleinTriangle& x, auto part) {
    return std::min({part(x[0]), part(x[1]), part(x[2])});
  };
  auto hi = [](const KleinTriangle& x, auto part) {
    return std::max({part(x[0]), part(x[1]), part(x[2])});
  };
  auto re = [](Complex z) { return z.real(); };
  auto im = [](Complex z) { return z.imag(); };
  return lo(s, re) < hi(t, re) && lo(t, re) < hi(s, re) && lo(s, im) < hi(t, im) &&
         lo(t, im) < hi(s, im);
}

bool triangles_overlap(const KleinTriangle& s, const KleinTriangle& t, int samples,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int half = samples / 2;
  return samples_hit(s, t, half, rng) || samples_hit(t, s, samples - half, rng);
}

}  // namespace detail

namespace serial {

Expansion expand(std::span<const Isometry2> states, std::span<const std::size_t> frontier,
                 std::span<const Isometry2> gens, const LatticeIndex<4>& index) {
  Expansion out;
  const std::size_t total = frontier.size() * gens.size();
  out.products.resize(total);
  out.found.resize(total);
  for (std::size_t k = 0; k < total; ++k) {
    const Isometry2 g = states[frontier[k / gens.size()]] * gens[k % gens.size()];
    out.products[k] = g;
    const auto hit = index.find(detail::coords_of(g));
    out.found[k] = hit ? static_cast<std::int64_t>(*hit) : -1;
  }
  return out;
}

Separation separation(std::span<const Complex> points, double tol, double upper) {
  Separation out;
  out.min_distance = upper;
  if (points.empty()) return out;
  const NeighborGrid grid(points, std::max(upper, tol) * (1 + 1e-9));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [duplicate, best] = detail::scan_point(points, grid, i, tol, out.min_distance);
    if (!duplicate) out.distinct.push_back(i);
    out.min_distance = std::min(out.min_distance, best);
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> first_near_identity_pair(const HalfWords& words,
                                                                            double eps) {
  if (words.left.empty() || words.right.empty()) return std::nullopt;
  const NeighborGrid grid(words.left_points, words.radius * (1 + 1e-9));
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t j = 0; j < words.right.size(); ++j) {
    const std::size_t i = detail::best_left_for(words, grid, j, eps);
    if (i != SIZE_MAX && (!best || i < best->first)) best = std::pair{i, j};
  }
  return best;
}

OverlapStats triangle_overlaps(std::span<const KleinTriangle> tris, int samples,
                               std::uint64_t seed) {
  OverlapStats out;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    for (std::size_t j = i + 1; j < tris.size(); ++j) {
      if (!detail::boxes_overlap(tris[i], tris[j])) continue;
      ++out.pairs_tested;
      if (detail::triangles_overlap(tris[i], tris[j], samples, detail::pair_seed(seed, i, j))) {
        ++out.overlapping_pairs;
      }
    }
  }
  return out;
}

}  // namespace serial
}  // namespace hyperbot::kernels
