#include <omp.h>

#include <algorithm>
#include <limits>

#include "common.hpp"

namespace hyperbot::kernels::omp {

Expansion expand(std::span<const Isometry2> states, std::span<const std::size_t> frontier,
                 std::span<const Isometry2> gens, const LatticeIndex<4>& index) {
  Expansion out;
  const auto total = static_cast<std::int64_t>(frontier.size() * gens.size());
  out.products.resize(static_cast<std::size_t>(total));
  out.found.resize(static_cast<std::size_t>(total));
  const auto width = static_cast<std::int64_t>(gens.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < total; ++k) {
    const Isometry2 g = states[frontier[static_cast<std::size_t>(k / width)]] *
                        gens[static_cast<std::size_t>(k % width)];
    out.products[static_cast<std::size_t>(k)] = g;
    const auto hit = index.find(detail::coords_of(g));
    out.found[static_cast<std::size_t>(k)] = hit ? static_cast<std::int64_t>(*hit) : -1;
  }
  return out;
}

Separation separation(std::span<const Complex> points, double tol, double upper) {
  Separation out;
  out.min_distance = upper;
  if (points.empty()) return out;
  const NeighborGrid grid(points, std::max(upper, tol) * (1 + 1e-9));
  const auto n = static_cast<std::int64_t>(points.size());
  std::vector<unsigned char> duplicate(points.size(), 0);
  double best = upper;
#pragma omp parallel for schedule(dynamic, 256) reduction(min : best)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto [dup, local] =
        detail::scan_point(points, grid, static_cast<std::size_t>(i), tol, upper);
    duplicate[static_cast<std::size_t>(i)] = dup ? 1 : 0;
    best = std::min(best, local);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!duplicate[i]) out.distinct.push_back(i);
  }
  out.min_distance = best;
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> first_near_identity_pair(const HalfWords& words,
                                                                            double eps) {
  if (words.left.empty() || words.right.empty()) return std::nullopt;
  const NeighborGrid grid(words.left_points, words.radius * (1 + 1e-9));
  const auto m = static_cast<std::int64_t>(words.right.size());
  const auto width = static_cast<std::uint64_t>(words.right.size());
  // Pairs ordered as i * |right| + j.
  std::uint64_t first = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel for schedule(dynamic, 512) reduction(min : first)
  for (std::int64_t j = 0; j < m; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    const std::size_t i = detail::best_left_for(words, grid, sj, eps);
    if (i != SIZE_MAX) first = std::min<std::uint64_t>(first, i * width + sj);
  }
  if (first == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return std::pair{static_cast<std::size_t>(first / width), static_cast<std::size_t>(first % width)};
}

OverlapStats triangle_overlaps(std::span<const KleinTriangle> tris, int samples,
                               std::uint64_t seed) {
  const auto n = static_cast<std::int64_t>(tris.size());
  std::size_t tested = 0;
  std::size_t overlapping = 0;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : tested, overlapping)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto si = static_cast<std::size_t>(i);
    for (std::size_t j = si + 1; j < tris.size(); ++j) {
      if (!detail::boxes_overlap(tris[si], tris[j])) continue;
      ++tested;
      if (detail::triangles_overlap(tris[si], tris[j], samples, detail::pair_seed(seed, si, j))) {
        ++overlapping;
      }
    }
  }
  return {tested, overlapping};
}

}  // namespace hyperbot::kernels::omp
