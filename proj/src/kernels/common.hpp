#pragma once

#include <cstdint>
#include <cstddef>
#include <utility>

#include "hyperbot/group.hpp"
#include "hyperbot/kernels.hpp"
#include "hyperbot/spatial.hpp"

namespace hyperbot::kernels::detail {

inline LatticeIndex<4>::Coords coords_of(const Isometry2& g) { return coords(g); }

// (is a duplicate of an earlier point, smallest distance above tol)
inline std::pair<bool, double> scan_point(std::span<const Complex> points, const NeighborGrid& grid,
                                          std::size_t i, double tol, double best) {
  bool duplicate = false;
  grid.for_candidates(points[i], [&](std::uint32_t j) {
    if (j == i) return;
    const double d = dist(points[i], points[j]);
    if (d <= tol) {
      if (j < i) duplicate = true;
    } else if (d < best) {
      best = d;
    }
  });
  return {duplicate, best};
}

inline bool near_identity_hit(const Isometry2& g, double eps) {
  const double d = distance_to_identity(g);
  return d >= kTolId && d < eps;
}

// Best admissible hit for the right word j, as i; SIZE_MAX when none.
inline std::size_t best_left_for(const HalfWords& w, const NeighborGrid& grid, std::size_t j,
                                 double eps) {
  std::size_t best = SIZE_MAX;
  const Complex q = w.right_points[j];
  const std::size_t row = static_cast<std::size_t>(w.right_class[j]);
  grid.for_candidates(q, [&](std::uint32_t i) {
    if (i >= best) return;
    if (!w.compatible[static_cast<std::size_t>(w.left_class[i]) * w.classes + row]) return;
    if (dist(w.left_points[i], q) > w.radius) return;
    if (near_identity_hit(w.left[i] * w.right[j], eps)) best = i;
  });
  return best;
}

inline std::uint64_t pair_seed(std::uint64_t seed, std::size_t i, std::size_t j) {
  std::uint64_t h = seed ^ (0x9E3779B97F4A7C15ull * (i + 1)) ^ (0xC2B2AE3D27D4EB4Full * (j + 1));
  h ^= h >> 31;
  return h * 0xBF58476D1CE4E5B9ull;
}

}  // namespace hyperbot::kernels::detail
