#pragma once

// Data-parallel inner loops. Every kernel exists twice: `serial` is the
// reference used by the tests, `omp` is the OpenMP version used by default.
// Both must return identical results for identical inputs.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hyperbot/core.hpp"
#include "hyperbot/state_index.hpp"

namespace hyperbot::kernels {

struct Expansion {
  // products[i * gens.size() + g] = states[frontier[i]] * gens[g]
  std::vector<Isometry2> products;
  // Index of an existing state within tolerance, or -1.
  std::vector<std::int64_t> found;
};

struct Separation {
  // Indices of points with no earlier point within `tol`.
  std::vector<std::size_t> distinct;
  // Smallest pairwise distance above `tol`; `upper` if none is smaller.
  double min_distance = 0;
};

struct OverlapStats {
  std::size_t pairs_tested = 0;     // pairs surviving the bounding-box filter
  std::size_t overlapping_pairs = 0;
};

// Triangle given by Klein-model vertices (geodesic triangles are Euclidean there).
using KleinTriangle = std::array<Complex, 3>;

// Words w = u v split into halves. u runs over `left`, v over `right`; a pair
// is admissible when compatible[left_class[i] * classes + right_class[j]] != 0.
// |uv - I| < eps forces d(v p, u^-1 p) <= radius, which prefilters the pairs.
struct HalfWords {
  std::span<const Isometry2> left;
  std::span<const Complex> left_points;  // u^-1 p
  std::span<const std::uint8_t> left_class;
  std::span<const Isometry2> right;
  std::span<const Complex> right_points;  // v p
  std::span<const std::uint8_t> right_class;
  std::span<const std::uint8_t> compatible;
  std::size_t classes = 0;
  double radius = 0;
};

namespace serial {
Expansion expand(std::span<const Isometry2> states, std::span<const std::size_t> frontier,
                 std::span<const Isometry2> gens, const LatticeIndex<4>& index);
Separation separation(std::span<const Complex> points, double tol, double upper);
// Lexicographically smallest admissible (i, j) with kTolId <= |left[i] right[j] - I| < eps.
std::optional<std::pair<std::size_t, std::size_t>> first_near_identity_pair(const HalfWords& words,
                                                                            double eps);
OverlapStats triangle_overlaps(std::span<const KleinTriangle> tris, int samples,
                               std::uint64_t seed);
}  // namespace serial

namespace omp {
Expansion expand(std::span<const Isometry2> states, std::span<const std::size_t> frontier,
                 std::span<const Isometry2> gens, const LatticeIndex<4>& index);
Separation separation(std::span<const Complex> points, double tol, double upper);
// Lexicographically smallest admissible (i, j) with kTolId <= |left[i] right[j] - I| < eps.
std::optional<std::pair<std::size_t, std::size_t>> first_near_identity_pair(const HalfWords& words,
                                                                            double eps);
OverlapStats triangle_overlaps(std::span<const KleinTriangle> tris, int samples,
                               std::uint64_t seed);
}  // namespace omp

// Shared per-pair work so both implementations agree bit for bit.
namespace detail {
bool triangles_overlap(const KleinTriangle& s, const KleinTriangle& t, int samples,
                       std::uint64_t seed);
bool boxes_overlap(const KleinTriangle& s, const KleinTriangle& t);
}  // namespace detail

}  // namespace hyperbot::kernels
