#pragma once

// The triangle T_n with its G_{r_n}-tiling, and the degree-four tree of
// the free subgroup H_r = <A, B> for r >= r_inf.

#include <array>
#include <cstdint>
#include <vector>

#include "hyperbot/core.hpp"
#include "hyperbot/group.hpp"
#include "hyperbot/kernels.hpp"

namespace hyperbot {

// sides[k] is opposite vertices[k]; angles[k] is the angle at vertices[k].
struct Triangle {
  std::array<Complex, 3> vertices;
  std::array<double, 3> angles;
  std::array<double, 3> sides;
};

Triangle make_triangle(Complex u, Complex v, Complex w);
Triangle transform(const Isometry2& g, const Triangle& t);

// Vertices p, A p, o = fix(A R) with angles pi/4, pi/4, 2 pi/n.
// Throws std::domain_error("no such hyperbolic triangle") for n <= 4.
Triangle fundamental_triangle(int n);

struct GluingMaps {
  Isometry2 sigma1;  // A R^2: half-turn about m
  Isometry2 sigma2;  // A R: rotation by 2 pi / n about o
  Complex m;         // midpoint of [p, A p]
};

GluingMaps gluing_maps(int n);

struct Tiling {
  int n = 0;
  int depth = 0;
  bool truncated = false;
  std::vector<Isometry2> elements;  // elements[0] is the identity
  std::vector<Triangle> triangles;  // elements[k] * T_n
};

// Breadth-first closure of {sigma1, sigma2, sigma2^-1} applied to T_n.
// Throws std::invalid_argument for depth outside [0, 8].
Tiling generate_tiling(int n, int depth, std::size_t max_tiles = 200'000);

kernels::KleinTriangle klein_triangle(const Triangle& t);

// Sampled interior-overlap test over all pairs of tiles.
kernels::OverlapStats tiling_overlaps(const Tiling& tiling, int samples = 1000,
                                      std::uint64_t seed = 20240611,
                                      Execution execution = Execution::Parallel);

struct StarCensus {
  std::size_t complete_stars = 0;  // stars whose every member tile was generated
  int min_count = 0;               // tiles meeting at a complete star's centre
  int max_count = 0;
};

// Tiles meeting at images of o (expect n each) and at images of p (expect 8),
// counted geometrically over the stars that are combinatorially complete.
StarCensus o_star_census(const Tiling& tiling);
StarCensus p_star_census(const Tiling& tiling);

struct TreeEmbedding {
  double r = 0;
  int depth = 0;
  std::vector<Word> labels;          // reduced {A, a, B, b} words
  std::vector<Complex> vertices;     // labels[k] * p
  std::vector<std::int32_t> parent;  // edge (parent[k], k) for k > 0
  std::vector<int> degree;
  // Star endpoints: nearest points of E, W, S, N to p (distance r/2).
  std::array<Complex, 4> star;

  double max_edge_error = 0;    // max |length - r| over edges
  bool interior_degrees_ok = false;
  std::size_t candidate_pairs = 0;
  std::size_t crossings = 0;    // non-adjacent edges meeting at a point
};

// Throws std::domain_error for r < r_inf and std::invalid_argument for depth
// outside [0, 8].
TreeEmbedding tree_embedding(double r, int depth);

}  // namespace hyperbot
