#include "hyperbot/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hyperbot/classifier.hpp"
#include "hyperbot/spatial.hpp"

namespace hyperbot {

Triangle make_triangle(Complex u, Complex v, Complex w) {
  Triangle t;
  t.vertices = {u, v, w};
  for (int k = 0; k < 3; ++k) {
    const Complex a = t.vertices[static_cast<std::size_t>(k)];
    const Complex b = t.vertices[static_cast<std::size_t>((k + 1) % 3)];
    const Complex c = t.vertices[static_cast<std::size_t>((k + 2) % 3)];
    t.angles[static_cast<std::size_t>(k)] = angle_at(a, b, c);
    t.sides[static_cast<std::size_t>(k)] = dist(b, c);
  }
  return t;
}

Triangle transform(const Isometry2& g, const Triangle& t) {
  Triangle out = t;
  for (Complex& v : out.vertices) v = g.apply(v);
  return out;
}

Triangle fundamental_triangle(int n) {
  if (n <= 4) throw std::domain_error("no such hyperbolic triangle");
  const Generators g = generators(r_n(n));
  const Complex o = elliptic_fixed_point(g.A * g.R);
  return make_triangle(kBasePoint, g.A.apply(kBasePoint), o);
}

GluingMaps gluing_maps(int n) {
  const Generators g = generators(r_n(n));
  return {g.A * g.R * g.R, g.A * g.R, midpoint(kBasePoint, g.A.apply(kBasePoint))};
}

Tiling generate_tiling(int n, int depth, std::size_t max_tiles) {
  if (depth < 0 || depth > 8) throw std::invalid_argument("generate_tiling: depth must lie in [0, 8]");
  const Triangle base = fundamental_triangle(n);
  const GluingMaps maps = gluing_maps(n);
  const std::array<Isometry2, 3> step = {maps.sigma1, maps.sigma2, maps.sigma2.inverse()};

  Tiling out;
  out.n = n;
  out.depth = depth;
  StateIndex index(1e-8);
  index.insert(coords(Isometry2{}));
  out.elements.push_back(Isometry2{});
  std::vector<std::size_t> frontier = {0};
  for (int level = 0; level < depth && !out.truncated; ++level) {
    std::vector<std::size_t> next;
    for (std::size_t k : frontier) {
      for (const Isometry2& s : step) {
        const Isometry2 g = out.elements[k] * s;
        const auto [idx, inserted] = index.find_or_insert(coords(g));
        if (!inserted) continue;
        out.elements.push_back(g);
        next.push_back(idx);
        if (out.elements.size() >= max_tiles) {
          out.truncated = true;
          break;
        }
      }
      if (out.truncated) break;
    }
    frontier = std::move(next);
  }
  out.triangles.reserve(out.elements.size());
  for (const Isometry2& g : out.elements) out.triangles.push_back(transform(g, base));
  return out;
}

kernels::KleinTriangle klein_triangle(const Triangle& t) {
  kernels::KleinTriangle k;
  for (std::size_t i = 0; i < 3; ++i) k[i] = disk_to_klein(half_plane_to_disk(t.vertices[i]));
  return k;
}

kernels::OverlapStats tiling_overlaps(const Tiling& tiling, int samples, std::uint64_t seed,
                                      Execution execution) {
  std::vector<kernels::KleinTriangle> tris;
  tris.reserve(tiling.triangles.size());
  for (const Triangle& t : tiling.triangles) tris.push_back(klein_triangle(t));
  return execution == Execution::Parallel ? kernels::omp::triangle_overlaps(tris, samples, seed)
                                          : kernels::serial::triangle_overlaps(tris, samples, seed);
}

namespace {

constexpr double kVertexTol = 1e-7;

// Tiles with a vertex within kVertexTol of v.
int incident_tiles(const NeighborGrid& grid,
                   const std::vector<std::size_t>& owner, const std::vector<Complex>& corners,
                   Complex v) {
  std::vector<std::size_t> tiles;
  grid.for_candidates(v, [&](std::uint32_t j) {
    if (dist(corners[j], v) < kVertexTol) tiles.push_back(owner[j]);
  });
  std::sort(tiles.begin(), tiles.end());
  tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());
  return static_cast<int>(tiles.size());
}

// star_members lists h with g h in the star of g * corner.
StarCensus census(const Tiling& tiling, std::size_t corner,
                  const std::vector<Isometry2>& star_members) {
  StateIndex index(1e-8);
  for (const Isometry2& g : tiling.elements) index.insert(coords(g));
  std::vector<Complex> corners;
  std::vector<std::size_t> owner;
  for (std::size_t k = 0; k < tiling.triangles.size(); ++k) {
    for (const Complex& v : tiling.triangles[k].vertices) {
      corners.push_back(v);
      owner.push_back(k);
    }
  }
  const NeighborGrid grid(corners, kVertexTol);
  StarCensus out;
  out.min_count = std::numeric_limits<int>::max();
  for (std::size_t k = 0; k < tiling.elements.size(); ++k) {
    const bool complete = std::all_of(star_members.begin(), star_members.end(), [&](const Isometry2& h) {
      return index.find(coords(tiling.elements[k] * h)).has_value();
    });
    if (!complete) continue;
    ++out.complete_stars;
    const int count = incident_tiles(grid, owner, corners, tiling.triangles[k].vertices[corner]);
    out.min_count = std::min(out.min_count, count);
    out.max_count = std::max(out.max_count, count);
  }
  if (out.complete_stars == 0) out.min_count = 0;
  return out;
}

}  // namespace

StarCensus o_star_census(const Tiling& tiling) {
  const GluingMaps maps = gluing_maps(tiling.n);
  std::vector<Isometry2> members;
  for (int k = 0; k < tiling.n; ++k) members.push_back(maps.sigma2.pow(k));
  return census(tiling, 2, members);
}

StarCensus p_star_census(const Tiling& tiling) {
  const Generators g = generators(r_n(tiling.n));
  std::vector<Isometry2> members;
  // g R^k T has its p-corner at g p; g R^k A^-1 T has its A p-corner there.
  for (int k = 0; k < 4; ++k) {
    members.push_back(g.R.pow(k));
    members.push_back(g.R.pow(k) * g.A.inverse());
  }
  return census(tiling, 0, members);
}

namespace {

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

bool on_segment(Complex a, Complex b, Complex q) {
  return std::min(a.real(), b.real()) <= q.real() && q.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= q.imag() && q.imag() <= std::max(a.imag(), b.imag());
}

// Closed segment intersection in the plane; touching counts.
bool segments_meet(Complex a, Complex b, Complex c, Complex d) {
  const double o1 = cross(a, b, c), o2 = cross(a, b, d);
  const double o3 = cross(c, d, a), o4 = cross(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
    return true;
  }
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

Complex klein_of(Complex z) { return disk_to_klein(half_plane_to_disk(z)); }

}  // namespace

TreeEmbedding tree_embedding(double r, int depth) {
  if (r < kRInf - kTolId) throw std::domain_error("hypothesis violated: r < r_inf");
  if (depth < 0 || depth > 8) throw std::invalid_argument("tree_embedding: depth must lie in [0, 8]");
  const Generators gens = generators(r);
  const Complex p = kBasePoint;
  constexpr std::array<Letter, 4> kLetters = {Letter::A, Letter::AInv, Letter::B, Letter::BInv};

  TreeEmbedding out;
  out.r = r;
  out.depth = depth;
  out.star = {midpoint(p, gens.A.apply(p)), midpoint(p, gens.A.inverse().apply(p)),
              midpoint(p, gens.B.apply(p)), midpoint(p, gens.B.inverse().apply(p))};
  out.labels.push_back(Word{});
  out.vertices.push_back(p);
  out.parent.push_back(-1);
  std::vector<Isometry2> values = {Isometry2{}};
  std::size_t level_begin = 0;
  for (int level = 1; level <= depth; ++level) {
    const std::size_t level_end = out.labels.size();
    for (std::size_t k = level_begin; k < level_end; ++k) {
      for (Letter l : kLetters) {
        if (!out.labels[k].empty() && out.labels[k].back() == inverse(l)) continue;
        Word w = out.labels[k];
        w.push_back(l);
        const Isometry2 g = values[k] * gens.matrix(l);
        out.labels.push_back(std::move(w));
        values.push_back(g);
        out.vertices.push_back(g.apply(p));
        out.parent.push_back(static_cast<std::int32_t>(k));
      }
    }
    level_begin = level_end;
  }

  out.degree.assign(out.vertices.size(), 0);
  for (std::size_t k = 1; k < out.vertices.size(); ++k) {
    const auto u = static_cast<std::size_t>(out.parent[k]);
    ++out.degree[u];
    ++out.degree[k];
    out.max_edge_error = std::max(out.max_edge_error, std::abs(dist(out.vertices[u], out.vertices[k]) - r));
  }
  out.interior_degrees_ok = true;
  for (std::size_t k = 0; k < out.vertices.size(); ++k) {
    if (static_cast<int>(out.labels[k].size()) < depth && out.degree[k] != 4) out.interior_degrees_ok = false;
  }

  // Crossing check: candidate edge pairs by midpoint proximity, each tested in
  // the frame of the first edge so that both segments sit near p.
  const std::size_t edges = out.vertices.size() - 1;
  std::vector<Complex> mids(edges);
  for (std::size_t e = 0; e < edges; ++e) {
    mids[e] = midpoint(out.vertices[static_cast<std::size_t>(out.parent[e + 1])], out.vertices[e + 1]);
  }
  if (edges == 0) return out;
  const NeighborGrid grid(mids, r * (1 + 1e-9));
  for (std::size_t e = 0; e < edges; ++e) {
    const std::size_t k = e + 1;
    const auto pk = static_cast<std::size_t>(out.parent[k]);
    grid.for_candidates(mids[e], [&](std::uint32_t f) {
      if (f <= e) return;
      const std::size_t m = f + 1;
      const auto pm = static_cast<std::size_t>(out.parent[m]);
      if (pm == pk || pm == k || m == pk) return;
      ++out.candidate_pairs;
      const Isometry2 z = evaluate((out.labels[pk].inverse() * out.labels[pm]).reduced(), gens);
      const Complex a = klein_of(p);
      const Complex b = klein_of(gens.matrix(out.labels[k].back()).apply(p));
      const Complex c = klein_of(z.apply(p));
      const Complex d = klein_of((z * gens.matrix(out.labels[m].back())).apply(p));
      if (segments_meet(a, b, c, d)) ++out.crossings;
    });
  }
  return out;
}

}  // namespace hyperbot
