// Serial reference against OpenMP for each kernel, on realistic inputs.

#include <benchmark/benchmark.h>

#include "hyperbot/classifier.hpp"
#include "hyperbot/group.hpp"
#include "hyperbot/kernels.hpp"
#include "hyperbot/tiling.hpp"

using namespace hyperbot;

namespace {

const OrbitReport& orbit_fixture() {
  static const OrbitReport rep = orbit_bfs(r_of_t(4.5), 10);
  return rep;
}

const std::vector<kernels::KleinTriangle>& tiles_fixture() {
  static const std::vector<kernels::KleinTriangle> tris = [] {
    std::vector<kernels::KleinTriangle> out;
    for (const Triangle& t : generate_tiling(5, 4).triangles) out.push_back(klein_triangle(t));
    return out;
  }();
  return tris;
}

template <bool Parallel>
void BM_Expand(benchmark::State& state) {
  const OrbitReport& rep = orbit_fixture();
  const Generators g = generators(rep.r);
  const std::vector<Isometry2> gens{g.A, g.A.inverse(), g.R};
  LatticeIndex<4> index(1e-8);
  for (const Isometry2& s : rep.states) index.insert(coords(s));
  std::vector<std::size_t> frontier(rep.states.size());
  for (std::size_t i = 0; i < frontier.size(); ++i) frontier[i] = i;
  for (auto _ : state) {
    auto e = Parallel ? kernels::omp::expand(rep.states, frontier, gens, index)
                      : kernels::serial::expand(rep.states, frontier, gens, index);
    benchmark::DoNotOptimize(e.found.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(frontier.size() * gens.size()));
}

template <bool Parallel>
void BM_Separation(benchmark::State& state) {
  const OrbitReport& rep = orbit_fixture();
  std::vector<Complex> pts;
  for (const Isometry2& s : rep.states) pts.push_back(s.apply(kBasePoint));
  for (auto _ : state) {
    auto s = Parallel ? kernels::omp::separation(pts, 1e-8, 1.0)
                      : kernels::serial::separation(pts, 1e-8, 1.0);
    benchmark::DoNotOptimize(s.min_distance);
  }
}

template <bool Parallel>
void BM_NearIdentityPair(benchmark::State& state) {
  const OrbitReport& rep = orbit_fixture();
  std::vector<Complex> inv_points, points;
  for (const Isometry2& s : rep.states) {
    inv_points.push_back(s.inverse().apply(kBasePoint));
    points.push_back(s.apply(kBasePoint));
  }
  const std::vector<std::uint8_t> classes(rep.states.size(), 0);
  const std::vector<std::uint8_t> compatible{1};
  const kernels::HalfWords words{rep.states, inv_points, classes, rep.states, points,
                                 classes,    compatible, 1,       0.1};
  for (auto _ : state) {
    auto hit = Parallel ? kernels::omp::first_near_identity_pair(words, 0.05)
                        : kernels::serial::first_near_identity_pair(words, 0.05);
    benchmark::DoNotOptimize(hit);
  }
}

template <bool Parallel>
void BM_TriangleOverlaps(benchmark::State& state) {
  const auto& tris = tiles_fixture();
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto s = Parallel ? kernels::omp::triangle_overlaps(tris, samples, 7)
                      : kernels::serial::triangle_overlaps(tris, samples, 7);
    benchmark::DoNotOptimize(s.overlapping_pairs);
  }
}

}  // namespace

BENCHMARK(BM_Expand<false>)->Name("expand/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Expand<true>)->Name("expand/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Separation<false>)->Name("separation/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Separation<true>)->Name("separation/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NearIdentityPair<false>)->Name("near_identity_pair/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NearIdentityPair<true>)->Name("near_identity_pair/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TriangleOverlaps<false>)->Name("triangle_overlaps/serial")->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TriangleOverlaps<true>)->Name("triangle_overlaps/omp")->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
