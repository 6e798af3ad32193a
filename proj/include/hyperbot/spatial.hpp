#pragma once

// Bucketing of half-plane points for fixed-radius neighbor queries.
//
// Rows are slabs of height `delta` in log(Im z); inside a row the x cells
// grow with the row height so that every pair of points at hyperbolic
// distance below `delta` lands in neighboring rows and overlapping cells.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "hyperbot/core.hpp"

namespace hyperbot {

class NeighborGrid {
 public:
  NeighborGrid(std::span<const Complex> points, double delta);

  // Invokes fn(j) for every stored index j that may lie within `delta` of z.
  // The candidate set is a superset; callers filter by the true distance.
  template <class Fn>
  void for_candidates(Complex z, Fn&& fn) const {
    const std::int64_t row = row_of(z);
    for (std::int64_t k = row - 1; k <= row + 1; ++k) {
      const double reach = reach_between(row, k);
      const std::int64_t lo = cell_of(k, z.real() - reach);
      const std::int64_t hi = cell_of(k, z.real() + reach);
      for (std::int64_t c = lo; c <= hi; ++c) {
        auto it = cells_.find(key(k, c));
        if (it == cells_.end()) continue;
        for (std::uint32_t j : it->second) fn(j);
      }
    }
  }

  double delta() const { return delta_; }

 private:
  std::int64_t row_of(Complex z) const;
  std::int64_t cell_of(std::int64_t row, double x) const;
  double reach_between(std::int64_t row, std::int64_t other) const;
  static std::uint64_t key(std::int64_t row, std::int64_t cell);

  double delta_;
  double half_chord_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells_;
};

}  // namespace hyperbot
