#pragma once

// Tolerance-aware membership for group elements modulo sign.
//
// Each element is flattened to N real coordinates. Keys are the coordinates
// rounded to a lattice of pitch 4 * tol; a query probes its own cell plus the
// neighbor cell on any axis where it sits within tol of a cell border, for
// both sign representatives. A hit is confirmed with the true distance
// min(|x - y|, |x + y|) < tol, so distinct elements are never merged and
// elements closer than tol are always found.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace hyperbot {

template <std::size_t N>
class LatticeIndex {
 public:
  using Coords = std::array<double, N>;

  explicit LatticeIndex(double tol) : tol_(tol), pitch_(4 * tol) {
    if (!(tol > 0)) throw std::invalid_argument("LatticeIndex: tolerance must be positive");
  }

  double tolerance() const { return tol_; }
  std::size_t size() const { return items_.size(); }
  const std::vector<Coords>& items() const { return items_; }
  void reserve(std::size_t n) {
    items_.reserve(n);
    buckets_.reserve(n);
  }

  // Index of a stored element within tol of x (the smallest such index).
  std::optional<std::size_t> find(const Coords& x) const {
    std::optional<std::size_t> best;
    for (double sign : {1.0, -1.0}) {
      Coords y;
      for (std::size_t i = 0; i < N; ++i) y[i] = sign * x[i];
      probe(y, [&](std::size_t idx) {
        if ((!best || idx < *best) && distance(items_[idx], x) < tol_) best = idx;
      });
    }
    return best;
  }

  // Appends x unconditionally and returns its index.
  std::size_t insert(const Coords& x) {
    const std::size_t idx = items_.size();
    items_.push_back(x);
    buckets_[hash(cell_of(x))].push_back(static_cast<std::uint32_t>(idx));
    return idx;
  }

  // Returns (index, inserted).
  std::pair<std::size_t, bool> find_or_insert(const Coords& x) {
    if (auto hit = find(x)) return {*hit, false};
    return {insert(x), true};
  }

  static double distance(const Coords& x, const Coords& y) {
    double minus = 0, plus = 0;
    for (std::size_t i = 0; i < N; ++i) {
      minus += (x[i] - y[i]) * (x[i] - y[i]);
      plus += (x[i] + y[i]) * (x[i] + y[i]);
    }
    return std::sqrt(std::min(minus, plus));
  }

 private:
  using Cell = std::array<std::int64_t, N>;

  Cell cell_of(const Coords& x) const {
    Cell c;
    for (std::size_t i = 0; i < N; ++i) c[i] = lattice(x[i]);
    return c;
  }

  std::int64_t lattice(double v) const {
    constexpr double kClamp = 4e18;
    const double s = std::floor(v / pitch_);
    return static_cast<std::int64_t>(s < -kClamp ? -kClamp : (s > kClamp ? kClamp : s));
  }

  static std::uint64_t hash(const Cell& c) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::int64_t v : c) {
      h ^= static_cast<std::uint64_t>(v) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

  template <class Fn>
  void probe(const Coords& x, Fn&& fn) const {
    Cell base = cell_of(x);
    std::array<std::int64_t, N> alt{};
    std::array<bool, N> has_alt{};
    for (std::size_t i = 0; i < N; ++i) {
      const double frac = x[i] / pitch_ - std::floor(x[i] / pitch_);
      if (frac * pitch_ < tol_) {
        has_alt[i] = true;
        alt[i] = base[i] - 1;
      } else if ((1 - frac) * pitch_ < tol_) {
        has_alt[i] = true;
        alt[i] = base[i] + 1;
      }
    }
    for (std::uint32_t mask = 0; mask < (1u << N); ++mask) {
      Cell c = base;
      bool skip = false;
      for (std::size_t i = 0; i < N; ++i) {
        if (mask & (1u << i)) {
          if (!has_alt[i]) {
            skip = true;
            break;
          }
          c[i] = alt[i];
        }
      }
      if (skip) continue;
      auto it = buckets_.find(hash(c));
      if (it == buckets_.end()) continue;
      for (std::uint32_t idx : it->second) fn(idx);
    }
  }

  double tol_;
  double pitch_;
  std::vector<Coords> items_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

}  // namespace hyperbot
