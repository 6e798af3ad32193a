#include "hyperbot/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperbot {

namespace {
constexpr double kCellClamp = 1e15;
}

NeighborGrid::NeighborGrid(std::span<const Complex> points, double delta)
    : delta_(delta), half_chord_(2 * std::sinh(delta / 2)) {
  if (!(delta > 0)) throw std::invalid_argument("NeighborGrid: delta must be positive");
  cells_.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::int64_t row = row_of(points[i]);
    cells_[key(row, cell_of(row, points[i].real()))].push_back(static_cast<std::uint32_t>(i));
  }
}

std::int64_t NeighborGrid::row_of(Complex z) const {
  return static_cast<std::int64_t>(std::floor(std::log(z.imag()) / delta_));
}

// Cell width of row k bounds |dx| for pairs with both heights below e^{(k+2) delta}.
std::int64_t NeighborGrid::cell_of(std::int64_t row, double x) const {
  const double width = half_chord_ * std::exp(static_cast<double>(row + 2) * delta_);
  const double cell = std::clamp(std::floor(x / width), -kCellClamp, kCellClamp);
  return static_cast<std::int64_t>(cell);
}

// d(z, w) < delta implies |dx| < 2 sinh(delta / 2) sqrt(Im z Im w).
double NeighborGrid::reach_between(std::int64_t row, std::int64_t other) const {
  return half_chord_ * std::exp(static_cast<double>(std::max(row, other) + 1) * delta_);
}

std::uint64_t NeighborGrid::key(std::int64_t row, std::int64_t cell) {
  const auto r = static_cast<std::uint64_t>(row);
  const auto c = static_cast<std::uint64_t>(cell);
  return (r * 0x9E3779B97F4A7C15ull) ^ (c + 0x632BE59BD9B4E019ull + (r << 6) + (r >> 2));
}

}  // namespace hyperbot
