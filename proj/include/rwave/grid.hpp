#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rwave {

// Uniform radial grid r_j = j*h, j = 0..n-1.  The origin node is always
// present and r_0 == 0 exactly.
struct RadialGrid {
  double h = 0.0;
  std::size_t n = 0;

  RadialGrid() = default;
  RadialGrid(double spacing, std::size_t nodes) : h(spacing), n(nodes) {
    if (!(h > 0.0)) throw std::invalid_argument("RadialGrid: spacing must be positive");
    if (n < 16) throw std::invalid_argument("RadialGrid: need at least 16 nodes");
  }

  // Grid covering [0, r_max] (r_max rounded to the nearest multiple of h).
  static RadialGrid with_rmax(double spacing, double r_max) {
    if (!(spacing > 0.0)) throw std::invalid_argument("RadialGrid: spacing must be positive");
    auto steps = static_cast<std::size_t>(std::llround(r_max / spacing));
    return RadialGrid(spacing, std::max<std::size_t>(steps + 1, 16));
  }

  double r(std::size_t j) const { return h * static_cast<double>(j); }
  double r_max() const { return r(n - 1); }

  std::vector<double> nodes() const {
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = r(j);
    return out;
  }

  // Index of the node nearest to radius x, clamped to the grid.
  std::size_t nearest(double x) const {
    if (x <= 0.0) return 0;
    auto j = static_cast<long long>(std::llround(x / h));
    if (j < 0) j = 0;
    if (j >= static_cast<long long>(n)) j = static_cast<long long>(n) - 1;
    return static_cast<std::size_t>(j);
  }

  bool operator==(const RadialGrid&) const = default;
};

}  // namespace rwave
