#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rwave/state.hpp"

namespace rwave {

// Deterministic random stream: a fixed 64-bit Mersenne Twister mapped to
// [0,1) doubles via the top 53 bits.  The sequence of draws made by each
// consumer is part of the reproducibility contract, so both the engine and
// the mapping are pinned here rather than delegated to distribution objects
// (whose draw counts vary between standard-library implementations).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

  double canonical() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * canonical(); }

  // Integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    const int span = hi - lo + 1;
    int k = static_cast<int>(canonical() * span);
    if (k >= span) k = span - 1;
    return lo + k;
  }

  std::uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Compactly supported (to tolerance) random reduced data: v and vt are each
// an independent sum of 1..3 bumps  amp * r^2 exp(-((r-mu)/sigma)^2), with
// mu in [1,5], sigma in [0.2,1], |amp| in [0.3,1] and a random sign.  Each
// bump is normalized to unit peak before scaling by amp, and samples below
// 1e-14 of the bump peak are flushed to exactly zero so the data have a
// sharp numerical support radius.  The draw order is fixed: for v then vt,
// first the bump count, then per bump (mu, sigma, amp magnitude, sign).
inline ReducedState random_bump_data(const RadialGrid& grid, SeededRng& rng) {
  auto field = [&](std::vector<double>& out) {
    out.assign(grid.n, 0.0);
    const int nb = rng.uniform_int(1, 3);
    std::vector<double> bump(grid.n);
    for (int b = 0; b < nb; ++b) {
      const double mu = rng.uniform(1.0, 5.0);
      const double sigma = rng.uniform(0.2, 1.0);
      const double amp = rng.uniform(0.3, 1.0);
      const double sign = rng.canonical() < 0.5 ? -1.0 : 1.0;
      double peak = 0.0;
      for (std::size_t j = 0; j < grid.n; ++j) {
        const double r = grid.r(j);
        const double q = (r - mu) / sigma;
        bump[j] = r * r * std::exp(-q * q);
        peak = std::max(peak, std::abs(bump[j]));
      }
      if (peak <= 0.0) continue;
      const double scale = sign * amp / peak;
      for (std::size_t j = 0; j < grid.n; ++j) {
        double x = bump[j] * scale;
        if (std::abs(x) < 1e-14 * amp) x = 0.0;
        out[j] += x;
      }
    }
    out[0] = 0.0;
  };
  ReducedState s = ReducedState::zero(grid);
  field(s.v);
  field(s.vt);
  return s;
}

inline ReducedState random_bump_data(const RadialGrid& grid, std::uint64_t seed) {
  SeededRng rng(seed);
  return random_bump_data(grid, rng);
}

}  // namespace rwave
