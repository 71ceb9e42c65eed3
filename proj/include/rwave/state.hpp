#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "rwave/grid.hpp"

namespace rwave {

// Reduced representation (v, v_t) with v = r*u.  v(0) == 0 by construction.
struct ReducedState {
  RadialGrid grid;
  std::vector<double> v;
  std::vector<double> vt;
  double t = 0.0;

  ReducedState() = default;
  ReducedState(RadialGrid g, std::vector<double> v_, std::vector<double> vt_, double time = 0.0)
      : grid(g), v(std::move(v_)), vt(std::move(vt_)), t(time) {
    if (v.size() != grid.n || vt.size() != grid.n)
      throw std::invalid_argument("ReducedState: array sizes must match the grid");
  }

  static ReducedState zero(const RadialGrid& g) {
    return ReducedState(g, std::vector<double>(g.n, 0.0), std::vector<double>(g.n, 0.0));
  }
};

// Physical-field representation (u, u_t).
struct FieldState {
  RadialGrid grid;
  std::vector<double> u;
  std::vector<double> ut;
  double t = 0.0;

  FieldState() = default;
  FieldState(RadialGrid g, std::vector<double> u_, std::vector<double> ut_, double time = 0.0)
      : grid(g), u(std::move(u_)), ut(std::move(ut_)), t(time) {
    if (u.size() != grid.n || ut.size() != grid.n)
      throw std::invalid_argument("FieldState: array sizes must match the grid");
  }
};

// v = r*u nodewise; the origin node is exactly zero.
inline ReducedState reduce(const FieldState& s) {
  std::vector<double> v(s.grid.n), vt(s.grid.n);
  v[0] = 0.0;
  vt[0] = 0.0;
  for (std::size_t j = 1; j < s.grid.n; ++j) {
    const double r = s.grid.r(j);
    v[j] = r * s.u[j];
    vt[j] = r * s.ut[j];
  }
  return ReducedState(s.grid, std::move(v), std::move(vt), s.t);
}

// u = v/r for j >= 1; the origin value is filled by quadratic extrapolation
// through the first three interior nodes.
inline FieldState lift(const ReducedState& s) {
  if (s.grid.n < 4) throw std::invalid_argument("lift: grid too small");
  std::vector<double> u(s.grid.n), ut(s.grid.n);
  for (std::size_t j = 1; j < s.grid.n; ++j) {
    const double r = s.grid.r(j);
    u[j] = s.v[j] / r;
    ut[j] = s.vt[j] / r;
  }
  u[0] = 3.0 * u[1] - 3.0 * u[2] + u[3];
  ut[0] = 3.0 * ut[1] - 3.0 * ut[2] + ut[3];
  return FieldState(s.grid, std::move(u), std::move(ut), s.t);
}

}  // namespace rwave
