#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rwave/numerics.hpp"
#include "rwave/state.hpp"

namespace rwave {

// Per-steradian energy split of a reduced state.  total_E is stored as the
// literal floating-point sum of the four pieces, and functional_J as
// total_E - kinetic, so the additivity identities hold bit-exactly.
struct EnergyReport {
  double kinetic = 0.0;         //  (1/2) int vt^2 dr
  double gradient = 0.0;        //  (1/2) [ int (v')^2 dr - v(rmax)^2 / rmax ]
  double potential_term = 0.0;  // -(1/2) int V v^2 dr
  double sextic = 0.0;          //  int v^6 / (6 r^4) dr
  double total_E = 0.0;
  double functional_J = 0.0;
};

inline EnergyReport energy(const ReducedState& s, const std::function<double(double)>& V,
                           bool with_sextic = true) {
  const std::size_t n = s.grid.n;
  const double h = s.grid.h;
  std::vector<double> dv = deriv1(s.v, h);

  std::vector<double> integ(n);
  for (std::size_t j = 0; j < n; ++j) integ[j] = s.vt[j] * s.vt[j];
  const double kinetic = 0.5 * trapezoid(integ, h);

  for (std::size_t j = 0; j < n; ++j) integ[j] = dv[j] * dv[j];
  const double vb = s.v[n - 1];
  const double gradient = 0.5 * (trapezoid(integ, h) - vb * vb / s.grid.r_max());

  for (std::size_t j = 0; j < n; ++j) integ[j] = V(s.grid.r(j)) * s.v[j] * s.v[j];
  const double potential_term = -0.5 * trapezoid(integ, h);

  // v^6/r^4 = r^2 u^6 vanishes at the origin for bounded u.
  double sextic = 0.0;
  if (with_sextic) {
    integ[0] = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
      const double r = s.grid.r(j);
      const double w = s.v[j];
      const double w2 = w * w;
      integ[j] = (w2 * w2 * w2) / (r * r * r * r);
    }
    sextic = trapezoid(integ, h) / 6.0;
  }

  EnergyReport rep;
  rep.kinetic = kinetic;
  rep.gradient = gradient;
  rep.potential_term = potential_term;
  rep.sextic = sextic;
  rep.total_E = kinetic + gradient + potential_term + sextic;
  rep.functional_J = rep.total_E - kinetic;
  return rep;
}

// Exterior free-energy density integral beyond radius R (no 1/2 factors, no
// boundary compensation): int_{r >= R} (v')^2 + vt^2 dr, with R snapped to
// the nearest grid node.
struct ExteriorEnergy {
  double value = 0.0;
  double r_snapped = 0.0;  // node the request was snapped to
  std::size_t j0 = 0;
};

inline ExteriorEnergy exterior_energy_report(const ReducedState& s, double R) {
  const std::size_t n = s.grid.n;
  std::vector<double> dv = deriv1(s.v, s.grid.h);
  std::vector<double> integ(n);
  for (std::size_t j = 0; j < n; ++j) integ[j] = dv[j] * dv[j] + s.vt[j] * s.vt[j];
  ExteriorEnergy out;
  out.j0 = s.grid.nearest(R);
  out.r_snapped = s.grid.r(out.j0);
  out.value = trapezoid_range(integ, s.grid.h, out.j0, n - 1);
  return out;
}

inline double exterior_energy(const ReducedState& s, double R) {
  return exterior_energy_report(s, R).value;
}

// Reduced H1 x L2 distance between two states restricted to the annulus
// [a, b] (endpoints snapped to nodes): sqrt( int_a^b (dv')^2 + (dvt)^2 dr ).
inline double annulus_distance(const ReducedState& s1, const ReducedState& s2, double a,
                               double b) {
  if (!(s1.grid == s2.grid))
    throw std::invalid_argument("annulus_distance: states live on different grids");
  const std::size_t n = s1.grid.n;
  std::vector<double> wv(n), wt(n);
  for (std::size_t j = 0; j < n; ++j) {
    wv[j] = s1.v[j] - s2.v[j];
    wt[j] = s1.vt[j] - s2.vt[j];
  }
  std::vector<double> dw = deriv1(wv, s1.grid.h);
  std::vector<double> integ(n);
  for (std::size_t j = 0; j < n; ++j) integ[j] = dw[j] * dw[j] + wt[j] * wt[j];
  std::size_t ja = s1.grid.nearest(a);
  std::size_t jb = s1.grid.nearest(b);
  if (jb < ja) std::swap(ja, jb);
  return std::sqrt(trapezoid_range(integ, s1.grid.h, ja, jb));
}

// Largest radius at which either |v| or |vt| still exceeds the given relative
// threshold of its own global maximum; 0 for the zero state.
inline double support_radius(const ReducedState& s, double threshold = 1e-8) {
  const std::size_t n = s.grid.n;
  double mv = 0.0, mt = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    mv = std::max(mv, std::abs(s.v[j]));
    mt = std::max(mt, std::abs(s.vt[j]));
  }
  double rho = 0.0;
  for (std::size_t j = n; j-- > 0;) {
    const bool live = (mv > 0.0 && std::abs(s.v[j]) > threshold * mv) ||
                      (mt > 0.0 && std::abs(s.vt[j]) > threshold * mt);
    if (live) {
      rho = s.grid.r(j);
      break;
    }
  }
  return rho;
}

}  // namespace rwave
