#pragma once

#include <cstddef>
#include <vector>

#include "rwave/state.hpp"

namespace rwave {

// Characteristic representation of a free radial wave on the line: the odd
// extension of v to s in [-L, L] is split into left/right movers with
// v(t, r) = F(r - t) - F(-r - t).  fp and gp are the mover derivatives on
// the lattice s_k = -L + k*h; F is the cumulative trapezoid of fp with
// F(-L) = 0, and C the cumulative trapezoid of fp^2 (the flux profile that
// exterior-energy bookkeeping is built on).
struct CharacteristicPair {
  double h = 0.0;
  double L = 0.0;
  std::vector<double> fp;  // f'(s_k)
  std::vector<double> gp;  // g'(s_k) == f'(-s_k)
  std::vector<double> F;   // cumulative integral of f'
  std::vector<double> C;   // cumulative integral of f'^2

  std::size_t size() const { return fp.size(); }
  double s(std::size_t k) const { return -L + h * static_cast<double>(k); }

  // Linear interpolation with the natural clamps: mover derivatives vanish
  // outside the lattice, F is constant beyond either end.
  double fp_at(double x) const;
  double F_at(double x) const;
  double C_at(double x) const;
  double total_flux() const { return C.back(); }
};

// Build the characteristic pair of a reduced state.  The redundant identity
// g'(s) = f'(-s) is verified on construction.
CharacteristicPair split(const ReducedState& s);

// Same, after zero-padding the state so the lattice covers [-L_min, L_min].
CharacteristicPair split_padded(const ReducedState& s, double L_min);

// Free evolution sampled on a radial grid at time t (positive or negative).
// Requires grid.r_max() + |t| <= L.  v(t, 0) is exactly zero.
ReducedState evolve_free(const CharacteristicPair& pair, double t, const RadialGrid& grid);

// Exterior free-energy integral of the evolved state at time t beyond radius
// R, evaluated in transport form so left/right flux separates exactly:
// int_{r>=R} (v')^2 + (vt)^2 dr with v'(r) = f'(r-t) + f'(-r-t).
double exterior_energy_free(const CharacteristicPair& pair, double t, double R);

enum class Direction { Forward, Backward, Both };

struct ChannelReport {
  Direction direction = Direction::Both;
  double margin = 0.0;           // best-direction minimum of exterior(t) - e0/2
  double margin_forward = 0.0;   // min over the forward sweep and its asymptote
  double margin_backward = 0.0;  // same for backward evolution
  double e0 = 0.0;               // exterior energy at t = 0 beyond R
  double e_plus = 0.0;           // asymptotic outgoing exterior energy, t -> +inf
  double e_minus = 0.0;          // asymptotic outgoing exterior energy, t -> -inf
  double r_snapped = 0.0;
  double t_sweep = 0.0;
};

// Decide in which time direction(s) the exterior energy beyond R + |t| stays
// at or above half its initial value, sweeping |t| up to 4*(support + R) and
// including the asymptotic limits.  e_plus + e_minus == e0 holds bit-exactly
// by construction.
ChannelReport channel_direction(const CharacteristicPair& pair, const ReducedState& initial,
                                double R);

// Smallest lattice time t0 >= 0 such that the outgoing flux beyond the cone
// r >= t - t0 is at least half the total flux for every later time.
double forward_time(const CharacteristicPair& pair);

}  // namespace rwave
