#pragma once

#include <cstddef>
#include <vector>

#include "rwave/potential.hpp"

namespace rwave {

// ---- single shot ----------------------------------------------------------

struct ShootOptions {
  double R_big = 500.0;   // outer integration radius
  double dr_out = 0.05;   // profile sample spacing (R_big should be a multiple)
  double rtol = 1e-10;
  double atol = 1e-13;
  double cap = 1e6;       // |w| threshold treated as blow-up
  double r_series = 1e-3; // hand-off radius from the origin series to the integrator
  bool store_profile = true;
};

enum class ShootClass { Decay, Blow, Indeterminate };

struct ShootResult {
  ShootClass cls = ShootClass::Indeterminate;
  double a = 0.0;          // initial slope w'(0)
  double c = 0.0;          // tail plateau (Decay only)
  int blow_sign = 0;       // sign of the diverging branch (Blow only)
  double r_end = 0.0;      // radius where integration stopped
  int sign_changes = 0;    // sign changes of w along the profile
  double ell = 0.0;        // three-mode fit: w ~ ell + A r + K r^-gamma
  double A_lin = 0.0;
  double K_dec = 0.0;
  double gamma_fit = 0.0;
  std::vector<double> r, w;  // profile samples (empty unless store_profile)
};

// Integrate w'' = -V w + w^5 / r^4 outward from the origin series
// w = a r + (a^5 - V(0) a) r^3 / 6, classifying the endpoint behaviour by a
// three-mode fit ell + A r + K r^-gamma at {R, R/2, R/4}.
ShootResult shoot(double a, const Potential& V, const ShootOptions& opt = {});

// ---- census ----------------------------------------------------------------

struct CensusOptions {
  double A_max = 5.0;        // scan a in [0, A_max]
  double step = 0.05;        // coarse scan spacing
  double bisect_tol = 1e-10;
  ShootOptions shot;         // scan-level shot options
  std::vector<double> ladder = {1.0, 4.0, 16.0};  // R_big multipliers for root polish
  double rep_dr_out = 0.01;  // representative profile spacing
  bool include_mirrors = true;
};

struct SteadyState {
  double a = 0.0;
  double c = 0.0;
  int sign_changes = 0;
  double J = 0.0;            // steady energy functional (per steradian)
  double residual_max = 0.0; // max-norm equation residual of the profile
  std::vector<double> r, w;  // representative profile on [0, R_big]
};

struct CensusResult {
  std::vector<SteadyState> states;  // sorted by a; contains 0 and mirrors
  std::vector<double> roots;        // positive roots (slope values), ascending
  int shots = 0;                    // total integrations performed
};

// Slope census on [0, A_max]: coarse classification, 10x offset rescan around
// decay hits, bisection between adjacent opposite-sign blow-ups, then root
// polish on a ladder of enlarged integration radii with adaptive re-bracketing.
CensusResult census(const Potential& V, const CensusOptions& opt = {});

// Max-norm residual of -u'' - (2/r) u' - V u + u^5 over [r_lo, r_hi], where
// u = w/r is evaluated from a uniform profile (r_k = k*dr, r_0 = 0 implied)
// with fourth-order stencils and even mirroring at the origin.
double steady_residual_max(const std::vector<double>& r, const std::vector<double>& w,
                           const Potential& V, double a, double r_lo, double r_hi);

// ---- exterior problem -------------------------------------------------------

struct ExteriorSolution {
  double lambda = 0.0;   // u(R)
  double R = 0.0;
  double R_inf = 0.0;
  std::vector<double> r, u;  // samples on [R, R_inf], ascending
};

// Integrate the steady equation inward from R_inf = max(10 R, 200), starting
// on the c/r tail corrected by one Picard iterate, and report lambda = u(R).
ExteriorSolution exterior_solve(double c, const Potential& V, double R);

// Invert lambda(c) by bisection on [0, c_max]; lambda(c) is increasing.
double c_of_lambda(double lambda, const Potential& V, double R, double c_max = 100.0,
                   double tol = 1e-10);

// ---- tail fit ---------------------------------------------------------------

struct DecayFit {
  double ell = 0.0;       // plateau, by three-point Richardson at the window top
  double gamma = 0.0;     // power-law exponent of |w - ell| from least squares
  double K = 0.0;
  double rms_residual = 0.0;
  bool below_floor = false;  // |w - ell| under 1e-12 scale across the window
};

DecayFit decay_fit(const std::vector<double>& r, const std::vector<double>& w, double r_lo,
                   double r_hi);

}  // namespace rwave
