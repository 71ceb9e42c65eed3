#pragma once

#include <cstddef>
#include <vector>

#include "rwave/dalembert.hpp"
#include "rwave/evolver.hpp"
#include "rwave/potential.hpp"
#include "rwave/state.hpp"
#include "rwave/steady.hpp"

namespace rwave {

// Outgoing radiation extracted from one trajectory snapshot.  The mover
// derivative f' lives on rho = r - T_ex inside the extraction window and is
// zero outside; the induced free wave is v(t, r) = f(r - t) - f(-r - t).
struct RadiationField {
  CharacteristicPair pair;  // dalembert representation; gp mirrors fp
  double T_ex = 0.0;
  double rho_lo = 0.0, rho_hi = 0.0;  // support window of f'
  double incoming_residual = 0.0;     // L2 of the incoming mover on the window

  // Free evolution sampled on a grid.  The pair's movers vanish outside
  // [rho_lo, rho_hi], so the clamped characteristic interpolation is exact
  // for every time, with no lattice-size restriction.
  ReducedState free_wave(double t, const RadialGrid& grid) const;
};

// Split the snapshot at time T_ex into movers on the window [r_a, r_b]:
// f'(rho) = (v' - vt)/2 at r = rho + T_ex, zero-extended; the incoming
// component (v' + vt)/2 is reported as an L2 residual, not used further.
RadiationField extract_radiation(const Trajectory& traj, double T_ex, double r_a, double r_b);

// For each requested time t (a snapshot time), the reduced energy distance
// between the trajectory and the radiation's free wave on [t - A, r_max].
std::vector<double> exterior_mismatch(const Trajectory& traj, const RadiationField& rad,
                                      double A, const std::vector<double>& times);

struct SigmaDistance {
  double distance = 0.0;
  std::size_t argmin = 0;  // index into census.states
  double argmin_a = 0.0;   // slope parameter of the minimizer (sign included)
  bool mirrored = false;   // true when the sign-flipped copy was closer
};

// Minimum over census entries and their sign mirrors of the reduced energy
// distance between state and the static pair (w_c, 0) on [0, R_int].
// Profiles are interpolated onto the state grid and continued by their
// asymptotic plateau c beyond the stored samples.
SigmaDistance distance_to_sigma(const ReducedState& state, const CensusResult& census,
                                double R_int);

struct ChannelMeter {
  double delta_plus = 0.0;   // min over forward samples of exterior energy beyond R + t
  double delta_minus = 0.0;  // same for the backward evolution
  double t_at_plus = 0.0;    // sample time attaining delta_plus
  double t_at_minus = 0.0;
};

// Evolve the data both ways to T_probe under the static potential (full
// nonlinearity) and meter the exterior energy beyond the expanding radius
// R + |t| at sample times 0, dt_sample, ..., T_probe.
ChannelMeter channel_meter(const ReducedState& initial, const Potential& V, double R,
                           double T_probe, const SolverConfig& cfg = {},
                           double dt_sample = 0.25);

struct ResolutionConfig {
  std::vector<double> ladder = {10.0, 20.0, 30.0, 40.0};
  double A_buf = 5.0;       // interior window per rung is [0, T_k - A_buf]
  double A_mismatch = 5.0;  // exterior comparison region is [T_k - A, r_max]
  double slack = 0.10;      // allowed fractional increase between rungs
  double final_factor = 0.25;
};

struct ResolutionReport {
  std::vector<double> ladder;
  std::vector<double> distance;       // distance to the census per rung
  std::vector<std::size_t> argmin;    // census index per rung
  std::vector<double> argmin_a;       // slope of the per-rung minimizer
  std::vector<double> mismatch;       // exterior mismatch at the rung time
  std::vector<double> incoming;       // extraction quality per rung
  double initial_perturbation = 0.0;  // distance of the data to the census
  bool nonincreasing = false;         // distance series within the slack
  bool final_small = false;           // last distance <= final_factor * initial
  bool mismatch_improves = false;     // mismatch decreases over the last two rungs
};

// Ladder experiment: evolve once, and at each rung T_k extract radiation,
// subtract its free wave, and measure the distance of the remainder to the
// census on the interior window plus the exterior mismatch of the full state.
ResolutionReport resolution_experiment(const ReducedState& initial, const Potential& V,
                                       const CensusResult& census, const SolverConfig& cfg,
                                       const ResolutionConfig& rcfg = {});

}  // namespace rwave
