#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rwave/potential.hpp"
#include "rwave/state.hpp"

namespace rwave {

// Coefficient a(t, r) of the reduced linear term.
struct CoefficientField {
  enum class Variant { Zero, StaticV, TruncatedVn, LinearizedAtSteady };
  Variant variant = Variant::Zero;
  Potential V = Potential::zero();
  double t_n = 0.0;                // truncation centre for TruncatedVn
  std::vector<double> uc_r, uc_w;  // steady profile (w = r u_c) for linearization

  static CoefficientField zero() { return {}; }
  static CoefficientField static_v(Potential pot);
  static CoefficientField truncated(Potential pot, double t_n);
  static CoefficientField linearized_at(Potential pot, std::vector<double> r,
                                        std::vector<double> w);

  // Linearization replaces the quintic term entirely.
  bool forces_linear() const { return variant == Variant::LinearizedAtSteady; }

  double a(double t, double r) const;

  // Equivalent field for evolving time-reflected data (t -> -t).
  CoefficientField time_reflected() const;
};

struct SolverConfig {
  double h = 0.01;
  double cfl = 0.5;  // dt = cfl * h; 0 < cfl <= 0.95
  double T = 10.0;
  enum class Boundary { CausalPad, FixedDomain };
  Boundary boundary = Boundary::CausalPad;
  double margin = 2.0;   // CausalPad: extra length beyond the stencil cone
  double r_max = 0.0;    // FixedDomain size
  bool nonlinearity = true;
  double blowup_cap = 1e6;
};

struct Trajectory {
  enum class Status { Completed, BlowUp };
  Status status = Status::Completed;
  double blow_t = 0.0, blow_r = 0.0;
  RadialGrid grid;
  double dt = 0.0;
  std::vector<double> times;  // snapshot times, strictly increasing, starting at 0
  std::vector<ReducedState> snapshots;
  std::vector<double> energy;  // discrete energy at each snapshot
};

// Explicit leapfrog on v: d_tt v = d_rr v + a(t,r) v - v^5/r^4, Dirichlet
// v(t,0) = 0, outer node pinned to its initial value.  With the CausalPad
// boundary the domain is data support + T/cfl + margin, so the nodes in the
// margin stay exactly zero for compactly supported data (the stencil cone
// expands one node per step, i.e. at speed h/dt = 1/cfl).  Negative evolution
// is a separate call on time-reflected data.
Trajectory evolve(const ReducedState& initial, const CoefficientField& coeff,
                  const SolverConfig& cfg, const std::vector<double>& snapshot_times);

// Evolve through +/- T by the (v, -vt) reflection when T < 0; returned
// snapshot times carry the sign of T.
Trajectory evolve_signed(const ReducedState& initial, const CoefficientField& coeff,
                         SolverConfig cfg, const std::vector<double>& snapshot_times);

// Reduced energy with the coefficient frozen at time t; the quintic term is
// included only when the nonlinearity flag is on.
double discrete_energy(const ReducedState& s, const CoefficientField& coeff, double t,
                       bool nonlinearity);

// Discrete L^5 over snapshots (within [t_lo, t_hi]) of the per-steradian
// L^10(r^2 dr) norm of u = v/r.
double spacetime_norm(const Trajectory& traj, double t_lo, double t_hi);

struct DependenceReport {
  std::vector<double> eps;
  std::vector<double> sup_dist;  // sup over snapshots of the reduced energy distance
  std::vector<double> ratio;     // sup_dist / eps
  bool ratios_bounded = false;   // consecutive ratios within [0.5, 2]
  double interior_distance = 0.0;  // sup distance on [0, interior_r], if requested
};

// Evolve base and base + eps*pert across a decade sweep of eps and measure
// the sup-in-time reduced energy distance.  If interior_r > 0 also record
// the distance restricted to [0, interior_r] at the largest eps.
DependenceReport continuous_dependence_experiment(
    const ReducedState& base, const ReducedState& pert, const CoefficientField& coeff,
    const SolverConfig& cfg, const std::vector<double>& eps = {1e-2, 1e-3, 1e-4},
    double interior_r = 0.0);

struct ScaleRobustnessReport {
  std::vector<double> lambda;
  std::vector<double> d;  // sup-in-time energy distance StaticV vs Zero
  bool small_end_decreases = false;  // d(lambda_min) < d(lambda closest to 1)
  bool large_end_decreases = false;  // d(lambda_max) < d(...)
};

// For each lambda evolve u_lambda(r) = lambda^(-1/2) profile(r/lambda) (at
// rest) under StaticV(V) and under Zero with the same nonlinearity, and
// report the sup-in-time energy distance d(lambda).
ScaleRobustnessReport scale_robustness_experiment(const std::function<double(double)>& profile,
                                                  const std::vector<double>& lambdas,
                                                  const Potential& V, const SolverConfig& cfg);

struct SupportGrowthReport {
  double rho0 = 0.0;
  std::vector<double> times;  // positive sample times
  std::vector<double> rho_forward, rho_backward;
  bool saturates_forward = false;   // rho(t) = rho0 + t within 2h at all samples
  bool saturates_backward = false;
  bool cone_bounded = false;        // rho(t) <= rho0 + |t| + 2h everywhere
  double max_overshoot = 0.0;       // max of rho(t) - (rho0 + |t|)
};

// Track support_radius (threshold 1e-8) along linear evolution in both time
// directions at integer sample times.
SupportGrowthReport support_growth_experiment(const ReducedState& initial,
                                              const CoefficientField& coeff, SolverConfig cfg);

}  // namespace rwave
