#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rwave/dalembert.hpp"
#include "rwave/energy.hpp"
#include "rwave/evolver.hpp"
#include "rwave/rng.hpp"

using namespace rwave;

namespace {

ReducedState gaussian_state(const RadialGrid& g) {
  ReducedState s = ReducedState::zero(g);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double r = g.r(j);
    s.v[j] = r * std::exp(-r * r);
  }
  return s;
}

ReducedState profile_state(const RadialGrid& g) {
  ReducedState s = ReducedState::zero(g);
  for (std::size_t j = 0; j < g.n; ++j) s.v[j] = oracle::w_prof(g.r(j));
  return s;
}

ReducedState bump_state(const RadialGrid& g, double lo, double hi) {
  ReducedState s = ReducedState::zero(g);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double r = g.r(j);
    if (r > lo && r < hi) s.v[j] = std::exp(-1.0 / ((r - lo) * (hi - r)));
  }
  return s;
}

SolverConfig fixed_cfg(double h, double T, double r_max) {
  SolverConfig cfg;
  cfg.h = h;
  cfg.T = T;
  cfg.boundary = SolverConfig::Boundary::FixedDomain;
  cfg.r_max = r_max;
  return cfg;
}

}  // namespace

TEST_CASE("zero data stays exactly zero") {
  RadialGrid g(0.02, 601);
  const Trajectory traj = evolve(ReducedState::zero(g), CoefficientField::static_v(
                                     Potential::manufactured_star()),
                                 fixed_cfg(0.02, 2.0, 12.0), {0.0, 1.0, 2.0});
  REQUIRE(traj.status == Trajectory::Status::Completed);
  for (const auto& s : traj.snapshots)
    for (std::size_t j = 0; j < s.grid.n; ++j) {
      CHECK(s.v[j] == 0.0);
      CHECK(s.vt[j] == 0.0);
    }
}

TEST_CASE("closed-form static profile is a numerical fixed point") {
  const double h = 0.01;
  RadialGrid g = RadialGrid::with_rmax(h, 60.0);
  const ReducedState init = profile_state(g);
  const Trajectory traj =
      evolve(init, CoefficientField::static_v(Potential::manufactured_star()),
             fixed_cfg(h, 10.0, 60.0), {0.0, 2.5, 5.0, 7.5, 10.0});
  REQUIRE(traj.status == Trajectory::Status::Completed);
  double worst = 0.0;
  for (const auto& s : traj.snapshots)
    worst = std::max(worst, annulus_distance(s, init, 0.0, 55.0));
  CHECK(worst < 1e-3);  // second-order discretization floor at h = 0.01
}

TEST_CASE("linear evolution with zero potential matches the free engine") {
  auto max_diff = [](double h) {
    RadialGrid g = RadialGrid::with_rmax(h, 12.0);
    const ReducedState init = bump_state(g, 1.0, 2.0);
    SolverConfig cfg = fixed_cfg(h, 4.0, 12.0);
    cfg.nonlinearity = false;
    const Trajectory traj = evolve(init, CoefficientField::zero(), cfg, {0.0, 4.0});
    const ReducedState free4 = evolve_free(split_padded(init, 20.0), 4.0, g);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n; ++j)
      worst = std::max(worst, std::abs(traj.snapshots.back().v[j] - free4.v[j]));
    return worst;
  };
  const double e1 = max_diff(0.02), e2 = max_diff(0.01);
  CHECK(e2 < 2e-3);
  CHECK(e1 / e2 > 3.0);
  CHECK(e1 / e2 < 5.0);
}

TEST_CASE("discrete energy of static data equals the energy functional") {
  RadialGrid g(0.01, 3001);
  const ReducedState s = profile_state(g);
  const Potential V = Potential::manufactured_star();
  const double de = discrete_energy(s, CoefficientField::static_v(V), 0.0, true);
  const auto rep = energy(s, [&](double r) { return V(r); });
  CHECK(de == doctest::Approx(rep.total_E).epsilon(1e-12));
}

TEST_CASE("energy drift of nonlinear evolution stays second-order small") {
  RadialGrid g = RadialGrid::with_rmax(0.01, 8.0);
  const ReducedState init = gaussian_state(g);
  SolverConfig cfg;
  cfg.h = 0.01;
  cfg.cfl = 0.5;
  cfg.T = 20.0;
  const Trajectory traj =
      evolve(init, CoefficientField::static_v(Potential::manufactured_star()), cfg,
             {0.0, 5.0, 10.0, 15.0, 20.0});
  REQUIRE(traj.status == Trajectory::Status::Completed);
  const double e0 = traj.energy.front();
  REQUIRE(e0 != 0.0);
  double drift = 0.0;
  for (double e : traj.energy) drift = std::max(drift, std::abs(e - e0) / std::abs(e0));
  CHECK(drift < 1e-4);
}

TEST_CASE("spacetime norm of a static trajectory is T^(1/5) times the profile norm") {
  const double h = 0.01;
  RadialGrid g = RadialGrid::with_rmax(h, 60.0);
  const ReducedState init = profile_state(g);
  std::vector<double> snaps;
  for (int k = 0; k <= 8; ++k) snaps.push_back(0.25 * k);
  const Trajectory traj =
      evolve(init, CoefficientField::static_v(Potential::manufactured_star()),
             fixed_cfg(h, 2.0, 60.0), snaps);
  const double measured = spacetime_norm(traj, 0.0, 2.0);
  const double I10 = oracle::romberg(
      [](double r) { return r * r * std::pow(1.0 + r * r, -5.0); }, 0.0, 60.0);
  const double expected = std::pow(2.0, 0.2) * std::pow(I10, 0.1);
  CHECK(measured == doctest::Approx(expected).epsilon(2e-3));
}

TEST_CASE("time reversibility of the stepper") {
  const double h = 0.01;
  RadialGrid g = RadialGrid::with_rmax(h, 30.0);
  const ReducedState init = gaussian_state(g);
  const CoefficientField coeff =
      CoefficientField::static_v(Potential::manufactured_star());
  const SolverConfig cfg = fixed_cfg(h, 5.0, 30.0);
  const Trajectory fwd = evolve(init, coeff, cfg, {0.0, 5.0});
  ReducedState turned = fwd.snapshots.back();
  for (double& x : turned.vt) x = -x;
  const Trajectory back = evolve(turned, coeff, cfg, {0.0, 5.0});
  const ReducedState& fin = back.snapshots.back();
  double worst = 0.0;
  for (std::size_t j = 0; j < g.n; ++j) {
    worst = std::max(worst, std::abs(fin.v[j] - init.v[j]));
    worst = std::max(worst, std::abs(-fin.vt[j] - init.vt[j]));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("causal pad keeps the outer margin exactly zero") {
  SolverConfig cfg;
  cfg.h = 0.01;
  cfg.cfl = 0.5;
  cfg.T = 3.0;
  cfg.boundary = SolverConfig::Boundary::CausalPad;
  cfg.margin = 2.0;
  RadialGrid g = RadialGrid::with_rmax(cfg.h, 4.0);
  const ReducedState init = bump_state(g, 1.0, 2.0);
  const Trajectory traj = evolve(init, CoefficientField::zero(), cfg, {0.0, 3.0});
  const RadialGrid& gg = traj.grid;
  // the stencil cone expands at speed h/dt = 1/cfl
  const double reach = 2.0 + 2.0 * cfg.h + cfg.T / cfg.cfl;
  CHECK(gg.r_max() >= reach + 1.0);
  const ReducedState& last = traj.snapshots.back();
  std::size_t checked = 0;
  for (std::size_t j = 0; j < gg.n; ++j)
    if (gg.r(j) > reach) {
      CHECK(last.v[j] == 0.0);
      CHECK(last.vt[j] == 0.0);
      ++checked;
    }
  CHECK(checked > 0);
}

TEST_CASE("small weighted-norm potentials keep the energy nonnegative") {
  const Potential base = Potential::gaussian(1.0, 1.0);
  const double scale = 0.1 / y_norm(base);
  const Potential V = Potential::scaled(scale, base);
  RadialGrid g(0.01, 1201);
  SeededRng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const ReducedState s = random_bump_data(g, rng);
    CHECK(discrete_energy(s, CoefficientField::static_v(V), 0.0, true) >= 0.0);
  }
}

TEST_CASE("strongly amplifying potential triggers the blowup cap") {
  const Potential V = Potential::scaled(100.0, Potential::gaussian(1.0, 2.0));
  RadialGrid g(0.01, 2001);
  const ReducedState init = gaussian_state(g);
  SolverConfig cfg = fixed_cfg(0.01, 5.0, 20.0);
  cfg.nonlinearity = false;  // pure linear amplification
  const Trajectory traj = evolve(init, CoefficientField::static_v(V), cfg, {0.0, 5.0});
  CHECK(traj.status == Trajectory::Status::BlowUp);
  CHECK(traj.blow_t > 0.0);
  CHECK(traj.blow_t <= 5.0);
}

TEST_CASE("continuous dependence: bounded ratios and causal disconnection") {
  const double h = 0.02;
  RadialGrid g = RadialGrid::with_rmax(h, 10.0);
  const ReducedState base = gaussian_state(g);
  const ReducedState pert = bump_state(g, 5.0, 7.0);
  const DependenceReport rep = continuous_dependence_experiment(
      base, pert, CoefficientField::static_v(Potential::manufactured_star()),
      fixed_cfg(h, 2.0, 10.0), {1e-2, 1e-3, 1e-4}, 0.5);
  CHECK(rep.ratios_bounded);
  for (std::size_t i = 1; i < rep.ratio.size(); ++i) {
    CHECK(rep.ratio[i] / rep.ratio[i - 1] > 0.5);
    CHECK(rep.ratio[i] / rep.ratio[i - 1] < 2.0);
  }
  // the perturbation lives in [5,7]; its stencil cone (speed 1/cfl = 2) cannot
  // reach [0, 0.5] within T = 2, so the interior distance vanishes identically
  CHECK(rep.interior_distance == 0.0);
}

TEST_CASE("scale robustness with zero potential is identically zero") {
  const ScaleRobustnessReport rep = scale_robustness_experiment(
      oracle::u_prof, {0.5, 1.0, 2.0}, Potential::zero(), fixed_cfg(0.02, 1.0, 12.0));
  REQUIRE(rep.d.size() == 3);
  for (double d : rep.d) CHECK(d == 0.0);
}

TEST_CASE("support growth bookkeeping") {
  SolverConfig cfg;
  cfg.h = 0.01;
  cfg.cfl = 0.5;
  cfg.T = 5.0;
  cfg.nonlinearity = false;
  RadialGrid g = RadialGrid::with_rmax(cfg.h, 4.0);

  const SupportGrowthReport zero_rep =
      support_growth_experiment(ReducedState::zero(g), CoefficientField::zero(), cfg);
  CHECK(zero_rep.rho0 == 0.0);
  for (double rho : zero_rep.rho_forward) CHECK(rho == 0.0);
  CHECK(zero_rep.cone_bounded);

  const ReducedState init = bump_state(g, 1.0, 2.0);
  const SupportGrowthReport rep = support_growth_experiment(
      init, CoefficientField::static_v(Potential::manufactured_star()), cfg);
  CHECK(rep.rho0 == doctest::Approx(2.0).epsilon(0.03));
  REQUIRE(rep.times.size() == rep.rho_forward.size());
  REQUIRE(rep.times.size() == rep.rho_backward.size());
  // hard stencil bound: nothing propagates faster than one node per step
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    CHECK(rep.rho_forward[i] <= rep.rho0 + rep.times[i] / cfg.cfl + 2.0 * cfg.h + 1e-12);
    CHECK(rep.rho_backward[i] <= rep.rho0 + rep.times[i] / cfg.cfl + 2.0 * cfg.h + 1e-12);
  }
}
