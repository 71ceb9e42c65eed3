#include "rwave/evolver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwave/energy.hpp"
#include "rwave/numerics.hpp"

namespace rwave {

CoefficientField CoefficientField::static_v(Potential pot) {
  CoefficientField c;
  c.variant = Variant::StaticV;
  c.V = std::move(pot);
  return c;
}

CoefficientField CoefficientField::truncated(Potential pot, double t_n) {
  CoefficientField c;
  c.variant = Variant::TruncatedVn;
  c.V = std::move(pot);
  c.t_n = t_n;
  return c;
}

CoefficientField CoefficientField::linearized_at(Potential pot, std::vector<double> r,
                                                 std::vector<double> w) {
  if (r.size() != w.size() || r.size() < 2)
    throw std::invalid_argument("CoefficientField::linearized_at: bad steady profile");
  CoefficientField c;
  c.variant = Variant::LinearizedAtSteady;
  c.V = std::move(pot);
  c.uc_r = std::move(r);
  c.uc_w = std::move(w);
  return c;
}

namespace {

// u_c(r) from the stored reduced profile w = r u_c, linearly interpolated,
// with the origin value continued from the first interior sample.
double uc_interp(const std::vector<double>& pr, const std::vector<double>& pw, double r) {
  if (r >= pr.back()) {
    const double w = pw.back();
    return pr.back() > 0.0 ? w / pr.back() : 0.0;
  }
  const auto it = std::upper_bound(pr.begin(), pr.end(), r);
  std::size_t i = static_cast<std::size_t>(it - pr.begin());
  if (i == 0) i = 1;
  const double t = (r - pr[i - 1]) / (pr[i] - pr[i - 1]);
  const double w = pw[i - 1] + t * (pw[i] - pw[i - 1]);
  if (r > 0.0) return w / r;
  return pr[1] > 0.0 ? pw[1] / pr[1] : 0.0;
}

}  // namespace

double CoefficientField::a(double t, double r) const {
  switch (variant) {
    case Variant::Zero:
      return 0.0;
    case Variant::StaticV:
      return V(r);
    case Variant::TruncatedVn: {
      const double cut = std::abs(t - t_n);
      return r >= cut ? V(r) : V(cut);
    }
    case Variant::LinearizedAtSteady: {
      const double uc = uc_interp(uc_r, uc_w, r);
      const double uc2 = uc * uc;
      return V(r) - 5.0 * uc2 * uc2;
    }
  }
  return 0.0;
}

CoefficientField CoefficientField::time_reflected() const {
  CoefficientField c = *this;
  if (variant == Variant::TruncatedVn) c.t_n = -t_n;
  return c;
}

namespace {

void validate(const SolverConfig& cfg) {
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.95))
    throw std::invalid_argument("SolverConfig: cfl must satisfy 0 < cfl <= 0.95");
  if (!(cfg.h > 0.0)) throw std::invalid_argument("SolverConfig: h must be positive");
  if (!(cfg.T >= 0.0)) throw std::invalid_argument("evolve: T must be nonnegative");
}

}  // namespace

Trajectory evolve(const ReducedState& initial, const CoefficientField& coeff,
                  const SolverConfig& cfg, const std::vector<double>& snapshot_times) {
  validate(cfg);
  if (initial.v[0] != 0.0 || initial.vt[0] != 0.0)
    throw std::invalid_argument("evolve: reduced data must vanish at the origin");
  if (std::abs(initial.grid.h - cfg.h) > 1e-15 * cfg.h)
    throw std::invalid_argument("evolve: initial data spacing must match cfg.h");

  const double dt = cfg.cfl * cfg.h;
  const auto N = static_cast<std::size_t>(std::llround(cfg.T / dt));

  // Domain: never truncate the data; CausalPad adds the stencil cone T/cfl
  // (one node per step) plus the safety margin.
  double r_dom = initial.grid.r_max();
  if (cfg.boundary == SolverConfig::Boundary::CausalPad) {
    const double support = support_radius(initial, 1e-14);
    r_dom = std::max(r_dom, support + cfg.T / cfg.cfl + cfg.margin);
  } else {
    r_dom = std::max(r_dom, cfg.r_max);
  }
  RadialGrid grid = RadialGrid::with_rmax(cfg.h, r_dom);
  const std::size_t n = grid.n;

  std::vector<double> vm(n, 0.0), vtm(n, 0.0);
  std::copy(initial.v.begin(), initial.v.end(), vm.begin());
  std::copy(initial.vt.begin(), initial.vt.end(), vtm.begin());

  Trajectory traj;
  traj.grid = grid;
  traj.dt = dt;

  // Snapshot step indices (nearest step, deduplicated).
  std::vector<std::size_t> snap_steps;
  for (double t : snapshot_times) {
    auto k = static_cast<long long>(std::llround(t / dt));
    if (k < 0) k = 0;
    if (k > static_cast<long long>(N)) k = static_cast<long long>(N);
    snap_steps.push_back(static_cast<std::size_t>(k));
  }
  std::sort(snap_steps.begin(), snap_steps.end());
  snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());

  const bool nonlin = cfg.nonlinearity && !coeff.forces_linear();
  auto energy_of = [&](const ReducedState& s, double t) {
    return energy(s, [&](double r) { return coeff.a(t, r); }, nonlin).total_E;
  };
  auto emit = [&](std::size_t step, const std::vector<double>& v, const std::vector<double>& vt) {
    const double t = static_cast<double>(step) * dt;
    ReducedState s(grid, v, vt, t);
    traj.energy.push_back(energy_of(s, t));
    traj.times.push_back(t);
    traj.snapshots.push_back(std::move(s));
  };

  auto snap_it = snap_steps.begin();
  if (snap_it != snap_steps.end() && *snap_it == 0) {
    emit(0, vm, vtm);
    ++snap_it;
  }
  if (N == 0) return traj;

  // Static coefficient samples; the truncated variant updates a prefix each
  // step with the scalar V(|t - t_n|).
  std::vector<double> acoef(n);
  for (std::size_t j = 0; j < n; ++j) acoef[j] = coeff.a(0.0, grid.r(j));
  std::vector<double> vstat;
  if (coeff.variant == CoefficientField::Variant::TruncatedVn) {
    vstat.resize(n);
    for (std::size_t j = 0; j < n; ++j) vstat[j] = coeff.V(grid.r(j));
  }
  auto refresh_coef = [&](double t) {
    if (coeff.variant != CoefficientField::Variant::TruncatedVn) return;
    const double cut = std::abs(t - coeff.t_n);
    const double inner = coeff.V(cut);
    const auto jc = std::min<std::size_t>(
        static_cast<std::size_t>(std::ceil(cut / cfg.h - 1e-12)), n);
    for (std::size_t j = 0; j < jc; ++j) acoef[j] = inner;
    for (std::size_t j = jc; j < n; ++j) acoef[j] = vstat[j];
  };

  auto accel = [&](const std::vector<double>& v, std::vector<double>& out) {
    // a(t,r) v - v^5/r^4 at the interior nodes (zero at the origin).
    out[0] = 0.0;
    if (nonlin) {
      for (std::size_t j = 1; j < n; ++j) {
        const double w = v[j];
        const double w2 = w * w;
        const double r = grid.r(j);
        out[j] = acoef[j] * w - (w2 * w2 * w) / (r * r * r * r);
      }
    } else {
      for (std::size_t j = 1; j < n; ++j) out[j] = acoef[j] * v[j];
    }
  };

  const double lam = cfg.cfl * cfg.cfl;
  const double dt2 = dt * dt;
  std::vector<double> vc(n), vn(n), acc(n), d2(n);

  // Taylor bootstrap to the first step.
  refresh_coef(0.0);
  accel(vm, acc);
  vc[0] = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double lap = vm[j + 1] - 2.0 * vm[j] + vm[j - 1];
    vc[j] = vm[j] + dt * vtm[j] + 0.5 * (lam * lap + dt2 * acc[j]);
  }
  vc[n - 1] = vm[n - 1];  // outer node pinned

  const double pin = vm[n - 1];
  // Loop invariant: entering iteration `step`, vm = field at (step-1)*dt and
  // vc = field at step*dt; the update produces vn at (step+1)*dt so the
  // snapshot at step*dt can use the centered velocity (vn - vm)/(2 dt).
  for (std::size_t step = 1; step <= N; ++step) {
    const double t = static_cast<double>(step) * dt;
    refresh_coef(t);
    accel(vc, acc);
    double vmax = 0.0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
      const double lap = vc[j + 1] - 2.0 * vc[j] + vc[j - 1];
      const double x = 2.0 * vc[j] - vm[j] + lam * lap + dt2 * acc[j];
      vn[j] = x;
      vmax = std::max(vmax, std::abs(x));
    }
    vn[0] = 0.0;
    vn[n - 1] = pin;

    if (vmax > cfg.blowup_cap) {
      traj.status = Trajectory::Status::BlowUp;
      traj.blow_t = t;
      double worst = 0.0;
      for (std::size_t j = 1; j + 1 < n; ++j)
        if (std::abs(vn[j]) > worst) {
          worst = std::abs(vn[j]);
          traj.blow_r = grid.r(j);
        }
      return traj;
    }

    // vc is the field at time step*dt once vn (time (step+1)*dt) exists; the
    // centered velocity needs all three levels, so emit before rotating.
    if (snap_it != snap_steps.end() && *snap_it == step) {
      std::vector<double> vt(n);
      for (std::size_t j = 0; j < n; ++j) vt[j] = (vn[j] - vm[j]) / (2.0 * dt);
      // One-past-the-end steps never reach here: *snap_it <= N and the loop
      // computes vn for every step up to N.
      const double ts = static_cast<double>(step) * dt;
      ReducedState s(grid, vc, vt, ts);
      traj.energy.push_back(energy_of(s, ts));
      traj.times.push_back(ts);
      traj.snapshots.push_back(std::move(s));
      ++snap_it;
    }
    std::swap(vm, vc);
    std::swap(vc, vn);
  }
  return traj;
}

Trajectory evolve_signed(const ReducedState& initial, const CoefficientField& coeff,
                         SolverConfig cfg, const std::vector<double>& snapshot_times) {
  if (cfg.T >= 0.0) return evolve(initial, coeff, cfg, snapshot_times);
  cfg.T = -cfg.T;
  ReducedState flipped = initial;
  for (double& x : flipped.vt) x = -x;
  std::vector<double> ts;
  for (double t : snapshot_times) ts.push_back(std::abs(t));
  Trajectory traj = evolve(flipped, coeff.time_reflected(), cfg, ts);
  for (auto& s : traj.snapshots) {
    for (double& x : s.vt) x = -x;
    s.t = -s.t;
  }
  for (double& t : traj.times) t = -t;
  traj.blow_t = -traj.blow_t;
  return traj;
}

double discrete_energy(const ReducedState& s, const CoefficientField& coeff, double t,
                       bool nonlinearity) {
  const bool nonlin = nonlinearity && !coeff.forces_linear();
  return energy(s, [&](double r) { return coeff.a(t, r); }, nonlin).total_E;
}

double spacetime_norm(const Trajectory& traj, double t_lo, double t_hi) {
  std::vector<double> ts, g;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < t_lo - 1e-12 || t > t_hi + 1e-12) continue;
    const ReducedState& s = traj.snapshots[i];
    // int |u|^10 r^2 dr = int v^10 / r^8 dr; the integrand vanishes at 0.
    std::vector<double> integ(s.grid.n, 0.0);
    for (std::size_t j = 1; j < s.grid.n; ++j) {
      const double r = s.grid.r(j);
      const double u = s.v[j] / r;
      const double u2 = u * u;
      const double u4 = u2 * u2;
      integ[j] = u4 * u4 * u2 * r * r;
    }
    ts.push_back(t);
    g.push_back(std::sqrt(trapezoid(integ, s.grid.h)));  // (L^10 norm)^5
  }
  if (ts.size() < 2) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 1; i < ts.size(); ++i)
    acc += 0.5 * (ts[i] - ts[i - 1]) * (g[i] + g[i - 1]);
  return std::pow(acc, 0.2);
}

DependenceReport continuous_dependence_experiment(const ReducedState& base,
                                                  const ReducedState& pert,
                                                  const CoefficientField& coeff,
                                                  const SolverConfig& cfg,
                                                  const std::vector<double>& eps,
                                                  double interior_r) {
  if (!(base.grid == pert.grid))
    throw std::invalid_argument("continuous_dependence: data live on different grids");

  // Fix one domain for every run so distances compare node by node.
  SolverConfig run = cfg;
  run.boundary = SolverConfig::Boundary::FixedDomain;
  const double support =
      std::max(support_radius(base, 1e-14), support_radius(pert, 1e-14));
  run.r_max = std::max(base.grid.r_max(), support + cfg.T / cfg.cfl + cfg.margin);

  std::vector<double> snaps;
  for (double t = 0.0; t <= cfg.T + 1e-12; t += std::max(cfg.T / 20.0, run.h))
    snaps.push_back(t);

  Trajectory tb = evolve(base, coeff, run, snaps);

  DependenceReport rep;
  rep.eps = eps;
  const double eps_max = *std::max_element(eps.begin(), eps.end());
  for (double e : eps) {
    ReducedState p = base;
    {
      ReducedState padded = ReducedState::zero(tb.grid);
      std::copy(base.v.begin(), base.v.end(), padded.v.begin());
      std::copy(base.vt.begin(), base.vt.end(), padded.vt.begin());
      for (std::size_t j = 0; j < pert.grid.n; ++j) {
        padded.v[j] += e * pert.v[j];
        padded.vt[j] += e * pert.vt[j];
      }
      p = std::move(padded);
    }
    Trajectory tp = evolve(p, coeff, run, snaps);
    if (tp.status != Trajectory::Status::Completed ||
        tb.status != Trajectory::Status::Completed)
      throw std::runtime_error("continuous_dependence: evolution blew up");

    double sup = 0.0, sup_inner = 0.0;
    const std::size_t m = std::min(tb.snapshots.size(), tp.snapshots.size());
    for (std::size_t i = 0; i < m; ++i) {
      sup = std::max(sup, annulus_distance(tb.snapshots[i], tp.snapshots[i], 0.0,
                                           tb.grid.r_max()));
      if (interior_r > 0.0)
        sup_inner = std::max(
            sup_inner, annulus_distance(tb.snapshots[i], tp.snapshots[i], 0.0, interior_r));
    }
    rep.sup_dist.push_back(sup);
    rep.ratio.push_back(sup / e);
    if (interior_r > 0.0 && e == eps_max) rep.interior_distance = sup_inner;
  }
  rep.ratios_bounded = true;
  for (std::size_t i = 1; i < rep.ratio.size(); ++i) {
    const double q = rep.ratio[i] / rep.ratio[i - 1];
    if (!(q >= 0.5 && q <= 2.0)) rep.ratios_bounded = false;
  }
  return rep;
}

ScaleRobustnessReport scale_robustness_experiment(const std::function<double(double)>& profile,
                                                  const std::vector<double>& lambdas,
                                                  const Potential& V, const SolverConfig& cfg) {
  ScaleRobustnessReport rep;
  rep.lambda = lambdas;
  for (double lam : lambdas) {
    // Sample u_lambda on a domain wide enough for its stretched support.
    double sup = 1.0;
    for (double r = 0.0; r < 60.0; r += 0.05)
      if (std::abs(profile(r)) > 1e-14) sup = std::max(sup, r + 0.5);
    RadialGrid grid = RadialGrid::with_rmax(cfg.h, lam * sup + cfg.T / cfg.cfl + cfg.margin);
    ReducedState data = ReducedState::zero(grid);
    const double amp = 1.0 / std::sqrt(lam);
    for (std::size_t j = 1; j < grid.n; ++j) {
      const double r = grid.r(j);
      data.v[j] = r * amp * profile(r / lam);
    }

    SolverConfig run = cfg;
    run.boundary = SolverConfig::Boundary::FixedDomain;
    run.r_max = grid.r_max();
    std::vector<double> snaps;
    for (double t = 0.0; t <= cfg.T + 1e-12; t += std::max(cfg.T / 10.0, run.h))
      snaps.push_back(t);

    Trajectory tv = evolve(data, CoefficientField::static_v(V), run, snaps);
    Trajectory t0 = evolve(data, CoefficientField::zero(), run, snaps);
    double d = 0.0;
    const std::size_t m = std::min(tv.snapshots.size(), t0.snapshots.size());
    for (std::size_t i = 0; i < m; ++i)
      d = std::max(d, annulus_distance(tv.snapshots[i], t0.snapshots[i], 0.0, grid.r_max()));
    rep.d.push_back(d);
  }
  std::size_t i1 = 0;
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    if (std::abs(std::log(lambdas[i])) < std::abs(std::log(lambdas[i1]))) i1 = i;
  rep.small_end_decreases = rep.d.front() < rep.d[i1];
  rep.large_end_decreases = rep.d.back() < rep.d[i1];
  return rep;
}

SupportGrowthReport support_growth_experiment(const ReducedState& initial,
                                              const CoefficientField& coeff, SolverConfig cfg) {
  cfg.nonlinearity = false;  // support tracking is defined for the linear flow
  SupportGrowthReport rep;
  rep.rho0 = support_radius(initial, 1e-8);

  std::vector<double> snaps;
  for (double t = 1.0; t <= cfg.T + 1e-12; t += 1.0) snaps.push_back(t);
  rep.times = snaps;

  Trajectory fwd = evolve(initial, coeff, cfg, snaps);
  SolverConfig bcfg = cfg;
  bcfg.T = -cfg.T;
  Trajectory bwd = evolve_signed(initial, coeff, bcfg, snaps);

  const double h2 = 2.0 * cfg.h;
  bool sat_f = true, sat_b = true, bounded = true;
  for (std::size_t i = 0; i < fwd.snapshots.size(); ++i) {
    const double rho = support_radius(fwd.snapshots[i], 1e-8);
    rep.rho_forward.push_back(rho);
    const double want = rep.rho0 + fwd.times[i];
    if (std::abs(rho - want) > h2) sat_f = false;
    if (rho > want + h2) bounded = false;
    rep.max_overshoot = std::max(rep.max_overshoot, rho - want);
  }
  for (std::size_t i = 0; i < bwd.snapshots.size(); ++i) {
    const double rho = support_radius(bwd.snapshots[i], 1e-8);
    rep.rho_backward.push_back(rho);
    const double want = rep.rho0 + std::abs(bwd.times[i]);
    if (std::abs(rho - want) > h2) sat_b = false;
    if (rho > want + h2) bounded = false;
    rep.max_overshoot = std::max(rep.max_overshoot, rho - want);
  }
  rep.saturates_forward = sat_f;
  rep.saturates_backward = sat_b;
  rep.cone_bounded = bounded;
  return rep;
}

}  // namespace rwave
