#include "rwave/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rwave/energy.hpp"
#include "rwave/numerics.hpp"

namespace rwave {

namespace {

// Snapshot index whose time matches t within half a step.
std::size_t snapshot_index(const Trajectory& traj, double t, const char* who) {
  const double tol = 0.5 * traj.dt + 1e-9;
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    if (std::abs(traj.times[i] - t) <= tol) return i;
  throw std::invalid_argument(std::string(who) + ": requested time is not a snapshot");
}

// Piecewise-linear profile value, continued by the plateau c past the data.
double profile_at(const std::vector<double>& r, const std::vector<double>& w, double c,
                  double x) {
  if (r.size() < 2) return c;
  if (x >= r.back()) return c;
  if (x <= r.front()) return w.front();
  const auto it = std::upper_bound(r.begin(), r.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - r.begin());
  const double t = (x - r[i - 1]) / (r[i] - r[i - 1]);
  return w[i - 1] + t * (w[i] - w[i - 1]);
}

}  // namespace

ReducedState RadiationField::free_wave(double t, const RadialGrid& grid) const {
  // The movers vanish outside [rho_lo, rho_hi], so the clamped lattice
  // interpolation evaluates the exact free wave at any time.
  ReducedState out = ReducedState::zero(grid);
  out.t = t;
  for (std::size_t j = 1; j < grid.n; ++j) {
    const double r = grid.r(j);
    out.v[j] = pair.F_at(r - t) - pair.F_at(-r - t);
    out.vt[j] = -pair.fp_at(r - t) + pair.fp_at(-r - t);
  }
  return out;
}

RadiationField extract_radiation(const Trajectory& traj, double T_ex, double r_a, double r_b) {
  if (traj.snapshots.empty())
    throw std::invalid_argument("extract_radiation: trajectory has no snapshots");
  const std::size_t is = snapshot_index(traj, T_ex, "extract_radiation");
  const ReducedState& s = traj.snapshots[is];
  const double Ts = traj.times[is];
  const RadialGrid& g = s.grid;
  const double h = g.h;

  if (r_a < -1e-12 || r_b > g.r_max() + 1e-12 || !(r_a < r_b))
    throw std::invalid_argument("extract_radiation: window outside grid");
  if (Ts + 1e-9 < 0.75 * traj.times.back())
    throw std::invalid_argument(
        "extract_radiation: extraction time must lie in the final quarter of the run");

  const std::size_t ja = g.nearest(std::max(r_a, 0.0));
  const std::size_t jb = g.nearest(r_b);
  if (jb <= ja + 4) throw std::invalid_argument("extract_radiation: window too narrow");

  const std::vector<double> dv = deriv1(s.v, h);
  const std::size_t m = jb - ja + 1;
  std::vector<double> fpw(m), inc2(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t j = ja + k;
    fpw[k] = 0.5 * (dv[j] - s.vt[j]);
    const double gin = 0.5 * (dv[j] + s.vt[j]);
    inc2[k] = gin * gin;
  }

  RadiationField rad;
  rad.T_ex = Ts;
  rad.rho_lo = g.r(ja) - Ts;
  rad.rho_hi = g.r(jb) - Ts;
  rad.incoming_residual = std::sqrt(trapezoid(inc2, h));

  // Resample the window onto a symmetric characteristic lattice.  Snapshot
  // times are generally half-step offset from the radial lattice, so this is
  // a linear resampling (second-order, same as the extraction stencils).
  const double span = std::max(std::abs(rad.rho_lo), std::abs(rad.rho_hi));
  const auto half = static_cast<std::size_t>(std::ceil(span / h)) + 2;
  CharacteristicPair pair;
  pair.h = h;
  pair.L = h * static_cast<double>(half);
  const std::size_t nlat = 2 * half + 1;
  pair.fp.assign(nlat, 0.0);
  for (std::size_t k = 0; k < nlat; ++k) {
    const double rho = pair.s(k);
    if (rho <= rad.rho_lo || rho >= rad.rho_hi) continue;
    const double x = (rho - rad.rho_lo) / h;
    const auto i0 = static_cast<std::size_t>(x);
    const double t = x - static_cast<double>(i0);
    pair.fp[k] = i0 + 1 < m ? (1.0 - t) * fpw[i0] + t * fpw[i0 + 1] : fpw[m - 1];
  }
  pair.gp.resize(nlat);
  for (std::size_t k = 0; k < nlat; ++k) pair.gp[k] = pair.fp[nlat - 1 - k];
  pair.F = cumtrapz(pair.fp, h);
  std::vector<double> flux(nlat);
  for (std::size_t k = 0; k < nlat; ++k) flux[k] = pair.fp[k] * pair.fp[k];
  pair.C = cumtrapz(flux, h);
  rad.pair = std::move(pair);
  return rad;
}

std::vector<double> exterior_mismatch(const Trajectory& traj, const RadiationField& rad,
                                      double A, const std::vector<double>& times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    const std::size_t i = snapshot_index(traj, t, "exterior_mismatch");
    const double ts = traj.times[i];
    if (ts - A < -1e-9)
      throw std::invalid_argument("exterior_mismatch: region start t - A is negative");
    const ReducedState UL = rad.free_wave(ts, traj.grid);
    out.push_back(
        annulus_distance(traj.snapshots[i], UL, std::max(ts - A, 0.0), traj.grid.r_max()));
  }
  return out;
}

SigmaDistance distance_to_sigma(const ReducedState& state, const CensusResult& census,
                                double R_int) {
  if (census.states.empty())
    throw std::invalid_argument("distance_to_sigma: census has no entries");
  const RadialGrid& g = state.grid;
  const double hi = std::min(R_int, g.r_max());

  SigmaDistance best;
  best.distance = std::numeric_limits<double>::infinity();
  ReducedState cand = ReducedState::zero(g);
  for (std::size_t i = 0; i < census.states.size(); ++i) {
    const SteadyState& e = census.states[i];
    for (int sgn = 0; sgn < 2; ++sgn) {
      if (sgn == 1 && e.a == 0.0 && e.c == 0.0) continue;  // zero is its own mirror
      const double sg = sgn == 0 ? 1.0 : -1.0;
      for (std::size_t j = 1; j < g.n; ++j)
        cand.v[j] = sg * profile_at(e.r, e.w, e.c, g.r(j));
      const double d = annulus_distance(state, cand, 0.0, hi);
      if (d < best.distance) {
        best.distance = d;
        best.argmin = i;
        best.argmin_a = sg * e.a;
        best.mirrored = sgn == 1;
      }
    }
  }
  return best;
}

ChannelMeter channel_meter(const ReducedState& initial, const Potential& V, double R,
                           double T_probe, const SolverConfig& cfg, double dt_sample) {
  if (!(T_probe > 0.0) || !(dt_sample > 0.0))
    throw std::invalid_argument("channel_meter: need positive probe time and sample step");
  SolverConfig run = cfg;
  run.T = T_probe;
  std::vector<double> snaps;
  const auto ns = static_cast<std::size_t>(std::llround(T_probe / dt_sample));
  for (std::size_t k = 0; k <= ns; ++k) snaps.push_back(dt_sample * static_cast<double>(k));

  const CoefficientField coeff = CoefficientField::static_v(V);
  const Trajectory fwd = evolve(initial, coeff, run, snaps);
  run.T = -T_probe;
  const Trajectory bwd = evolve_signed(initial, coeff, run, snaps);
  if (fwd.status != Trajectory::Status::Completed ||
      bwd.status != Trajectory::Status::Completed)
    throw std::runtime_error("channel_meter: evolution blew up inside the probe window");

  ChannelMeter meter;
  meter.delta_plus = std::numeric_limits<double>::infinity();
  meter.delta_minus = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fwd.snapshots.size(); ++i) {
    const double t = fwd.times[i];
    const double e = exterior_energy(fwd.snapshots[i], R + t);
    if (e < meter.delta_plus) {
      meter.delta_plus = e;
      meter.t_at_plus = t;
    }
  }
  for (std::size_t i = 0; i < bwd.snapshots.size(); ++i) {
    const double t = std::abs(bwd.times[i]);
    const double e = exterior_energy(bwd.snapshots[i], R + t);
    if (e < meter.delta_minus) {
      meter.delta_minus = e;
      meter.t_at_minus = -t;
    }
  }
  return meter;
}

namespace {

Trajectory truncate_to(const Trajectory& traj, double t_hi) {
  Trajectory out;
  out.status = traj.status;
  out.grid = traj.grid;
  out.dt = traj.dt;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] > t_hi + 0.5 * traj.dt) break;
    out.times.push_back(traj.times[i]);
    out.snapshots.push_back(traj.snapshots[i]);
    out.energy.push_back(traj.energy[i]);
  }
  return out;
}

}  // namespace

ResolutionReport resolution_experiment(const ReducedState& initial, const Potential& V,
                                       const CensusResult& census, const SolverConfig& cfg,
                                       const ResolutionConfig& rcfg) {
  if (rcfg.ladder.empty())
    throw std::invalid_argument("resolution_experiment: empty rung ladder");
  ResolutionReport rep;
  rep.ladder = rcfg.ladder;
  std::sort(rep.ladder.begin(), rep.ladder.end());

  rep.initial_perturbation =
      distance_to_sigma(initial, census, initial.grid.r_max()).distance;

  SolverConfig run = cfg;
  run.T = rep.ladder.back();
  std::vector<double> snaps = rep.ladder;
  snaps.insert(snaps.begin(), 0.0);
  const Trajectory traj = evolve(initial, CoefficientField::static_v(V), run, snaps);
  if (traj.status != Trajectory::Status::Completed)
    throw std::runtime_error("resolution_experiment: evolution blew up");

  for (double Tk : rep.ladder) {
    const Trajectory trunc = truncate_to(traj, Tk);
    const std::size_t is = snapshot_index(trunc, Tk, "resolution_experiment");
    const double ts = trunc.times[is];

    const double r_a = std::max(Tk - rcfg.A_buf, 0.0);
    const RadiationField rad =
        extract_radiation(trunc, ts, r_a, traj.grid.r_max() - traj.grid.h);
    const ReducedState UL = rad.free_wave(ts, traj.grid);

    ReducedState diff = trunc.snapshots[is];
    for (std::size_t j = 0; j < diff.grid.n; ++j) {
      diff.v[j] -= UL.v[j];
      diff.vt[j] -= UL.vt[j];
    }
    const SigmaDistance sd = distance_to_sigma(diff, census, Tk - rcfg.A_buf);
    const double mm = exterior_mismatch(trunc, rad, rcfg.A_mismatch, {ts}).front();

    rep.distance.push_back(sd.distance);
    rep.argmin.push_back(sd.argmin);
    rep.argmin_a.push_back(sd.argmin_a);
    rep.mismatch.push_back(mm);
    rep.incoming.push_back(rad.incoming_residual);
  }

  rep.nonincreasing = true;
  for (std::size_t k = 1; k < rep.distance.size(); ++k)
    if (rep.distance[k] > rep.distance[k - 1] * (1.0 + rcfg.slack)) rep.nonincreasing = false;
  rep.final_small =
      rep.distance.back() <= rcfg.final_factor * rep.initial_perturbation;
  const std::size_t m = rep.mismatch.size();
  rep.mismatch_improves = m >= 2 && rep.mismatch[m - 1] < rep.mismatch[m - 2];
  return rep;
}

}  // namespace rwave
