#include "rwave/dalembert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwave/energy.hpp"
#include "rwave/numerics.hpp"

namespace rwave {

namespace {

double interp_clamped(const std::vector<double>& f, double h, double L, double x, double left,
                      double right) {
  const double pos = (x + L) / h;
  if (pos <= 0.0) return left;
  const double last = static_cast<double>(f.size() - 1);
  if (pos >= last) return right;
  const auto k = static_cast<std::size_t>(pos);
  const double t = pos - static_cast<double>(k);
  return f[k] + t * (f[k + 1] - f[k]);
}

}  // namespace

double CharacteristicPair::fp_at(double x) const { return interp_clamped(fp, h, L, x, 0.0, 0.0); }

double CharacteristicPair::F_at(double x) const {
  return interp_clamped(F, h, L, x, 0.0, F.back());
}

double CharacteristicPair::C_at(double x) const {
  return interp_clamped(C, h, L, x, 0.0, C.back());
}

CharacteristicPair split(const ReducedState& state) {
  const std::size_t n = state.grid.n;
  const double h = state.grid.h;
  const std::size_t m = 2 * n - 1;

  // Odd extension over [-L, L]; index k corresponds to s = (k - (n-1)) * h.
  std::vector<double> ve(m), vte(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto off = static_cast<long long>(k) - static_cast<long long>(n - 1);
    const std::size_t j = static_cast<std::size_t>(off < 0 ? -off : off);
    const double sign = off < 0 ? -1.0 : 1.0;
    ve[k] = sign * state.v[j];
    vte[k] = sign * state.vt[j];
  }
  std::vector<double> dve = deriv1(ve, h);

  CharacteristicPair pair;
  pair.h = h;
  pair.L = state.grid.r_max();
  pair.fp.resize(m);
  pair.gp.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    pair.fp[k] = 0.5 * (dve[k] - vte[k]);
    pair.gp[k] = 0.5 * (dve[k] + vte[k]);
  }

  double scale = 0.0, worst = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    scale = std::max(scale, std::abs(pair.fp[k]));
    worst = std::max(worst, std::abs(pair.gp[k] - pair.fp[m - 1 - k]));
  }
  if (worst > 1e-12 * std::max(1.0, scale))
    throw std::logic_error("split: mover redundancy g'(s) = f'(-s) violated");

  pair.F = cumtrapz(pair.fp, h);
  std::vector<double> flux(m);
  for (std::size_t k = 0; k < m; ++k) flux[k] = pair.fp[k] * pair.fp[k];
  pair.C = cumtrapz(flux, h);
  return pair;
}

CharacteristicPair split_padded(const ReducedState& state, double L_min) {
  if (state.grid.r_max() >= L_min) return split(state);
  RadialGrid big = RadialGrid::with_rmax(state.grid.h, L_min);
  ReducedState padded = ReducedState::zero(big);
  std::copy(state.v.begin(), state.v.end(), padded.v.begin());
  std::copy(state.vt.begin(), state.vt.end(), padded.vt.begin());
  return split(padded);
}

ReducedState evolve_free(const CharacteristicPair& pair, double t, const RadialGrid& grid) {
  if (grid.r_max() + std::abs(t) > pair.L + 0.5 * pair.h)
    throw std::invalid_argument("evolve_free: lattice does not cover r_max + |t|");
  ReducedState out = ReducedState::zero(grid);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double r = grid.r(j);
    const double a = r - t, b = -r - t;
    const double Fa = pair.F_at(a), Fb = pair.F_at(b);
    out.v[j] = Fa - Fb;  // exactly zero at r = 0, where a == b
    out.vt[j] = -pair.fp_at(a) + pair.fp_at(b);
  }
  return out;
}

double exterior_energy_free(const CharacteristicPair& pair, double t, double R) {
  const double h = pair.h;
  if (R < 0.0) R = 0.0;
  const auto j0 = static_cast<std::size_t>(std::llround(R / h));
  // Both movers vanish once r - |t| leaves the lattice, so this cutoff loses
  // no flux.
  const auto jmax = static_cast<std::size_t>(std::llround((pair.L + std::abs(t)) / h)) + 1;
  if (j0 >= jmax) return 0.0;
  std::vector<double> integ(jmax - j0 + 1);
  for (std::size_t j = j0; j <= jmax; ++j) {
    const double r = h * static_cast<double>(j);
    const double x = pair.fp_at(r - t), y = pair.fp_at(-r - t);
    const double dv = x + y, vt = -x + y;
    integ[j - j0] = dv * dv + vt * vt;
  }
  return trapezoid(integ, h);
}

ChannelReport channel_direction(const CharacteristicPair& pair, const ReducedState& initial,
                                double R) {
  ChannelReport rep;
  const double h = pair.h;
  const std::size_t jR = initial.grid.nearest(R);
  rep.r_snapped = initial.grid.r(jR);

  const std::size_t n = (pair.size() + 1) / 2;
  const std::size_t kR = (n - 1) + jR;  // lattice index of s = +R
  const std::size_t kL = (n - 1) - jR;  // lattice index of s = -R
  rep.e_plus = 2.0 * (pair.total_flux() - pair.C[kR]);
  rep.e_minus = 2.0 * pair.C[kL];
  rep.e0 = rep.e_plus + rep.e_minus;

  const double support = support_radius(initial);
  rep.t_sweep = 4.0 * (support + rep.r_snapped);
  const double half = 0.5 * rep.e0;

  // Exterior energy beyond R + |t| in each direction, swept on a half-step
  // lattice so the flux cutoffs land on nodes, plus the asymptotic limits.
  double min_fwd = rep.e_plus, min_bwd = rep.e_minus;
  const double step = 0.5 * h * std::max(1.0, std::floor(rep.t_sweep / (1024.0 * h) * 2.0));
  for (double t = 0.0; t <= rep.t_sweep; t += step) {
    min_fwd = std::min(min_fwd, rep.e_plus + 2.0 * pair.C_at(-rep.r_snapped - 2.0 * t));
    min_bwd = std::min(min_bwd,
                       rep.e_minus + 2.0 * (pair.total_flux() - pair.C_at(rep.r_snapped + 2.0 * t)));
  }
  rep.margin_forward = min_fwd - half;
  rep.margin_backward = min_bwd - half;

  const double tol = 1e-12 * std::max(1.0, rep.e0);
  const bool fwd = rep.margin_forward >= -tol;
  const bool bwd = rep.margin_backward >= -tol;
  if (fwd && bwd) {
    rep.direction = Direction::Both;
    rep.margin = std::min(rep.margin_forward, rep.margin_backward);
  } else if (rep.margin_forward >= rep.margin_backward) {
    rep.direction = Direction::Forward;
    rep.margin = rep.margin_forward;
  } else {
    rep.direction = Direction::Backward;
    rep.margin = rep.margin_backward;
  }
  return rep;
}

double forward_time(const CharacteristicPair& pair) {
  const double half = 0.5 * pair.total_flux();
  const std::size_t k0 = (pair.size() - 1) / 2;  // lattice index of s = 0
  for (std::size_t k = k0 + 1; k-- > 0;) {
    if (pair.C[k] <= half) return -pair.s(k);
  }
  return pair.L;  // unreachable: C[0] == 0
}

}  // namespace rwave
