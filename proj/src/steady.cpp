#include "rwave/steady.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rwave/energy.hpp"
#include "rwave/numerics.hpp"
#include "rwave/ode.hpp"
#include "rwave/state.hpp"

namespace rwave {

namespace {

double clamp_gamma(const Potential& V) {
  return std::clamp(std::min(V.beta() - 2.0, 2.0), 0.25, 2.0);
}

int count_sign_changes(const std::vector<double>& w) {
  double wmax = 0.0;
  for (double x : w) wmax = std::max(wmax, std::abs(x));
  if (wmax <= 0.0) return 0;
  const double th = 1e-9 * wmax;
  int count = 0, last = 0;
  for (double x : w) {
    if (std::abs(x) <= th) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Solve the 3x3 system for w ~ ell + A r + K r^-gamma through three samples.
bool three_mode_fit(const double r[3], const double w[3], double gamma, double& ell, double& A,
                    double& K) {
  double M[3][4];
  for (int i = 0; i < 3; ++i) {
    M[i][0] = 1.0;
    M[i][1] = r[i];
    M[i][2] = std::pow(r[i], -gamma);
    M[i][3] = w[i];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int i = col + 1; i < 3; ++i)
      if (std::abs(M[i][col]) > std::abs(M[piv][col])) piv = i;
    if (std::abs(M[piv][col]) < 1e-300) return false;
    std::swap(M[piv], M[col]);
    for (int i = 0; i < 3; ++i) {
      if (i == col) continue;
      const double f = M[i][col] / M[col][col];
      for (int k = col; k < 4; ++k) M[i][k] -= f * M[col][k];
    }
  }
  ell = M[0][3] / M[0][0];
  A = M[1][3] / M[1][1];
  K = M[2][3] / M[2][2];
  return true;
}

}  // namespace

ShootResult shoot(double a, const Potential& V, const ShootOptions& opt) {
  ShootResult res;
  res.a = a;
  const auto nodes = static_cast<std::size_t>(std::llround(opt.R_big / opt.dr_out));
  if (a == 0.0) {
    res.cls = ShootClass::Decay;
    res.r_end = opt.R_big;
    if (opt.store_profile) {
      res.r.resize(nodes + 1);
      res.w.assign(nodes + 1, 0.0);
      for (std::size_t k = 0; k <= nodes; ++k) res.r[k] = opt.dr_out * static_cast<double>(k);
    }
    return res;
  }

  const double V0 = V(0.0);
  const double rs = opt.r_series;
  std::array<double, 2> y{a * rs + (a * a * a * a * a - V0 * a) * rs * rs * rs / 6.0,
                          a + (a * a * a * a * a - V0 * a) * rs * rs / 2.0};

  auto rhs = [&V](double r, const std::array<double, 2>& s, std::array<double, 2>& d) {
    const double w = s[0];
    const double w2 = w * w;
    d[0] = s[1];
    d[1] = -V(r) * w + (w2 * w2 * w) / (r * r * r * r);
  };
  const double cap = opt.cap;
  auto event = [cap](double, const std::array<double, 2>& s) { return std::abs(s[0]) >= cap; };

  OdeOptions oopt;
  oopt.rtol = opt.rtol;
  oopt.atol = opt.atol;
  oopt.h_init = 1e-4;
  auto solver = make_dp54(rhs, event, oopt);
  solver.start(rs, y);

  std::vector<double> rprof, wprof;
  rprof.reserve(nodes + 1);
  wprof.reserve(nodes + 1);
  rprof.push_back(0.0);
  wprof.push_back(0.0);

  OdeStatus status = OdeStatus::Done;
  for (std::size_t k = 1; k <= nodes; ++k) {
    const double rk = opt.dr_out * static_cast<double>(k);
    status = solver.integrate_to(rk);
    if (status != OdeStatus::Done) break;
    rprof.push_back(rk);
    wprof.push_back(solver.y()[0]);
  }

  res.sign_changes = count_sign_changes(wprof);
  res.r_end = solver.x();

  if (status == OdeStatus::Event) {
    res.cls = ShootClass::Blow;
    res.blow_sign = solver.y()[0] > 0.0 ? 1 : -1;
  } else if (status == OdeStatus::StepUnderflow) {
    res.cls = ShootClass::Indeterminate;
  } else {
    const double gamma = clamp_gamma(V);
    res.gamma_fit = gamma;
    const std::size_t kR = rprof.size() - 1;
    const double rr[3] = {rprof[kR / 4], rprof[kR / 2], rprof[kR]};
    const double ww[3] = {wprof[kR / 4], wprof[kR / 2], wprof[kR]};
    double ell = 0.0, A = 0.0, K = 0.0;
    if (three_mode_fit(rr, ww, gamma, ell, A, K)) {
      res.ell = ell;
      res.A_lin = A;
      res.K_dec = K;
      const double grow = std::abs(A) * opt.R_big;
      const double decay_scale =
          std::max(std::abs(K) * std::pow(opt.R_big, -gamma), 1e-8 * std::max(1.0, std::abs(ell)));
      if (grow <= 0.05 * decay_scale) {
        res.cls = ShootClass::Decay;
        res.c = ell;
      } else {
        res.cls = ShootClass::Blow;
        res.blow_sign = A > 0.0 ? 1 : -1;
      }
    } else {
      res.cls = ShootClass::Indeterminate;
    }
  }

  if (opt.store_profile) {
    res.r = std::move(rprof);
    res.w = std::move(wprof);
  }
  return res;
}

namespace {

struct Classified {
  ShootClass cls;
  int sign;  // blow sign, 0 for decay
};

Classified classify(double a, const Potential& V, ShootOptions opt) {
  opt.store_profile = true;  // profiles stay local; needed for sign bookkeeping
  ShootResult s = shoot(a, V, opt);
  return {s.cls, s.blow_sign};
}

// Bisect between opposite blow signs; a decay hit inside ends the search.
double bisect_root(double lo, double hi, int sign_lo, const Potential& V,
                   const ShootOptions& opt, double tol, int& shots) {
  while (hi - lo > tol * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    Classified c = classify(mid, V, opt);
    ++shots;
    if (c.cls == ShootClass::Decay) return mid;
    if (c.sign == sign_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

CensusResult census(const Potential& V, const CensusOptions& opt) {
  CensusResult out;

  // Coarse classification of the slope interval.
  std::map<double, Classified> cls;
  const auto nsteps = static_cast<std::size_t>(std::llround(opt.A_max / opt.step));
  for (std::size_t i = 0; i <= nsteps; ++i) {
    const double a = opt.step * static_cast<double>(i);
    if (a == 0.0) {
      cls[0.0] = {ShootClass::Decay, 0};
      continue;
    }
    cls[a] = classify(a, V, opt.shot);
    ++out.shots;
  }

  // Decay hits mark near-root slopes: rescan their neighbourhood on a 10x
  // finer offset lattice to pin the sign structure around them.
  std::vector<double> decay_hits;
  for (const auto& [a, c] : cls)
    if (a > 0.0 && c.cls == ShootClass::Decay) decay_hits.push_back(a);
  for (double a0 : decay_hits) {
    for (int k = -19; k <= 19; ++k) {
      if (k == 0 || k % 10 == 0) continue;
      const double a = a0 + 0.1 * opt.step * static_cast<double>(k);
      if (a <= 0.0 || a > opt.A_max || cls.count(a)) continue;
      cls[a] = classify(a, V, opt.shot);
      ++out.shots;
    }
  }

  // Roots: walk the classified points; bracket adjacent opposite blow signs
  // (decay hits between them are absorbed into the bracket).
  std::vector<double> roots;
  bool have_prev = false;
  double prev_a = 0.0;
  int prev_sign = 0;
  for (const auto& [a, c] : cls) {
    if (c.cls != ShootClass::Blow) continue;
    if (have_prev && c.sign * prev_sign < 0) {
      roots.push_back(bisect_root(prev_a, a, prev_sign, V, opt.shot, opt.bisect_tol, out.shots));
    }
    have_prev = true;
    prev_a = a;
    prev_sign = c.sign;
  }

  // Decay hits that no bracket accounted for (same blow sign on both sides,
  // e.g. a tangency) are recorded directly, one root per cluster.
  std::vector<double> strays;
  for (const auto& [a, c] : cls) {
    if (a <= 0.0 || c.cls != ShootClass::Decay) continue;
    bool covered = false;
    for (double rt : roots)
      if (std::abs(rt - a) <= opt.step) covered = true;
    if (!covered) strays.push_back(a);
  }
  for (std::size_t i = 0; i < strays.size();) {
    std::size_t j = i;
    while (j + 1 < strays.size() && strays[j + 1] - strays[j] <= 0.2 * opt.step) ++j;
    const double mid = 0.5 * (strays[i] + strays[j]);
    i = j + 1;
    // A cluster only counts if a shot at its midpoint still decays at the
    // largest ladder radius; this filters transient decay labels produced by
    // slowly diverging trajectories near basin boundaries.
    ShootOptions confirm = opt.shot;
    confirm.R_big = opt.shot.R_big * opt.ladder.back();
    Classified cm = classify(mid, V, confirm);
    ++out.shots;
    if (cm.cls == ShootClass::Decay) roots.push_back(mid);
  }
  std::sort(roots.begin(), roots.end());

  // Deduplicate anything within 10x of the bisection tolerance.
  std::vector<double> uniq;
  for (double rt : roots)
    if (uniq.empty() || rt - uniq.back() > 10.0 * opt.bisect_tol) uniq.push_back(rt);
  roots = std::move(uniq);

  // Ladder polish: redo the bisection at enlarged radii, re-bracketing
  // adaptively (the root drifts by O(R^-2) between levels).
  for (double& root : roots) {
    for (std::size_t lv = 1; lv < opt.ladder.size(); ++lv) {
      ShootOptions big = opt.shot;
      big.R_big = opt.shot.R_big * opt.ladder[lv];
      double width = std::max(1e-3 * std::max(1.0, std::abs(root)), 1e3 * opt.bisect_tol);
      double cap_width = 0.45 * opt.step;
      for (const double other : roots)
        if (other != root) cap_width = std::min(cap_width, 0.45 * std::abs(other - root));
      bool done = false;
      for (int attempt = 0; attempt < 8 && !done; ++attempt) {
        const double lo = std::max(root - width, 0.0);
        const double hi = root + width;
        Classified cl = classify(lo, V, big);
        Classified ch = classify(hi, V, big);
        out.shots += 2;
        if (cl.cls == ShootClass::Blow && ch.cls == ShootClass::Blow && cl.sign * ch.sign < 0) {
          root = bisect_root(lo, hi, cl.sign, V, big, opt.bisect_tol, out.shots);
          done = true;
        } else {
          width *= 4.0;
          if (width > cap_width) break;
        }
      }
    }
  }

  out.roots = roots;

  // Representative states.
  ShootOptions rep = opt.shot;
  rep.dr_out = opt.rep_dr_out;
  rep.store_profile = true;
  ShootOptions tailopt = opt.shot;
  tailopt.R_big = opt.shot.R_big * opt.ladder.back();

  auto make_state = [&](double a) {
    SteadyState st;
    st.a = a;
    ShootResult body = shoot(a, V, rep);
    ++out.shots;
    st.sign_changes = body.sign_changes;
    st.r = std::move(body.r);
    st.w = std::move(body.w);
    if (body.cls == ShootClass::Blow) {
      // The bisection residual eventually peels the trajectory off the
      // decaying manifold; keep only the trusted leading segment.
      const double r_trust = 0.25 * body.r_end;
      const auto keep = std::min<std::size_t>(
          static_cast<std::size_t>(r_trust / opt.rep_dr_out) + 1, st.r.size());
      st.r.resize(std::max<std::size_t>(keep, 16));
      st.w.resize(st.r.size());
    }

    // Tail plateau from the largest-radius shot, again restricted to the
    // pre-peel segment.
    ShootResult tail = shoot(a, V, tailopt);
    ++out.shots;
    if (tail.cls == ShootClass::Decay) {
      st.c = tail.c;
    } else {
      const double r_trust = std::min(0.25 * tail.r_end, tailopt.R_big);
      const auto kt = std::min<std::size_t>(
          static_cast<std::size_t>(r_trust / tailopt.dr_out), tail.r.size() - 1);
      if (kt >= 8) {
        const double rr[3] = {tail.r[kt / 4], tail.r[kt / 2], tail.r[kt]};
        const double ww[3] = {tail.w[kt / 4], tail.w[kt / 2], tail.w[kt]};
        double ell = 0.0, A = 0.0, K = 0.0;
        if (three_mode_fit(rr, ww, clamp_gamma(V), ell, A, K)) st.c = ell;
      }
    }

    st.residual_max = steady_residual_max(st.r, st.w, V, a, opt.rep_dr_out,
                                          std::min(0.5 * opt.shot.R_big, st.r.back()));
    if (st.r.size() >= 16) {
      RadialGrid grid(opt.rep_dr_out, st.r.size());
      ReducedState rs(grid, st.w, std::vector<double>(st.w.size(), 0.0));
      st.J = energy(rs, [&V](double r) { return V(r); }).functional_J;
    }
    return st;
  };

  SteadyState trivial;
  trivial.a = 0.0;
  const auto repn = static_cast<std::size_t>(std::llround(opt.shot.R_big / opt.rep_dr_out));
  trivial.r.resize(repn + 1);
  trivial.w.assign(repn + 1, 0.0);
  for (std::size_t k = 0; k <= repn; ++k)
    trivial.r[k] = opt.rep_dr_out * static_cast<double>(k);
  out.states.push_back(trivial);

  for (double rt : roots) {
    SteadyState st = make_state(rt);
    if (opt.include_mirrors) {
      SteadyState mir = st;
      mir.a = -st.a;
      mir.c = -st.c;
      for (double& x : mir.w) x = -x;
      out.states.push_back(std::move(mir));
    }
    out.states.push_back(std::move(st));
  }
  std::sort(out.states.begin(), out.states.end(),
            [](const SteadyState& x, const SteadyState& y) { return x.a < y.a; });
  return out;
}

double steady_residual_max(const std::vector<double>& r, const std::vector<double>& w,
                           const Potential& V, double a, double r_lo, double r_hi) {
  if (r.size() < 8 || r[0] != 0.0) throw std::invalid_argument("steady_residual_max: bad profile");
  const double h = r[1] - r[0];
  const std::size_t n = r.size();
  std::vector<double> u(n);
  u[0] = a;
  for (std::size_t j = 1; j < n; ++j) u[j] = w[j] / r[j];

  auto at = [&u](long long j) {
    return j >= 0 ? u[static_cast<std::size_t>(j)] : u[static_cast<std::size_t>(-j)];
  };
  double worst = 0.0;
  for (std::size_t j = 1; j + 2 < n; ++j) {
    const double rj = r[j];
    if (rj < r_lo || rj > r_hi) continue;
    const auto i = static_cast<long long>(j);
    const double d1 =
        (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h);
    const double d2 = (-at(i + 2) + 16.0 * at(i + 1) - 30.0 * at(i) + 16.0 * at(i - 1) -
                       at(i - 2)) /
                      (12.0 * h * h);
    const double uj = u[j];
    const double u2 = uj * uj;
    const double res = -d2 - 2.0 / rj * d1 - V(rj) * uj + u2 * u2 * uj;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

ExteriorSolution exterior_solve(double c, const Potential& V, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("exterior_solve: R must be positive");
  ExteriorSolution sol;
  sol.R = R;
  sol.R_inf = std::max(10.0 * R, 200.0);
  const double Ri = sol.R_inf;

  // One Picard iterate of the tail equation w'' = -V w + w^5/r^4 around
  // w = c: w(r) ~ c + c I2(r) - c^5/(6 r^2), w'(r) ~ -c I1(r) + c^5/(3 r^3),
  // with I2(r) = int_r^inf (s - r) V ds and I1(r) = int_r^inf V ds, both
  // evaluated through the compactifying substitution s = r + q/(1-q).
  auto tail_int = [&](double r, bool weighted) {
    auto g = [&](double q) {
      const double s = r + q / (1.0 - q);
      const double jac = 1.0 / ((1.0 - q) * (1.0 - q));
      return (weighted ? (s - r) : 1.0) * V(s) * jac;
    };
    return adaptive_simpson(g, 0.0, 1.0 - 1e-8, 1e-13);
  };
  const double c5 = c * c * c * c * c;
  std::array<double, 2> y{c + c * tail_int(Ri, true) - c5 / (6.0 * Ri * Ri),
                          -c * tail_int(Ri, false) + c5 / (3.0 * Ri * Ri * Ri)};

  auto rhs = [&V](double r, const std::array<double, 2>& s, std::array<double, 2>& d) {
    const double w = s[0];
    const double w2 = w * w;
    d[0] = s[1];
    d[1] = -V(r) * w + (w2 * w2 * w) / (r * r * r * r);
  };
  auto event = [](double, const std::array<double, 2>& s) { return std::abs(s[0]) >= 1e8; };
  OdeOptions oopt;
  oopt.rtol = 1e-11;
  oopt.atol = 1e-14;
  oopt.h_init = 1e-2;
  auto solver = make_dp54(rhs, event, oopt);
  solver.start(Ri, y);

  const std::size_t samples = 2000;
  sol.r.resize(samples + 1);
  sol.u.resize(samples + 1);
  const double dr = (Ri - R) / static_cast<double>(samples);
  sol.r[samples] = Ri;
  sol.u[samples] = y[0] / Ri;
  for (std::size_t k = samples; k-- > 0;) {
    const double rk = R + dr * static_cast<double>(k);
    if (solver.integrate_to(rk) != OdeStatus::Done)
      throw std::runtime_error("exterior_solve: inward integration failed");
    sol.r[k] = rk;
    sol.u[k] = solver.y()[0] / rk;
  }
  sol.lambda = sol.u[0];
  return sol;
}

double c_of_lambda(double lambda, const Potential& V, double R, double c_max, double tol) {
  if (lambda == 0.0) return 0.0;
  const double sign = lambda > 0.0 ? 1.0 : -1.0;
  const double target = std::abs(lambda);
  auto val = [&](double c) { return exterior_solve(c, V, R).lambda; };
  double lo = 0.0, hi = c_max;
  if (val(hi) < target)
    throw std::domain_error("c_of_lambda: requested boundary value exceeds the c_max range");
  while (hi - lo > tol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (val(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return sign * 0.5 * (lo + hi);
}

DecayFit decay_fit(const std::vector<double>& r, const std::vector<double>& w, double r_lo,
                   double r_hi) {
  DecayFit fit;
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j] >= r_lo && r[j] <= r_hi && r[j] > 0.0) idx.push_back(j);
  if (idx.size() < 8) throw std::invalid_argument("decay_fit: window holds fewer than 8 samples");

  auto nearest = [&](double target) {
    std::size_t best = idx.front();
    for (std::size_t j : idx)
      if (std::abs(r[j] - target) < std::abs(r[best] - target)) best = j;
    return best;
  };
  const std::size_t i2 = nearest(r_hi), i1 = nearest(0.5 * r_hi), i0 = nearest(0.25 * r_hi);
  const double d1 = w[i2] - w[i1];
  const double d2 = w[i1] - w[i0];
  if (std::abs(d1 - d2) > 0.0 && i0 != i1 && i1 != i2)
    fit.ell = w[i2] - d1 * d1 / (d1 - d2);
  else
    fit.ell = w[i2];

  double dev = 0.0;
  for (std::size_t j : idx) dev = std::max(dev, std::abs(w[j] - fit.ell));
  if (dev < 1e-12 * std::max(1.0, std::abs(fit.ell))) {
    fit.below_floor = true;
    return fit;
  }

  // Least squares of log|w - ell| against log r over a log-spaced subsample.
  std::vector<std::size_t> sub;
  const std::size_t want = 256;
  if (idx.size() <= want) {
    sub = idx;
  } else {
    const double lr_lo = std::log(r[idx.front()]), lr_hi = std::log(r[idx.back()]);
    std::size_t cursor = 0;
    for (std::size_t k = 0; k < want; ++k) {
      const double target = std::exp(lr_lo + (lr_hi - lr_lo) * k / (want - 1));
      while (cursor + 1 < idx.size() && r[idx[cursor]] < target) ++cursor;
      if (sub.empty() || sub.back() != idx[cursor]) sub.push_back(idx[cursor]);
    }
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  const double floor = 1e-13 * std::max(1.0, std::abs(fit.ell));
  for (std::size_t j : sub) {
    const double dy = std::abs(w[j] - fit.ell);
    if (dy < floor) continue;
    const double x = std::log(r[j]);
    const double y = std::log(dy);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 4) {
    fit.below_floor = true;
    return fit;
  }
  const double denom = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / denom;
  const double inter = (sy - slope * sx) / m;
  fit.gamma = -slope;
  fit.K = (w[i2] - fit.ell >= 0.0 ? 1.0 : -1.0) * std::exp(inter);
  double ss = 0.0;
  std::size_t mm = 0;
  for (std::size_t j : sub) {
    const double dy = std::abs(w[j] - fit.ell);
    if (dy < floor) continue;
    const double pred = inter + slope * std::log(r[j]);
    const double e = std::log(dy) - pred;
    ss += e * e;
    ++mm;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(mm));
  return fit;
}

}  // namespace rwave
