#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "oracles.hpp"
#include "rwave/potential.hpp"
#include "rwave/steady.hpp"

using namespace rwave;

namespace {

const CensusResult& star_census() {
  static const CensusResult res = census(Potential::manufactured_star());
  return res;
}

// Index a uniformly sampled profile as a function of radius.
auto sampled(const std::vector<double>& r, const std::vector<double>& w) {
  const double dr = r[1] - r[0];
  const double r0 = r.front();
  return [&r, &w, dr, r0](double x) {
    const auto k = static_cast<std::size_t>(std::llround((x - r0) / dr));
    REQUIRE(k < w.size());
    return w[k];
  };
}

}  // namespace

TEST_CASE("zero slope shoots to the trivial decay solution") {
  const ShootResult s = shoot(0.0, Potential::manufactured_star());
  CHECK(s.cls == ShootClass::Decay);
  CHECK(s.c == 0.0);
  for (double w : s.w) CHECK(w == 0.0);
}

TEST_CASE("unit slope under the manufactured potential reproduces the closed form") {
  const ShootResult s = shoot(1.0, Potential::manufactured_star());
  REQUIRE(s.cls == ShootClass::Decay);
  CHECK(s.c == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.sign_changes == 0);
  double worst = 0.0;
  for (std::size_t k = 0; k < s.r.size(); ++k) {
    const double r = s.r[k];
    if (r <= 0.0 || r > 50.0) continue;
    worst = std::max(worst, std::abs(s.w[k] / r - oracle::u_prof(r)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("free steady equation blows up for any positive slope") {
  const ShootResult s = shoot(1.0, Potential::zero());
  CHECK(s.cls == ShootClass::Blow);
  CHECK(s.blow_sign == 1);
}

TEST_CASE("shooting commutes with sign reflection bit-exactly") {
  const ShootResult p = shoot(1.3, Potential::manufactured_star());
  const ShootResult m = shoot(-1.3, Potential::manufactured_star());
  CHECK(p.cls == m.cls);
  CHECK(m.c == -p.c);
  REQUIRE(p.w.size() == m.w.size());
  for (std::size_t k = 0; k < p.w.size(); ++k) CHECK(m.w[k] == -p.w[k]);
}

TEST_CASE("tail plateau is stable under tolerance tightening") {
  ShootOptions loose, tight;
  tight.rtol = 1e-12;
  tight.atol = 1e-15;
  const double c1 = shoot(1.0, Potential::manufactured_star(), loose).c;
  const double c2 = shoot(1.0, Potential::manufactured_star(), tight).c;
  CHECK(std::abs(c1 - c2) <= 1e-8);
}

TEST_CASE("census of the free equation finds only the trivial state") {
  const CensusResult res = census(Potential::zero());
  CHECK(res.roots.empty());
  REQUIRE(res.states.size() == 1);
  CHECK(res.states[0].a == 0.0);
  CHECK(res.states[0].c == 0.0);
}

TEST_CASE("census of a subcritical well is trivial") {
  const CensusResult res = census(Potential::gaussian(0.3, 2.0));
  CHECK(res.roots.empty());
  REQUIRE(res.states.size() == 1);
  CHECK(res.states[0].a == 0.0);
}

TEST_CASE("census under the manufactured potential") {
  const CensusResult& res = star_census();
  REQUIRE(res.roots.size() == 1);
  CHECK(res.roots[0] == doctest::Approx(1.0).epsilon(1e-6));
  REQUIRE(res.states.size() == 3);

  const SteadyState& neg = res.states[0];
  const SteadyState& triv = res.states[1];
  const SteadyState& pos = res.states[2];

  CHECK(triv.a == 0.0);
  CHECK(triv.c == 0.0);
  CHECK(triv.J == 0.0);

  CHECK(pos.a == res.roots[0]);
  CHECK(pos.c == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(pos.sign_changes == 0);

  // mirror entry is an exact sign reflection
  CHECK(neg.a == -pos.a);
  CHECK(neg.c == -pos.c);
  REQUIRE(neg.w.size() == pos.w.size());
  for (std::size_t k = 0; k < pos.w.size(); ++k) CHECK(neg.w[k] == -pos.w[k]);

  SUBCASE("representative profile satisfies the steady equation") {
    const double dr = pos.r[1] - pos.r[0];
    const double resid = oracle::steady_residual_6th(
        sampled(pos.r, pos.w), [](double r) { return oracle::v_star(r); }, dr, 50.0);
    CHECK(resid <= 1e-3);
  }

  SUBCASE("stored functional value matches an independent quadrature") {
    const double J_oracle = oracle::functional_of_profile(pos.r.back());
    CHECK(pos.J == doctest::Approx(J_oracle).epsilon(1e-3));
    CHECK(std::abs(pos.J - J_oracle) <= 1e-4);
  }
}

TEST_CASE("census roots are stable under scan-step refinement") {
  CensusOptions fine;
  fine.step = 0.025;
  const CensusResult res = census(Potential::manufactured_star(), fine);
  const CensusResult& base = star_census();
  REQUIRE(res.roots.size() == base.roots.size());
  for (std::size_t i = 0; i < res.roots.size(); ++i)
    CHECK(res.roots[i] == doctest::Approx(base.roots[i]).epsilon(1e-8));
}

TEST_CASE("exterior solve of the zero tail is identically zero") {
  const ExteriorSolution sol = exterior_solve(0.0, Potential::manufactured_star(), 2.0);
  CHECK(sol.lambda == 0.0);
  for (double u : sol.u) CHECK(u == 0.0);
}

TEST_CASE("exterior solve reproduces the closed-form boundary value") {
  const ExteriorSolution sol = exterior_solve(1.0, Potential::manufactured_star(), 2.0);
  CHECK(sol.R == 2.0);
  CHECK(sol.lambda == doctest::Approx(oracle::kU2).epsilon(1e-6));
  for (double u : sol.u) CHECK(u > 0.0);
}

TEST_CASE("boundary value is strictly increasing in the tail charge") {
  double prev = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const double c = 0.2 * k;
    const double lam = exterior_solve(c, Potential::manufactured_star(), 2.0).lambda;
    CHECK(lam > prev);
    prev = lam;
  }
}

TEST_CASE("tail charge recovery inverts the boundary map") {
  const Potential V = Potential::manufactured_star();
  for (double c : {0.5, 1.0, 1.5}) {
    const double lam = exterior_solve(c, V, 2.0).lambda;
    CHECK(c_of_lambda(lam, V, 2.0) == doctest::Approx(c).epsilon(1e-6));
  }
}

TEST_CASE("decay fit flags sub-floor windows") {
  std::vector<double> r, w;
  for (int k = 0; k <= 3000; ++k) {
    r.push_back(0.05 * k);
    w.push_back(0.7);
  }
  const DecayFit fit = decay_fit(r, w, 10.0, 100.0);
  CHECK(fit.below_floor);
  CHECK(fit.ell == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("decay fit recovers the closed-form tail exponent") {
  std::vector<double> r, w;
  for (int k = 0; k <= 3000; ++k) {
    r.push_back(0.05 * k);
    w.push_back(oracle::w_prof(r.back()));
  }
  const DecayFit fit = decay_fit(r, w, 10.0, 100.0);
  CHECK_FALSE(fit.below_floor);
  CHECK(fit.ell == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(fit.gamma > 1.9);
  CHECK(fit.gamma < 2.1);
  CHECK(fit.K > 0.4);
  CHECK(fit.K < 0.6);
}

TEST_CASE("stencil residual of the closed-form profile is tiny") {
  const double resid = steady_residual_max(
      [] {
        std::vector<double> r;
        for (int k = 0; k <= 10000; ++k) r.push_back(0.01 * k);
        return r;
      }(),
      [] {
        std::vector<double> w;
        for (int k = 0; k <= 10000; ++k) w.push_back(oracle::w_prof(0.01 * k));
        return w;
      }(),
      Potential::manufactured_star(), 1.0, 0.5, 90.0);
  CHECK(resid <= 1e-6);
}
