"""Smoke tests for the compiled rwave module.

These are deliberately fast end-to-end touches of each binding group; the
exhaustive numerical checks live in the C++ test binaries.
"""

import json
import math

import pytest

import rwave


def test_version_string():
    assert rwave.__version__.startswith("0.1.0")


def test_manufactured_potential_values():
    V = rwave.Potential.manufactured_star()
    assert V(0.0) == pytest.approx(4.0, abs=1e-15)
    assert V(1.0) == pytest.approx(1.0, abs=1e-15)
    assert V.nonnegative()
    assert rwave.y_norm(V) > 0.0


def test_grid_and_state_round_trip():
    g = rwave.RadialGrid.with_rmax(0.1, 5.0)
    assert g.n == 51
    assert g.r_max() == pytest.approx(5.0)
    v = [g.r(j) * math.exp(-g.r(j) ** 2) for j in range(g.n)]
    s = rwave.ReducedState(0.1, v, [0.0] * g.n)
    f = rwave.lift(s)
    back = rwave.reduce(f)
    assert max(abs(a - b) for a, b in zip(back.v, s.v)) < 1e-12


def test_shoot_reproduces_closed_form_profile():
    V = rwave.Potential.manufactured_star()
    res = rwave.shoot(1.0, V, R_big=200.0)
    assert res.cls == rwave.ShootClass.Decay
    assert res.c == pytest.approx(1.0, abs=1e-3)
    # w(r) = r / sqrt(1 + r^2) at a mid-range sample point
    k = len(res.r) // 2
    r = res.r[k]
    assert res.w[k] == pytest.approx(r / math.sqrt(1.0 + r * r), abs=1e-6)


def test_spectrum_scales_linearly_with_coupling():
    base = rwave.Potential.gaussian(1.0, 2.0)
    one = rwave.bs_spectrum(base, n_quad=200)
    three = rwave.bs_spectrum(rwave.Potential.scaled(3.0, base), n_quad=200)
    assert one.converged and three.converged
    for lam1, lam3 in zip(one.lambdas, three.lambdas):
        assert lam3 == pytest.approx(3.0 * lam1, rel=1e-10)
    for lam, alpha in zip(one.lambdas, sorted(one.alpha, reverse=True)):
        assert alpha == pytest.approx(1.0 / lam, rel=1e-12)


def test_short_evolution_conserves_energy():
    g = rwave.RadialGrid.with_rmax(0.02, 8.0)
    v = [g.r(j) * math.exp(-g.r(j) ** 2) for j in range(g.n)]
    s = rwave.ReducedState(0.02, v, [0.0] * g.n)
    cfg = rwave.SolverConfig()
    cfg.h = 0.02
    cfg.T = 2.0
    coeff = rwave.CoefficientField.static_v(rwave.Potential.manufactured_star())
    traj = rwave.evolve(s, coeff, cfg, [0.0, 1.0, 2.0])
    assert traj.status == rwave.Trajectory.Status.Completed
    assert len(traj.snapshots) == 3
    e = traj.energy
    assert abs(e[-1] - e[0]) <= 1e-4 * abs(e[0])


def test_free_channel_of_outgoing_data():
    g = rwave.RadialGrid.with_rmax(0.01, 6.0)
    v = []
    vt = []
    for j in range(g.n):
        r = g.r(j)
        q = (r - 1.0) * (2.0 - r)
        b = math.exp(-1.0 / q) if q > 0.0 else 0.0
        v.append(b)
        db = b * (3.0 - 2.0 * r) / (q * q) if q > 0.0 else 0.0
        vt.append(-db)  # moving outward: v_t = -v_r
    s = rwave.ReducedState(0.01, v, vt)
    pair = rwave.split_padded(s, 20.0)
    rep = rwave.channel_direction(pair, s, 0.5)
    assert rep.direction in (rwave.Direction.Forward, rwave.Direction.Both)
    assert rep.margin > 0.0
    t0 = rwave.forward_time(pair)
    assert 0.0 <= t0 <= 2.0 * pair.L


def test_scenario_text_runs_and_is_reproducible():
    text = """
schema_version = 1
experiment = evolve
seed = 11

[potential]
kind = manufactured_star

[data]
kind = gaussian
amplitude = 0.5
width = 1.5
r_max = 8

[solver]
h = 0.02
T = 1

[params]
snapshots = 3
"""
    rec1, ok1, failures1 = rwave.run_scenario_text(text)
    rec2, ok2, _ = rwave.run_scenario_text(text)
    assert ok1 and ok2
    assert failures1 == []
    body1 = json.loads(rec1)["body"]
    body2 = json.loads(rec2)["body"]
    assert body1 == body2
    assert "results" in body1


def test_scenario_errors_carry_location():
    with pytest.raises(rwave.ScenarioError) as err:
        rwave.run_scenario_text("schema_version = 1\nexperiment = dance\n")
    assert "dance" in str(err.value)


def test_canonical_form_is_a_fixed_point():
    text = "schema_version = 1\nexperiment = steady-census\n\n[potential]\nkind = zero\n"
    once = rwave.canonical_scenario(text)
    assert rwave.canonical_scenario(once) == once
