import itertools

import numpy as np
import pytest

from topobell.chsh import (
    PAPER_ANGLES, TSIRELSON, ChshSettings, Method,
    evaluate, maximize_s, s_closed_form, s_from_angles, s_function, s_paper_curve, s_planar_max, table1_summary,
)
from topobell.measurement import closed_form_correlation, correlation
from topobell.phases import AB, AC, Arm, BerryReduced, DualAB, HMW, evolved_singlet, singlet

SQRT2 = np.sqrt(2)


def phased_singlet(delta):
    return np.array([0, 1, -np.exp(1j * delta), 0]) / np.sqrt(2)


def brute_force_max(delta, n):
    """Exhaustive grid over the analytic correlation, independent of the optimizer."""
    g = np.arange(n) * 2 * np.pi / n
    best = -1.0
    for a, b, ap, bp in itertools.product(g, repeat=4):
        e = lambda x, y: closed_form_correlation(x, y, delta)  # noqa: E731
        best = max(best, abs(e(a, ap) - e(a, b)) + abs(e(ap, bp) + e(b, bp)))
    return best


def test_settings_canonicalized():
    s = ChshSettings(-np.pi / 4, 2 * np.pi, 7.0, 0.5)
    assert s.alpha == pytest.approx(7 * np.pi / 4)
    assert s.beta == 0.0
    assert s.pairs() == [(s.alpha, s.alpha_p), (s.alpha, s.beta), (s.alpha_p, s.beta_p), (s.beta, s.beta_p)]


def test_singlet_paper_angles():
    assert s_function(singlet(), PAPER_ANGLES) == pytest.approx(2 * SQRT2, abs=1e-12)


@pytest.mark.parametrize("delta", [0.0, 0.3, 1.0, np.pi / 2, 2.5, np.pi, 4.0])
def test_phased_singlet_reference_angles(delta):
    assert s_function(phased_singlet(delta), PAPER_ANGLES) == pytest.approx(SQRT2 + SQRT2 * abs(np.cos(delta)), abs=1e-12)


def test_degenerate_settings(rng):
    for _ in range(20):
        a = rng.uniform(0, 7)
        psi = evolved_singlet(AC.from_delta(rng.uniform(0, 7)))
        assert s_function(psi, ChshSettings(a, a, a, a)) == pytest.approx(2 * abs(correlation(psi, a, a)), abs=1e-12)


def test_paper_curve_values():
    assert s_paper_curve(0.0) == pytest.approx(2.828427, abs=1e-6)
    assert s_paper_curve(np.pi / 2) == pytest.approx(1.414214, abs=1e-6)
    assert s_paper_curve(np.pi / 3) == pytest.approx(3 * SQRT2 / 2, abs=1e-12)


def test_paper_curve_matches_projector_and_periodic():
    deltas = np.linspace(0, 2 * np.pi, 1024, endpoint=False)
    for d in deltas:
        assert abs(s_function(evolved_singlet(AC.from_delta(d)), PAPER_ANGLES) - s_paper_curve(d)) <= 1e-12
    np.testing.assert_allclose(s_paper_curve(deltas), s_paper_curve(deltas + np.pi), atol=1e-12)


def test_closed_form_agrees_with_projector(rng):
    for _ in range(500):
        st = ChshSettings(*rng.uniform(0, 7, 4))
        d = rng.uniform(-7, 7)
        for arm in Arm:
            proj = s_function(evolved_singlet(AC.from_delta(d), arm), st)
            assert proj == pytest.approx(s_closed_form(st, d), abs=1e-12)


def test_tsirelson_bound_random(rng):
    n = 100_000
    deltas = rng.uniform(-10, 10, n)
    states = np.array([phased_singlet(d) for d in deltas])
    s = s_from_angles(states, *rng.uniform(0, 2 * np.pi, (4, n)))
    assert s.max() <= TSIRELSON + 1e-9
    assert s.min() >= 0


def test_evaluate_report():
    rep = evaluate(AB(1.0, 0.3))
    assert rep.method is Method.PROJECTOR and rep.phase == pytest.approx(0.3)
    assert rep.s_value == pytest.approx(TSIRELSON, abs=1e-12)
    assert evaluate(AC.from_delta(np.pi / 2), method=Method.CLOSED_FORM).s_value == pytest.approx(SQRT2, abs=1e-12)
    with pytest.raises(ValueError):
        evaluate(AB(), method=Method.OPTIMIZED)


def test_brute_force_oracle_values():
    # n = 8 contains the reference angles and the delta = pi/2 maximizers
    assert brute_force_max(np.pi / 2, 8) == pytest.approx(2.0, abs=1e-12)
    assert brute_force_max(0.0, 8) == pytest.approx(TSIRELSON, abs=1e-12)


def test_maximize_ac_half_pi():
    rep = maximize_s(AC.from_delta(np.pi / 2))
    assert rep.method is Method.OPTIMIZED
    assert rep.s_value == pytest.approx(brute_force_max(np.pi / 2, 8), abs=1e-6)
    assert rep.s_value == pytest.approx(2.0, abs=1e-6)


def test_maximize_standard_singlet():
    assert maximize_s(AC.from_delta(0.0)).s_value == pytest.approx(TSIRELSON, abs=1e-6)


@pytest.mark.parametrize("delta", [0.2, 0.7, 1.0, 1.3, 2.0, 2.9, 4.4])
def test_maximize_reaches_planar_bound(delta):
    rep = maximize_s(AC.from_delta(delta), grid_resolution=16, refinement_iters=40)
    assert rep.s_value == pytest.approx(float(s_planar_max(delta)), abs=1e-6)
    assert rep.s_value <= TSIRELSON + 1e-9
    # reported settings reproduce the reported value
    assert s_function(evolved_singlet(AC.from_delta(delta)), rep.settings) == pytest.approx(rep.s_value, abs=1e-12)


def test_planar_bound_dominates_paper_curve():
    d = np.linspace(0, 2 * np.pi, 1000)
    assert np.all(s_planar_max(d) >= s_paper_curve(d) - 1e-15)


def test_maximize_never_below_paper_angles():
    for d in np.linspace(0, 2 * np.pi, 12, endpoint=False):
        model = AC.from_delta(d)
        rep = maximize_s(model, grid_resolution=10, refinement_iters=10)
        assert rep.s_value >= s_function(evolved_singlet(model), PAPER_ANGLES) - 1e-9


def test_maximize_ab_flat():
    vals = [maximize_s(AB(1.0, p), grid_resolution=12, refinement_iters=20).s_value
            for p in np.linspace(0, 2 * np.pi, 32)]
    assert max(vals) - min(vals) < 1e-6


def test_maximize_deterministic_and_arm_independent():
    m = AC.from_delta(1.1)
    r1 = maximize_s(m, grid_resolution=12)
    r2 = maximize_s(m, grid_resolution=12)
    assert r1 == r2
    r3 = maximize_s(m, Arm.RIGHT, grid_resolution=12)
    assert r3.s_value == pytest.approx(r1.s_value, abs=1e-9)


def test_maximize_validates():
    with pytest.raises(ValueError):
        maximize_s(AB(), grid_resolution=7)
    with pytest.raises(ValueError):
        maximize_s(AB(), refinement_iters=0)


@pytest.mark.parametrize("model", [HMW.from_delta(1.2), DualAB(2.0, 0.9), BerryReduced(1.2)])
def test_family_closed_forms(model):
    s = s_function(evolved_singlet(model), PAPER_ANGLES)
    expected = s_paper_curve(model.phase) if model.spin_dependent else TSIRELSON
    assert s == pytest.approx(expected, abs=1e-12)


def test_table1_rows():
    r = table1_summary(0.0)
    assert r.ab == pytest.approx(TSIRELSON, abs=1e-12)
    assert r.ac == r.berry_reduced == pytest.approx(TSIRELSON, abs=1e-12)
    r = table1_summary(np.pi / 2)
    assert r.ab == pytest.approx(TSIRELSON, abs=1e-12)
    assert r.ac == r.berry_reduced == pytest.approx(SQRT2, abs=1e-12)
    r = table1_summary(np.pi)
    assert r.ac == r.berry_reduced == pytest.approx(TSIRELSON, abs=1e-12)
