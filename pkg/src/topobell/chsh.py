"""CHSH S-function, the fixed-angle violation curve and angle optimization.

The S-function combines four correlations with this sign pattern::

    S = |E(alpha, alpha') - E(alpha, beta)| + |E(alpha', beta') + E(beta, beta')|

where ``E(x, y)`` measures the left particle along ``x`` and the right one
along ``y``. At the reference angles ``(0, pi/4, 3*pi/4, pi/2)`` and a relative
phase ``delta`` this gives ``sqrt2 + sqrt2 |cos delta|``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .measurement import canonical_angle, closed_form_correlation, correlation_array
from .phases import AB, AC, Arm, BerryReduced, PhaseModel, evolved_singlet, relative_phase

TSIRELSON = 2.0 * math.sqrt(2.0)
SQRT2 = math.sqrt(2.0)


class Method(enum.Enum):
    CLOSED_FORM = "closed_form"
    PROJECTOR = "projector"
    OPTIMIZED = "optimized"


@dataclass(frozen=True)
class ChshSettings:
    alpha: float
    beta: float
    alpha_p: float
    beta_p: float

    def __post_init__(self):
        for name in ("alpha", "beta", "alpha_p", "beta_p"):
            object.__setattr__(self, name, canonical_angle(getattr(self, name)))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.alpha_p, self.beta_p)

    def pairs(self) -> list[tuple[float, float]]:
        """The four (left, right) settings in S-function order."""
        a, b, ap, bp = self.as_tuple()
        return [(a, ap), (a, b), (ap, bp), (b, bp)]


PAPER_ANGLES = ChshSettings(0.0, math.pi / 4, 3 * math.pi / 4, math.pi / 2)


@dataclass(frozen=True)
class ViolationReport:
    s_value: float
    settings: ChshSettings
    phase: float
    method: Method


def combine(e1, e2, e3, e4):
    """Combine the four correlations (in :meth:`ChshSettings.pairs` order)."""
    return np.abs(e1 - e2) + np.abs(e3 + e4)


def s_from_angles(state, alpha, beta, alpha_p, beta_p):
    """Vectorized projector-pipeline S; angle arrays broadcast with ``state[..., 0]``."""
    return combine(
        correlation_array(state, alpha, alpha_p),
        correlation_array(state, alpha, beta),
        correlation_array(state, alpha_p, beta_p),
        correlation_array(state, beta, beta_p),
    )


def s_function(state, settings: ChshSettings) -> float:
    """S for a two-particle state, built from projector statistics."""
    return float(s_from_angles(np.asarray(state), *settings.as_tuple()))


def s_closed_form(settings: ChshSettings, delta: float) -> float:
    """S from the analytic correlation of the phase-shifted singlet."""
    es = [closed_form_correlation(x, y, delta) for x, y in settings.pairs()]
    return float(combine(*es))


def s_paper_curve(delta):
    """``sqrt2 + sqrt2 |cos delta|``, the S value at the reference angles."""
    return SQRT2 + SQRT2 * np.abs(np.cos(delta))


def s_planar_max(delta):
    """Largest S reachable with in-plane settings: ``2 sqrt(1 + cos^2 delta)``."""
    return 2.0 * np.sqrt(1.0 + np.cos(delta) ** 2)


def evaluate(model: PhaseModel, settings: ChshSettings = PAPER_ANGLES, arm: Arm = Arm.LEFT,
             method: Method = Method.PROJECTOR) -> ViolationReport:
    if method is Method.PROJECTOR:
        s = s_function(evolved_singlet(model, arm), settings)
    elif method is Method.CLOSED_FORM:
        s = s_closed_form(settings, relative_phase(model))
    else:
        raise ValueError("use maximize_s for optimized reports")
    return ViolationReport(s, settings, model.phase, method)


def _grid_search(state, n: int):
    grid = np.arange(n) * (2.0 * np.pi / n)
    # table[i, j] = E(grid[i], grid[j])
    table = correlation_array(state, grid[:, None], grid[None, :])
    a = np.arange(n)[:, None, None, None]
    b = np.arange(n)[None, :, None, None]
    ap = np.arange(n)[None, None, :, None]
    bp = np.arange(n)[None, None, None, :]
    s = combine(table[a, ap], table[a, b], table[ap, bp], table[b, bp])
    # argmax returns the first maximum in C order: lexicographically smallest
    idx = np.unravel_index(int(np.argmax(s)), s.shape)
    return np.array([grid[i] for i in idx]), float(s[idx])


def _compass_search(state, x: np.ndarray, best: float, step: float, rounds: int, shrink: float):
    def f(v):
        return float(s_from_angles(state, *v))

    for _ in range(rounds):
        improved = True
        sweeps = 0
        while improved and sweeps < 64:
            improved = False
            sweeps += 1
            for k in range(4):
                for sign in (1.0, -1.0):
                    trial = x.copy()
                    trial[k] += sign * step
                    val = f(trial)
                    if val > best:
                        x, best, improved = trial, val, True
                        break
        step *= shrink
    return x, best


def maximize_s(model: PhaseModel, arm: Arm = Arm.LEFT, grid_resolution: int = 24,
               refinement_iters: int = 40, shrink: float = 0.5) -> ViolationReport:
    """Deterministic global maximization of S over the four angles.

    A full ``grid_resolution**4`` grid over ``[0, 2pi)^4`` seeds a compass
    search: each round sweeps the coordinates with ``±step`` moves until no
    move improves S, then multiplies ``step`` by ``shrink``. The reference
    angles are always considered as a seed, so the result never falls below
    their S value.
    """
    if grid_resolution < 8:
        raise ValueError("grid_resolution must be >= 8")
    if refinement_iters < 1:
        raise ValueError("refinement_iters must be >= 1")
    state = evolved_singlet(model, arm)
    x, best = _grid_search(state, grid_resolution)
    paper = np.array(PAPER_ANGLES.as_tuple())
    s_paper = float(s_from_angles(state, *paper))
    if s_paper > best:
        x, best = paper, s_paper
    x, best = _compass_search(state, x, best, np.pi / grid_resolution, refinement_iters, shrink)
    return ViolationReport(best, ChshSettings(*x), model.phase, Method.OPTIMIZED)


@dataclass(frozen=True)
class Table1Row:
    ab: float
    ac: float
    berry_reduced: float


def table1_summary(delta: float) -> Table1Row:
    """S at the reference angles for AB, AC(delta) and the reduced Berry case."""
    ab = s_function(evolved_singlet(AB(1.0, delta)), PAPER_ANGLES)
    ac = s_function(evolved_singlet(AC.from_delta(delta)), PAPER_ANGLES)
    berry = s_function(evolved_singlet(BerryReduced(delta)), PAPER_ANGLES)
    if ac != berry:
        raise AssertionError(f"AC and reduced Berry S differ: {ac!r} vs {berry!r}")
    if abs(ab - TSIRELSON) > 1e-12:
        raise AssertionError(f"AB S deviates from 2*sqrt2: {ab!r}")
    return Table1Row(ab=ab, ac=ac, berry_reduced=berry)
