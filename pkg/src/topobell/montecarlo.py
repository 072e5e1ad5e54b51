"""Seeded Monte Carlo sampling of two-arm spin measurements.

Each settings pair draws from its own Philox stream, keyed by
``SeedSequence(seed, spawn_key=(pair_index,))``, so batches are independent
and reproducible regardless of the order in which they are run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chsh import ChshSettings, combine
from .measurement import canonical_angle, joint_probability_array
from .phases import Arm, PhaseModel, evolved_singlet

OUTCOMES = ("uu", "ud", "du", "dd")

# Probabilities below this are rounding residue of exact zeros.
_ZERO_PROB = 1e-15


@dataclass(frozen=True)
class SampleConfig:
    seed: int
    n_samples: int
    settings: ChshSettings | tuple[float, float]
    model: PhaseModel
    arm: Arm = Arm.LEFT

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if int(self.n_samples) < 1:
            raise ValueError("n_samples must be >= 1")

    def pairs(self) -> list[tuple[float, float]]:
        if isinstance(self.settings, ChshSettings):
            return self.settings.pairs()
        a, b = self.settings
        return [(canonical_angle(a), canonical_angle(b))]


@dataclass(frozen=True)
class EmpiricalCounts:
    """Outcome counts, one row per settings pair, columns ordered as ``OUTCOMES``."""

    pairs: list[tuple[float, float]]
    counts: np.ndarray
    probabilities: np.ndarray = field(repr=False)

    @property
    def n_samples(self) -> int:
        return int(self.counts[0].sum())

    @property
    def frequencies(self) -> np.ndarray:
        return self.counts / self.counts.sum(axis=1, keepdims=True)

    @property
    def std_errors(self) -> np.ndarray:
        """Binomial standard error ``sqrt(p(1-p)/N)`` of each frequency, at the analytic p."""
        p = self.probabilities
        return np.sqrt(p * (1.0 - p) / self.counts.sum(axis=1, keepdims=True))

    @property
    def z_scores(self) -> np.ndarray:
        dev = self.frequencies - self.probabilities
        se = self.std_errors
        with np.errstate(divide="ignore", invalid="ignore"):
            z = np.where(se > 0, dev / np.where(se > 0, se, 1.0), np.where(dev == 0, 0.0, np.inf))
        return z

    def correlations(self) -> np.ndarray:
        c = self.counts
        return (c[:, 0] - c[:, 1] - c[:, 2] + c[:, 3]) / c.sum(axis=1)


def _generator(seed: int, stream: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(ss))


def _draw(probs: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    p = np.where(probs < _ZERO_PROB, 0.0, probs)
    cdf = np.cumsum(p)
    cdf /= cdf[-1]
    u = rng.random(n)
    # side="right": u == cdf[k] never lands on a zero-width bin k
    idx = np.searchsorted(cdf, u, side="right")
    return np.bincount(np.minimum(idx, 3), minlength=4)


def sample_outcomes(cfg: SampleConfig) -> EmpiricalCounts:
    """Inverse-CDF sampling of the four joint outcomes for every settings pair."""
    state = evolved_singlet(cfg.model, cfg.arm)
    pairs = cfg.pairs()
    probs = np.array([joint_probability_array(state, a, b).reshape(4) for a, b in pairs])
    counts = np.array(
        [_draw(p, int(cfg.n_samples), _generator(cfg.seed, k)) for k, p in enumerate(probs)],
        dtype=np.int64,
    )
    return EmpiricalCounts(pairs=pairs, counts=counts, probabilities=probs)


@dataclass(frozen=True)
class EmpiricalS:
    value: float
    std_error: float
    correlations: np.ndarray
    counts: EmpiricalCounts


def empirical_s(cfg: SampleConfig) -> EmpiricalS:
    """Estimate S from four independent batches of ``n_samples`` each.

    Each correlation's standard error is ``sqrt((1 - E^2)/N)`` at the empirical
    E; the four are added in quadrature (the absolute values do not change the
    first-order error).
    """
    if not isinstance(cfg.settings, ChshSettings):
        raise ValueError("empirical_s needs ChshSettings (four angles)")
    counts = sample_outcomes(cfg)
    e = counts.correlations()
    n = counts.counts.sum(axis=1)
    se = np.sqrt(np.clip(1.0 - e**2, 0.0, None) / n)
    value = float(combine(*e))
    return EmpiricalS(value, float(np.sqrt(np.sum(se**2))), e, counts)
