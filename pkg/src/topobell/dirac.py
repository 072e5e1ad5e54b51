"""Planar (2+1 dimensional) Dirac matrices and the AB / AC interaction terms.

Natural units (hbar = c = 1). The two inequivalent 2x2 representations of the
Clifford algebra are labelled by ``s = +1`` / ``s = -1``::

    alpha_x = sigma_x,  alpha_y = s * sigma_y,  beta = sigma_z

Both interaction Hamiltonians have the form ``-k * (cos t sigma_x + sin t sigma_y)``
for an effective strength ``k`` and angle ``t``; their eigenvectors are the
states returned by :func:`analytic_eigenstates` evaluated at ``t``, and by direct
substitution the "up" state carries eigenvalue ``+k``::

    AB:  k = e*A,      t = s*theta
    AC:  k = s*mu*E~,  t = s*theta
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spinor import SIGMA_X, SIGMA_Y, SIGMA_Z


@dataclass(frozen=True)
class PlanarDiracConfig:
    s: int = 1
    m: float = 0.0

    def __post_init__(self):
        if self.s not in (1, -1) or isinstance(self.s, bool):
            raise ValueError(f"s must be +1 or -1, got {self.s!r}")
        if not np.isfinite(self.m):
            raise ValueError("mass must be finite")


@dataclass(frozen=True)
class AbFieldConfig:
    """Gauge potential of magnitude ``A_mag`` along angle ``theta``."""

    A_mag: float
    theta: float = 0.0
    e_charge: float = 1.0
    Phi: float = 0.0

    def __post_init__(self):
        _check_finite(self.A_mag, self.theta, self.e_charge, self.Phi)
        if self.A_mag < 0:
            raise ValueError("A_mag must be >= 0")


@dataclass(frozen=True)
class AcFieldConfig:
    """Redefined field ``E x z`` of magnitude ``E_mag`` along angle ``theta``."""

    E_mag: float
    theta: float = 0.0
    mu: float = 1.0
    lambda_E: float = 0.0

    def __post_init__(self):
        _check_finite(self.E_mag, self.theta, self.mu, self.lambda_E)
        if self.E_mag < 0:
            raise ValueError("E_mag must be >= 0")

    @classmethod
    def from_field(cls, E_x: float, E_y: float, mu: float = 1.0, lambda_E: float = 0.0):
        """Build from the in-plane electric field rather than the redefined one."""
        tx, ty = e_tilde_from_e(E_x, E_y)
        return cls(E_mag=float(np.hypot(tx, ty)), theta=float(np.arctan2(ty, tx)), mu=mu, lambda_E=lambda_E)


def _check_finite(*values):
    if not all(np.isfinite(v) for v in values):
        raise ValueError("field parameters must be finite")


def alpha_matrices(cfg: PlanarDiracConfig = PlanarDiracConfig()):
    """Return ``(alpha_x, alpha_y, beta)`` for representation ``cfg.s``."""
    return np.array(SIGMA_X), cfg.s * np.array(SIGMA_Y), np.array(SIGMA_Z)


def free_hamiltonian(p_x: float, p_y: float, cfg: PlanarDiracConfig = PlanarDiracConfig()) -> np.ndarray:
    """Free planar Dirac Hamiltonian. Diagnostic only; plays no role in phase pickup."""
    ax, ay, beta = alpha_matrices(cfg)
    return p_x * ax + p_y * ay + cfg.m * beta


def _planar_coupling(vx: float, vy: float, cfg: PlanarDiracConfig) -> np.ndarray:
    ax, ay, _ = alpha_matrices(cfg)
    return ax * vx + ay * vy


def h_ab(field: AbFieldConfig, cfg: PlanarDiracConfig = PlanarDiracConfig()) -> np.ndarray:
    """Effective AB interaction ``-e alpha . A``; spectrum ``{+eA, -eA}``."""
    ax = field.A_mag * np.cos(field.theta)
    ay = field.A_mag * np.sin(field.theta)
    return -field.e_charge * _planar_coupling(ax, ay, cfg)


def h_ac(field: AcFieldConfig, cfg: PlanarDiracConfig = PlanarDiracConfig()) -> np.ndarray:
    """Effective AC interaction ``-s mu alpha . E~``; spectrum ``{+mu E~, -mu E~}``."""
    ex = field.E_mag * np.cos(field.theta)
    ey = field.E_mag * np.sin(field.theta)
    return -cfg.s * field.mu * _planar_coupling(ex, ey, cfg)


def e_tilde_from_e(E_x: float, E_y: float) -> tuple[float, float]:
    """In-plane part of ``E x z``, i.e. ``(E_y, -E_x)``."""
    return float(E_y), -float(E_x)


def analytic_eigenstates(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """``up = (-e^{-i theta}, 1)/sqrt2`` and ``down = (e^{-i theta}, 1)/sqrt2``."""
    ph = np.exp(-1j * theta)
    up = np.array([-ph, 1.0], dtype=complex) / np.sqrt(2.0)
    down = np.array([ph, 1.0], dtype=complex) / np.sqrt(2.0)
    return up, down


def _paired(strength: float, angle: float):
    up, down = analytic_eigenstates(angle)
    pairs = [(strength, up, "up"), (-strength, down, "down")]
    pairs.sort(key=lambda p: -p[0])
    return pairs


def ab_eigenpairs(field: AbFieldConfig, cfg: PlanarDiracConfig = PlanarDiracConfig()):
    """Analytic ``[(eigenvalue, state, label), ...]`` of :func:`h_ab`, descending."""
    return _paired(field.e_charge * field.A_mag, cfg.s * field.theta)


def ac_eigenpairs(field: AcFieldConfig, cfg: PlanarDiracConfig = PlanarDiracConfig()):
    """Analytic ``[(eigenvalue, state, label), ...]`` of :func:`h_ac`, descending.

    Flipping ``s`` keeps the spectrum but hands the positive eigenvalue to the
    other analytic state (and conjugates the angle).
    """
    return _paired(cfg.s * field.mu * field.E_mag, cfg.s * field.theta)
