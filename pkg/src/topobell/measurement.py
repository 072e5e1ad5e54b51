"""Spin measurement along in-plane directions, joint statistics and correlations.

A setting ``alpha`` (radians, measured from the quantization axis) has the
measurement basis::

    |+alpha> =  cos(alpha/2)|up> + i sin(alpha/2)|down>
    |-alpha> = -sin(alpha/2)|up> + i cos(alpha/2)|down>

so the dichotomic observable ``P+ - P-`` equals ``cos(alpha) sigma_z + sin(alpha) sigma_y``.

All array functions broadcast over leading axes of states and angles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalResidue
from .spinor import ALGEBRA_TOL, check_normalized, outer

TWO_PI = 2.0 * np.pi


def canonical_angle(angle):
    """Wrap to ``[0, 2*pi)``."""
    a = np.asarray(angle, dtype=float)
    if not np.all(np.isfinite(a)):
        raise ValueError("angles must be finite")
    w = np.mod(a, TWO_PI)
    # mod of a tiny negative number rounds up to exactly 2*pi
    w = np.where(w >= TWO_PI, 0.0, w)
    return float(w) if w.ndim == 0 else w


@dataclass(frozen=True)
class MeasurementSetting:
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", canonical_angle(self.angle))

    def __float__(self):
        return self.angle


def _angle_array(a) -> np.ndarray:
    if isinstance(a, MeasurementSetting):
        return np.asarray(a.angle)
    return np.asarray(a, dtype=float)


@dataclass(frozen=True)
class JointDistribution:
    """Outcome probabilities for (left, right) = (+,+), (+,-), (-,+), (-,-)."""

    p_uu: float
    p_ud: float
    p_du: float
    p_dd: float

    def as_array(self) -> np.ndarray:
        return np.array([self.p_uu, self.p_ud, self.p_du, self.p_dd])

    @property
    def correlation(self) -> float:
        return self.p_uu - self.p_ud - self.p_du + self.p_dd


def direction_states(setting) -> tuple[np.ndarray, np.ndarray]:
    """``(|+alpha>, |-alpha>)``, each of shape ``angle.shape + (2,)``."""
    a = _angle_array(setting)
    c = np.cos(a / 2.0)
    s = np.sin(a / 2.0)
    plus = np.stack([c + 0j, 1j * s], axis=-1)
    minus = np.stack([-s + 0j, 1j * c], axis=-1)
    return plus, minus


def projectors(setting) -> np.ndarray:
    """Stack ``[P+, P-]`` with shape ``angle.shape + (2, 2, 2)``."""
    plus, minus = direction_states(setting)
    return np.stack([outer(plus), outer(minus)], axis=-3)


def projector(setting, outcome: int) -> np.ndarray:
    """``|±alpha><±alpha|`` for ``outcome`` in ``{+1, -1}``."""
    if outcome not in (1, -1):
        raise ValueError("outcome must be +1 or -1")
    return projectors(setting)[..., 0 if outcome == 1 else 1, :, :]


def observable(setting) -> np.ndarray:
    """``A(alpha) = P+ - P-``."""
    p = projectors(setting)
    return p[..., 0, :, :] - p[..., 1, :, :]


def joint_probability_array(state, a, b, *, norm_tol: float = 1e-9) -> np.ndarray:
    """``p[..., i, j] = <psi| P_i(a) (x) P_j(b) |psi>`` with i, j indexing (+, -).

    ``state`` has shape ``(..., 4)``; its leading axes broadcast against
    those of ``a`` and ``b``.

    Raises
    ------
    NonNormalizedState
        If any state's norm deviates from one by more than ``norm_tol``.
    NumericalResidue
        If an imaginary part above 1e-12 survives (indicates a broken projector).
    """
    psi = check_normalized(state, norm_tol)
    psi = psi.reshape(psi.shape[:-1] + (2, 2))
    pl = projectors(a)
    pr = projectors(b)
    # <psi|(P_i ⊗ P_j)|psi> with psi indexed [left, right]
    p = np.einsum("...kl,...ikm,...jln,...mn->...ij", psi.conj(), pl, pr, psi, optimize=True)
    residue = np.max(np.abs(p.imag), initial=0.0)
    if residue > ALGEBRA_TOL:
        raise NumericalResidue(f"imaginary residue {residue:.3e} in joint probabilities")
    return p.real


def correlation_array(state, a, b, **kw) -> np.ndarray:
    p = joint_probability_array(state, a, b, **kw)
    return p[..., 0, 0] - p[..., 0, 1] - p[..., 1, 0] + p[..., 1, 1]


def joint_probabilities(state, a, b) -> JointDistribution:
    """Joint outcome distribution for one state and one pair of settings."""
    p = joint_probability_array(np.asarray(state), _angle_array(a), _angle_array(b))
    if p.shape != (2, 2):
        raise ValueError("joint_probabilities takes a single state and scalar settings")
    return JointDistribution(float(p[0, 0]), float(p[0, 1]), float(p[1, 0]), float(p[1, 1]))


def correlation(state, a, b) -> float:
    """``E(a, b) = p_uu - p_ud - p_du + p_dd``."""
    return joint_probabilities(state, a, b).correlation


def closed_form_probabilities(alpha, beta, delta) -> np.ndarray:
    """Analytic joint probabilities for ``(|ud> - e^{i delta}|du>)/sqrt2``.

    Shape ``broadcast(alpha, beta, delta) + (2, 2)``.
    """
    alpha, beta, delta = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (alpha, beta, delta)))
    e = -np.cos(alpha) * np.cos(beta) - np.sin(alpha) * np.sin(beta) * np.cos(delta)
    same = 0.25 * (1.0 + e)
    diff = 0.25 * (1.0 - e)
    return np.stack([np.stack([same, diff], -1), np.stack([diff, same], -1)], -2)


def closed_form_correlation(alpha, beta, delta):
    """``-cos a cos b - sin a sin b cos delta``."""
    return -np.cos(alpha) * np.cos(beta) - np.sin(alpha) * np.sin(beta) * np.cos(delta)
