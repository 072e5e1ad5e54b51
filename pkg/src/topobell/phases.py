"""Per-spin-component topological phases and evolution of the singlet.

Each model says which phase the up and down components of one particle pick
up after a closed cycle. Spin-independent models (AB and its dual) only
produce a global phase; spin-dependent ones (AC, HMW) imprint a relative phase
``delta = phi_down - phi_up`` between the two branches of the singlet.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .spinor import _canonical_phase, as_complex, check_normalized


class Arm(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class AB:
    """Charge ``e_charge`` around flux ``Phi``: phase ``e*Phi`` on both components."""

    e_charge: float = 1.0
    Phi: float = 0.0
    spin_dependent = False

    def component_phases(self) -> tuple[float, float]:
        p = self.e_charge * self.Phi
        return p, p

    @property
    def phase(self) -> float:
        return self.e_charge * self.Phi


@dataclass(frozen=True)
class DualAB:
    """Magnetic charge ``g_charge`` around electric flux ``Phi_E``."""

    g_charge: float = 1.0
    Phi_E: float = 0.0
    spin_dependent = False

    def component_phases(self) -> tuple[float, float]:
        p = self.g_charge * self.Phi_E
        return p, p

    @property
    def phase(self) -> float:
        return self.g_charge * self.Phi_E


@dataclass(frozen=True)
class AC:
    """Magnetic dipole ``mu`` around a line charge ``lambda_E``.

    Up picks up ``e^{-i mu lambda}``, down ``e^{+i mu lambda}``.
    """

    mu: float = 1.0
    lambda_E: float = 0.0
    spin_dependent = True

    def component_phases(self) -> tuple[float, float]:
        h = self.mu * self.lambda_E
        return -h, h

    @property
    def phase(self) -> float:
        return 2.0 * (self.mu * self.lambda_E)

    @classmethod
    def from_delta(cls, delta: float) -> "AC":
        return cls(mu=1.0, lambda_E=0.5 * delta)


@dataclass(frozen=True)
class HMW:
    """Electric dipole ``d_moment`` around a magnetic line charge ``lambda_B``."""

    d_moment: float = 1.0
    lambda_B: float = 0.0
    spin_dependent = True

    def component_phases(self) -> tuple[float, float]:
        h = self.d_moment * self.lambda_B
        return -h, h

    @property
    def phase(self) -> float:
        return 2.0 * (self.d_moment * self.lambda_B)

    @classmethod
    def from_delta(cls, delta: float) -> "HMW":
        return cls(d_moment=1.0, lambda_B=0.5 * delta)


@dataclass(frozen=True)
class BerryReduced:
    """Spin-antisymmetric phase ``-/+ delta/2``; the zero-azimuth Berry reduction."""

    delta: float = 0.0
    spin_dependent = True

    def component_phases(self) -> tuple[float, float]:
        h = self.delta / 2.0
        return -h, h

    @property
    def phase(self) -> float:
        return self.delta


PhaseModel = AB | DualAB | AC | HMW | BerryReduced

MODEL_TYPES = {"ab": AB, "dual-ab": DualAB, "ac": AC, "hmw": HMW, "berry": BerryReduced}


def model_from_phase(kind: str, phase: float) -> PhaseModel:
    """Model of type ``kind`` whose composite phase (``eΦ``, ``2μλ``, ...) is ``phase``."""
    if kind == "ab":
        return AB(e_charge=1.0, Phi=phase)
    if kind == "dual-ab":
        return DualAB(g_charge=1.0, Phi_E=phase)
    if kind == "ac":
        return AC.from_delta(phase)
    if kind == "hmw":
        return HMW.from_delta(phase)
    if kind == "berry":
        return BerryReduced(delta=phase)
    raise ValueError(f"unknown model kind {kind!r}")


def component_phases(model: PhaseModel) -> tuple[float, float]:
    """``(phi_up, phi_down)`` acquired by the affected particle."""
    return model.component_phases()


def relative_phase(model: PhaseModel) -> float:
    """``phi_down - phi_up``; zero for spin-independent models."""
    up, down = model.component_phases()
    return down - up


def singlet() -> np.ndarray:
    """``(|ud> - |du>)/sqrt2`` in (uu, ud, du, dd) ordering."""
    r = 1.0 / np.sqrt(2.0)
    return np.array([0.0, r, -r, 0.0], dtype=complex)


def evolve(state, model: PhaseModel, arm: Arm = Arm.LEFT) -> np.ndarray:
    """Apply the model's phase gate to one particle, identity to the other.

    ``state`` may carry leading batch axes.
    """
    psi = check_normalized(state)
    phi_up, phi_down = model.component_phases()
    gate = np.exp(1j * np.array([phi_up, phi_down], dtype=float))
    grid = psi.reshape(psi.shape[:-1] + (2, 2))
    if arm is Arm.LEFT:
        out = grid * gate[:, None]
    elif arm is Arm.RIGHT:
        out = grid * gate[None, :]
    else:
        raise ValueError(f"arm must be an Arm, got {arm!r}")
    return out.reshape(psi.shape)


def evolved_singlet(model: PhaseModel, arm: Arm = Arm.LEFT) -> np.ndarray:
    return evolve(singlet(), model, arm)


def reduce_global_phase(state) -> np.ndarray:
    """Rescale by a unit scalar so the first nonzero amplitude is real-positive."""
    psi = as_complex(state, (4,), "state")
    check_normalized(psi)
    return _canonical_phase(psi)
