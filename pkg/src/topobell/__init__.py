"""Topological phases (Aharonov-Bohm, Aharonov-Casher and their duals) on
entangled spin-1/2 singlets: projector statistics, CHSH S-functions and
numerical maximization of the violation over measurement angles."""

from .chsh import (
    PAPER_ANGLES,
    ChshSettings,
    Method,
    ViolationReport,
    maximize_s,
    s_closed_form,
    s_function,
    s_paper_curve,
    table1_summary,
)
from .errors import NonHermitianInput, NonNormalizedState
from .measurement import JointDistribution, correlation, joint_probabilities
from .phases import AB, AC, HMW, Arm, BerryReduced, DualAB, evolve, reduce_global_phase, singlet

__all__ = [
    "AB", "AC", "HMW", "DualAB", "BerryReduced", "Arm",
    "singlet", "evolve", "reduce_global_phase",
    "JointDistribution", "joint_probabilities", "correlation",
    "ChshSettings", "PAPER_ANGLES", "Method", "ViolationReport",
    "s_function", "s_closed_form", "s_paper_curve", "maximize_s", "table1_summary",
    "NonHermitianInput", "NonNormalizedState",
]
