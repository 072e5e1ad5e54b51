"""Exact complex linear algebra on 2- and 4-dimensional spin spaces.

States and operators are plain ``numpy`` complex arrays:

* a spinor is shape ``(2,)`` ordered (up, down),
* a two-particle state is shape ``(4,)`` ordered (uu, ud, du, dd) with the
  left particle as the major index,
* operators are ``(2, 2)`` or ``(4, 4)``.

Module-level constants are read-only so they can be shared freely.
"""

from __future__ import annotations

import numpy as np

from .errors import NonHermitianInput, NonNormalizedState

ALGEBRA_TOL = 1e-12
EIGEN_TOL = 1e-10


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=complex)
    arr.setflags(write=False)
    return arr


I2 = _frozen([[1, 0], [0, 1]])
SIGMA_X = _frozen([[0, 1], [1, 0]])
SIGMA_Y = _frozen([[0, -1j], [1j, 0]])
SIGMA_Z = _frozen([[1, 0], [0, -1]])
I4 = _frozen(np.eye(4))

UP = _frozen([1, 0])
DOWN = _frozen([0, 1])


def as_complex(a, shape: tuple[int, ...] | None = None, name: str = "array") -> np.ndarray:
    """Coerce to a complex array, checking shape and finiteness."""
    arr = np.asarray(a, dtype=complex)
    if shape is not None and arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def norm(v) -> float:
    return float(np.linalg.norm(v))


def normalize(v) -> np.ndarray:
    v = as_complex(v, name="vector")
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return v / n


def spinor(a0, a1) -> np.ndarray:
    """Unit spinor proportional to ``(a0, a1)``."""
    return normalize([a0, a1])


def check_normalized(state, tol: float = 1e-9) -> np.ndarray:
    """Return ``state`` as a complex array or raise :class:`NonNormalizedState`.

    Works on batches: the last axis is the vector axis.
    """
    arr = np.asarray(state, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError("state contains NaN or Inf")
    dev = np.max(np.abs(np.linalg.norm(arr, axis=-1) - 1.0), initial=0.0)
    if dev > tol:
        raise NonNormalizedState(f"state norm deviates from 1 by {dev:.3e} (tol {tol:g})")
    return arr


def is_hermitian(m, tol: float = ALGEBRA_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(np.all(np.abs(m - m.conj().swapaxes(-1, -2)) <= tol))


def dagger(m) -> np.ndarray:
    return np.asarray(m).conj().swapaxes(-1, -2)


def outer(u, v=None) -> np.ndarray:
    """``|u><v|`` (``v`` defaults to ``u``); broadcasts over leading axes."""
    u = np.asarray(u, dtype=complex)
    v = u if v is None else np.asarray(v, dtype=complex)
    return u[..., :, None] * v[..., None, :].conj()


def tensor(left, right) -> np.ndarray:
    """Kronecker product ``left ⊗ right`` of two 2x2 operators.

    Leading batch axes broadcast, so stacks of operators are accepted.
    """
    a = np.asarray(left, dtype=complex)
    b = np.asarray(right, dtype=complex)
    out = a[..., :, None, :, None] * b[..., None, :, None, :]
    return out.reshape(out.shape[:-4] + (4, 4))


def product_state(left, right) -> np.ndarray:
    return np.kron(np.asarray(left, dtype=complex), np.asarray(right, dtype=complex))


def apply(op, state) -> np.ndarray:
    return np.asarray(op, dtype=complex) @ np.asarray(state, dtype=complex)


def expectation(state, op) -> complex:
    state = np.asarray(state, dtype=complex)
    return complex(np.vdot(state, np.asarray(op, dtype=complex) @ state))


def phase_gate(phi_up: float, phi_down: float) -> np.ndarray:
    """Diagonal unitary ``diag(e^{i phi_up}, e^{i phi_down})``."""
    return np.diag(np.exp(1j * np.array([phi_up, phi_down], dtype=float)))


def _canonical_phase(v: np.ndarray, tol: float = ALGEBRA_TOL) -> np.ndarray:
    # First component above tol becomes real-positive; that entry is set to its
    # modulus exactly so that a second pass is a no-op.
    v = np.array(v, dtype=complex)
    for k, a in enumerate(v):
        r = abs(a)
        if r > tol:
            # componentwise so an already-canonical entry gives exactly 1
            v = v * complex(a.real / r, -a.imag / r)
            v[k] = r
            return v
    return v


def eig_hermitian_2x2(m, tol: float = ALGEBRA_TOL) -> list[tuple[float, np.ndarray]]:
    """Closed-form eigendecomposition of a 2x2 Hermitian matrix.

    Returns ``[(lam_hi, v_hi), (lam_lo, v_lo)]`` sorted by descending
    eigenvalue. Each eigenvector is unit-norm with its first nonzero component
    real-positive. A degenerate spectrum yields the computational basis.

    Raises
    ------
    NonHermitianInput
        If ``m`` differs from its adjoint by more than ``tol`` in any entry.
    """
    m = as_complex(m, (2, 2), "matrix")
    if not is_hermitian(m, tol):
        raise NonHermitianInput("matrix is not Hermitian within %g" % tol)
    a = m[0, 0].real
    d = m[1, 1].real
    b = 0.5 * (m[0, 1] + m[1, 0].conjugate())
    mean = 0.5 * (a + d)
    half = 0.5 * (a - d)
    r = float(np.hypot(half, abs(b)))
    if r == 0.0:
        return [(mean, np.array(UP)), (mean, np.array(DOWN))]

    pairs = []
    for lam in (mean + r, mean - r):
        # Two candidate null vectors of (m - lam I); the longer one is the
        # better conditioned.
        c1 = np.array([b, lam - a])
        c2 = np.array([lam - d, b.conjugate()])
        v = c1 if np.linalg.norm(c1) >= np.linalg.norm(c2) else c2
        pairs.append((float(lam), _canonical_phase(v / np.linalg.norm(v))))
    return pairs


def overlap(u, v) -> complex:
    return complex(np.vdot(np.asarray(u, dtype=complex), np.asarray(v, dtype=complex)))


def fidelity(u, v) -> float:
    """``|<u|v>|^2`` for unit vectors."""
    return abs(overlap(u, v)) ** 2


def equal_up_to_global_phase(u, v, tol: float = ALGEBRA_TOL) -> bool:
    """True iff ``|<u|v>| >= 1 - tol`` for unit-norm ``u`` and ``v``."""
    return abs(overlap(u, v)) >= 1.0 - tol
