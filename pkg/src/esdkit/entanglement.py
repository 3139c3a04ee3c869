"""Wootters concurrence: general eigenvalue form and the X-state closed form."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numeric import hermitian_eigenvalues, psd_sqrt
from .states import BathParams, WernerParams, XState, check_density_matrix
from .dynamics import propagate_analytic

EIG_CLAMP = -1e-10

_SYSY = np.zeros((4, 4), dtype=complex)
_SYSY[0, 3] = _SYSY[3, 0] = -1.0
_SYSY[1, 2] = _SYSY[2, 1] = 1.0  # sigma_y (x) sigma_y


@dataclass(frozen=True)
class ConcurrenceSample:
    """Concurrence C at time t."""

    t: float
    C: float


def concurrence_general(rho: np.ndarray) -> float:
    """Concurrence of an arbitrary two-qubit density matrix.

    Uses the Hermitized form: the spin-flip spectrum is taken from
    sqrt(rho) rho_tilde sqrt(rho), which shares its eigenvalues with
    rho rho_tilde but keeps the eigenproblem Hermitian.
    """
    rho = check_density_matrix(rho)
    rho_tilde = _SYSY @ rho.conj() @ _SYSY
    s = psd_sqrt(rho)
    zeta = s @ rho_tilde @ s
    vals = hermitian_eigenvalues(0.5 * (zeta + zeta.conj().T))
    if vals[-1] < EIG_CLAMP:
        raise ValueError(f"spin-flip spectrum has eigenvalue {vals[-1]:.3e} below clamp")
    roots = np.sqrt(np.clip(vals, 0.0, None))
    c = roots[0] - roots[1] - roots[2] - roots[3]
    return max(0.0, float(c))


def concurrence_x(s: XState) -> float:
    """Closed-form concurrence 2 max(0, |u| - sqrt(x w), |v| - sqrt(y z))."""
    inner = abs(s.u) - math.sqrt(max(s.x * s.w, 0.0))
    outer = abs(s.v) - math.sqrt(max(s.y * s.z, 0.0))
    return 2.0 * max(0.0, inner, outer)


def concurrence_trajectory(
    p: WernerParams,
    bath: BathParams,
    times: np.ndarray,
    family: str = "phi",
) -> list[ConcurrenceSample]:
    """Concurrence along the closed-form evolution at the given times.

    Times must be ascending and nonnegative. For the phi family the active
    branch is |u(t)| - sqrt(x w); for psi it is |v(t)| - sqrt(y z); the
    closed form picks the winner automatically.
    """
    times = np.asarray(times, dtype=float)
    if times.size and times[0] < 0:
        raise ValueError("times must be nonnegative")
    if np.any(np.diff(times) < 0):
        raise ValueError("times must be ascending")
    return [
        ConcurrenceSample(t=float(t), C=concurrence_x(propagate_analytic(p, bath, float(t), family)))
        for t in times
    ]
