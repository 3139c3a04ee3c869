"""Small numerical kernel for 4x4 Hermitian problems.

Everything here is self-contained on purpose: a cyclic complex Jacobi
eigensolver for 4x4 Hermitian matrices, a PSD matrix square root built on
it, a classical fixed-step RK4 integrator, and a bracketing bisection
root-finder. numpy is used only as the array container.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

HERMITIAN_ATOL = 1e-12
PSD_EIG_FLOOR = -1e-10
JACOBI_OFF_TOL = 1e-14
_MAX_SWEEPS = 100


def _check_hermitian(m: np.ndarray, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    dev = np.max(np.abs(m - m.conj().T))
    if dev > atol:
        raise ValueError(f"matrix is not Hermitian: max|M - M^dag| = {dev:.3e} > {atol:.1e}")
    return m


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def hermitian_eig(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a 4x4 Hermitian matrix by cyclic Jacobi rotations.

    Returns (values, vectors) with real eigenvalues sorted descending and
    the matching eigenvectors as columns of a unitary matrix. Sweeps stop
    once the off-diagonal Frobenius norm is at most 1e-14.
    """
    a = _check_hermitian(m).copy()
    v = np.eye(4, dtype=complex)
    for _ in range(_MAX_SWEEPS):
        if _offdiag_norm(a) <= JACOBI_OFF_TOL:
            break
        for p in range(4):
            for q in range(p + 1, 4):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                # phase so the (p,q) block becomes real, then a real rotation
                phase = apq.conjugate() / mag
                theta = 0.5 * math.atan2(2.0 * mag, a[p, p].real - a[q, q].real)
                c = math.cos(theta)
                s = math.sin(theta)
                j = np.eye(4, dtype=complex)
                j[p, p] = c
                j[p, q] = -s
                j[q, p] = phase * s
                j[q, q] = phase * c
                a = j.conj().T @ a @ j
                v = v @ j
        a = 0.5 * (a + a.conj().T)
    else:
        raise RuntimeError("Jacobi sweep did not converge to the 1e-14 off-diagonal norm")
    vals = np.diag(a).real
    order = np.argsort(-vals)
    return vals[order], v[:, order]


def hermitian_eigenvalues(m: np.ndarray) -> np.ndarray:
    """All four eigenvalues of a Hermitian 4x4 matrix, sorted descending."""
    vals, _ = hermitian_eig(m)
    return vals


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Hermitian square root S of a PSD matrix, S @ S == m.

    Eigenvalues in [-1e-10, 0) are treated as round-off and clamped to
    zero; anything more negative raises.
    """
    vals, vecs = hermitian_eig(m)
    if vals[-1] < PSD_EIG_FLOOR:
        raise ValueError(f"matrix is not PSD: min eigenvalue {vals[-1]:.3e} < {PSD_EIG_FLOOR:.1e}")
    roots = np.sqrt(np.clip(vals, 0.0, None))
    s = (vecs * roots) @ vecs.conj().T
    return 0.5 * (s + s.conj().T)


def rk4_integrate(
    f: Callable[[np.ndarray], np.ndarray],
    s0: np.ndarray,
    t0: float,
    t1: float,
    dt: float,
) -> np.ndarray:
    """Classical fixed-step fourth-order Runge-Kutta for autonomous systems.

    Integrates ds/dt = f(s) from t0 to t1 on a flat real state vector; the
    final partial step is shortened to land exactly on t1.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t1 < t0:
        raise ValueError(f"t1 must be >= t0, got t0={t0}, t1={t1}")
    s = np.array(s0, dtype=float, copy=True)
    span = t1 - t0
    n = int(math.floor(span / dt))

    def step(state: np.ndarray, h: float) -> np.ndarray:
        k1 = f(state)
        k2 = f(state + (0.5 * h) * k1)
        k3 = f(state + (0.5 * h) * k2)
        k4 = f(state + h * k3)
        return state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    for _ in range(n):
        s = step(s, dt)
    rem = span - n * dt
    if rem > 1e-15 * max(1.0, abs(span)):
        s = step(s, rem)
    return s


def bisect_root(g: Callable[[float], float], a: float, b: float, tol: float) -> float:
    """Bisection on a bracketing interval [a, b] with g(a)*g(b) <= 0.

    Shrinks the bracket until b - a <= tol and returns its midpoint.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    ga = g(a)
    gb = g(b)
    if ga == 0.0:
        return a
    if gb == 0.0:
        return b
    if ga * gb > 0:
        raise ValueError(f"no sign change on [{a}, {b}]: g(a)={ga:.3e}, g(b)={gb:.3e}")
    while (b - a) > tol:
        mid = 0.5 * (a + b)
        gm = g(mid)
        if gm == 0.0:
            return mid
        if ga * gm < 0:
            b = mid
        else:
            a = mid
            ga = gm
    return 0.5 * (a + b)
