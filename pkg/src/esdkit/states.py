"""Two-qubit X states, extended Werner-like initial states, separability tests.

Basis order is |00>, |01>, |10>, |11> throughout, with the first label the
state of qubit A. |0> is the upper level of each qubit, so the population
of |00> is the one that decays fastest under the bath coupling. An X state
carries populations (x, y, z, w) on the diagonal, the inner coherence u at
(|01><10|) and the outer coherence v at (|00><11|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numeric import hermitian_eigenvalues

POP_ATOL = 1e-10
TRACE_ATOL = 1e-10
COHERENCE_ATOL = 1e-8
DM_HERMITIAN_ATOL = 1e-10
DM_EIG_FLOOR = -1e-8
PPT_EIG_TOL = -1e-10


@dataclass(frozen=True)
class XState:
    """The seven real degrees of freedom of an X density matrix."""

    x: float
    y: float
    z: float
    w: float
    u: complex = 0j
    v: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))
        object.__setattr__(self, "w", float(self.w))
        object.__setattr__(self, "u", complex(self.u))
        object.__setattr__(self, "v", complex(self.v))
        for name in ("x", "y", "z", "w"):
            val = getattr(self, name)
            if val < -POP_ATOL:
                raise ValueError(f"population {name}={val} is negative beyond {POP_ATOL:.1e}")
        tr = self.x + self.y + self.z + self.w
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"populations must sum to 1, got {tr!r}")
        if abs(self.u) > math.sqrt(max(self.y * self.z, 0.0)) + COHERENCE_ATOL:
            raise ValueError(f"|u|={abs(self.u)} violates positivity bound sqrt(y z)")
        if abs(self.v) > math.sqrt(max(self.x * self.w, 0.0)) + COHERENCE_ATOL:
            raise ValueError(f"|v|={abs(self.v)} violates positivity bound sqrt(x w)")


@dataclass(frozen=True)
class WernerParams:
    """Purity r and initial-entanglement angle alpha (radians) of the
    extended Werner-like states. alpha enters only through sin/cos, so any
    real value is accepted; region grids use [0, 2*pi] inclusive."""

    r: float
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "alpha", float(self.alpha))
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"r must be in [0, 1], got {self.r}")
        if not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha}")


@dataclass(frozen=True)
class BathParams:
    """Mean occupation number N of the reservoir and the spontaneous
    emission rate gamma0 (inverse time)."""

    n_bath: float
    gamma0: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "n_bath", float(self.n_bath))
        object.__setattr__(self, "gamma0", float(self.gamma0))
        if self.n_bath < 0:
            raise ValueError(f"n_bath must be >= 0, got {self.n_bath}")
        if self.gamma0 <= 0:
            raise ValueError(f"gamma0 must be > 0, got {self.gamma0}")


def werner_phi(p: WernerParams) -> XState:
    """Werner-like mixture of cos(a)|01> + sin(a)|10> with the identity.

    Populations follow the matrix layout of the initial-state family: the
    y slot (|01> population) carries r cos^2(a) + (1-r)/4 and the inner
    coherence u = r sin(a) cos(a).
    """
    r, a = p.r, p.alpha
    back = (1.0 - r) / 4.0
    return XState(
        x=back,
        y=r * math.cos(a) ** 2 + back,
        z=r * math.sin(a) ** 2 + back,
        w=back,
        u=r * math.sin(a) * math.cos(a),
        v=0j,
    )


def werner_psi(p: WernerParams) -> XState:
    """Werner-like mixture of cos(a)|00> + sin(a)|11> with the identity."""
    r, a = p.r, p.alpha
    back = (1.0 - r) / 4.0
    return XState(
        x=r * math.cos(a) ** 2 + back,
        y=back,
        z=back,
        w=r * math.sin(a) ** 2 + back,
        u=0j,
        v=r * math.sin(a) * math.cos(a),
    )


def to_density_matrix(s: XState) -> np.ndarray:
    """4x4 complex density matrix of an X state."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = s.x
    rho[1, 1] = s.y
    rho[2, 2] = s.z
    rho[3, 3] = s.w
    rho[1, 2] = s.u
    rho[2, 1] = s.u.conjugate()
    rho[0, 3] = s.v
    rho[3, 0] = s.v.conjugate()
    return rho


def from_density_matrix(rho: np.ndarray, atol: float = 1e-9) -> XState:
    """Extract the X-state parameters, requiring off-X entries <= atol."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    mask = np.ones((4, 4), dtype=bool)
    for i, j in ((0, 0), (1, 1), (2, 2), (3, 3), (1, 2), (2, 1), (0, 3), (3, 0)):
        mask[i, j] = False
    stray = np.max(np.abs(rho[mask]))
    if stray > atol:
        raise ValueError(f"matrix is not X-shaped: largest off-X entry {stray:.3e} > {atol:.1e}")
    return XState(
        x=rho[0, 0].real,
        y=rho[1, 1].real,
        z=rho[2, 2].real,
        w=rho[3, 3].real,
        u=rho[1, 2],
        v=rho[0, 3],
    )


def check_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity of a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    dev = np.max(np.abs(rho - rho.conj().T))
    if dev > DM_HERMITIAN_ATOL:
        raise ValueError(f"density matrix not Hermitian: deviation {dev:.3e}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_ATOL:
        raise ValueError(f"density matrix trace must be 1, got {tr!r}")
    lo = hermitian_eigenvalues(0.5 * (rho + rho.conj().T))[-1]
    if lo < DM_EIG_FLOOR:
        raise ValueError(f"density matrix not PSD: min eigenvalue {lo:.3e}")
    return rho


def partial_transpose_b(rho: np.ndarray) -> np.ndarray:
    """Partial transpose over qubit B."""
    rho = np.asarray(rho, dtype=complex)
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def is_entangled_ppt(rho: np.ndarray) -> bool:
    """Peres criterion: entangled iff the partial transpose over qubit B
    has an eigenvalue below -1e-10."""
    rho = check_density_matrix(rho)
    pt = partial_transpose_b(rho)
    return bool(hermitian_eigenvalues(pt)[-1] < PPT_EIG_TOL)


def phi_entanglement_threshold(alpha: float) -> float:
    """Purity above which the werner_phi state is entangled, 1/(1+2|sin 2a|).

    States with r strictly above the returned value are entangled, strictly
    below (and on the boundary) separable.
    """
    return 1.0 / (1.0 + 2.0 * abs(math.sin(2.0 * alpha)))


def thermal_occupation(theta: float) -> float:
    """Mean bath occupation N = 1/(e^theta - 1) for theta = hbar*w0/(kB*T)."""
    if theta <= 0:
        raise ValueError(f"theta must be positive, got {theta}")
    return 1.0 / math.expm1(theta)


def gibbs_product_state(n_bath: float) -> np.ndarray:
    """Stationary two-qubit product state of the bath coupling.

    Populations (N^2, N(N+1), N(N+1), (N+1)^2)/(2N+1)^2 in the fixed basis
    order; the |00> (doubly upper) slot carries the smallest weight.
    """
    if n_bath < 0:
        raise ValueError(f"n_bath must be >= 0, got {n_bath}")
    n = float(n_bath)
    pops = np.array([n * n, n * (n + 1), n * (n + 1), (n + 1) ** 2]) / (2 * n + 1) ** 2
    return np.diag(pops).astype(complex)
