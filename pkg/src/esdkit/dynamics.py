"""Dissipative dynamics of two qubits in a common thermal reservoir.

The generator is the standard Lindblad form with downward rate
gamma0 (N+1) and upward rate gamma0 N acting independently on each qubit.
X states stay X-shaped under this evolution: the populations obey a closed
4x4 linear system and each coherence decays at (1+2N) gamma0.

Two propagation routes are provided. The analytic route evaluates the
closed-form mode expansion (a constant steady-state part plus decaying
modes Gamma(t) = exp(-(1+2N) gamma0 t) and Gamma^2 for N > 0, or
Upsilon(t) = exp(-gamma0 t) and Upsilon^2 in the vacuum). The RK4 route
integrates the full density matrix with the generic fixed-step integrator
and serves as the independent correctness oracle for the analytic route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numeric import rk4_integrate
from .states import BathParams, WernerParams, XState, check_density_matrix, werner_phi, werner_psi

_I2 = np.eye(2, dtype=complex)
_SMINUS = np.array([[0, 0], [1, 0]], dtype=complex)  # lowers the upper level |0> to |1>
_LOWERING = (np.kron(_SMINUS, _I2), np.kron(_I2, _SMINUS))

# Flat layout of a Hermitian 4x4 matrix as 16 reals:
# [rho00, rho11, rho22, rho33,
#  Re rho01, Im rho01, Re rho02, Im rho02, Re rho03, Im rho03,
#  Re rho12, Im rho12, Re rho13, Im rho13, Re rho23, Im rho23]
_UPPER = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def flatten_hermitian(rho: np.ndarray) -> np.ndarray:
    """Pack a Hermitian 4x4 matrix into the documented 16-real layout."""
    rho = np.asarray(rho, dtype=complex)
    out = np.empty(16)
    out[:4] = np.diag(rho).real
    for k, (i, j) in enumerate(_UPPER):
        out[4 + 2 * k] = rho[i, j].real
        out[5 + 2 * k] = rho[i, j].imag
    return out


def unflatten_hermitian(s: np.ndarray) -> np.ndarray:
    """Inverse of flatten_hermitian."""
    rho = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        rho[i, i] = s[i]
    for k, (i, j) in enumerate(_UPPER):
        rho[i, j] = complex(s[4 + 2 * k], s[5 + 2 * k])
        rho[j, i] = rho[i, j].conjugate()
    return rho


def lindblad_rhs(rho: np.ndarray, bath: BathParams) -> np.ndarray:
    """Right-hand side of the master equation; traceless and Hermitian."""
    rho = np.asarray(rho, dtype=complex)
    n, g0 = bath.n_bath, bath.gamma0
    out = np.zeros((4, 4), dtype=complex)
    for sm in _LOWERING:
        sp = sm.conj().T
        down = sp @ sm
        up = sm @ sp
        out += (0.5 * g0 * (n + 1)) * (2.0 * (sm @ rho @ sp) - down @ rho - rho @ down)
        out += (0.5 * g0 * n) * (2.0 * (sp @ rho @ sm) - up @ rho - rho @ up)
    return out


def lindblad_generator(bath: BathParams) -> np.ndarray:
    """16x16 real matrix of the generator in the flat Hermitian layout.

    Columns are lindblad_rhs applied to the 16 Hermitian basis matrices, so
    generator @ flatten_hermitian(rho) == flatten_hermitian(lindblad_rhs(rho))
    for every Hermitian rho.
    """
    cols = np.empty((16, 16))
    basis = np.zeros(16)
    for k in range(16):
        basis[:] = 0.0
        basis[k] = 1.0
        cols[:, k] = flatten_hermitian(lindblad_rhs(unflatten_hermitian(basis), bath))
    return cols


def population_matrix(bath: BathParams) -> np.ndarray:
    """Rate matrix of the closed population system d/dt (x,y,z,w).

    Columns sum to zero (probability conservation); the spectrum is
    {0, -gamma0(2N+1) twice, -2 gamma0(2N+1)}.
    """
    n, g0 = bath.n_bath, bath.gamma0
    return g0 * np.array(
        [
            [-2 * (n + 1), n, n, 0],
            [n + 1, -(2 * n + 1), 0, n],
            [n + 1, 0, -(2 * n + 1), n],
            [0, n + 1, n + 1, -2 * n],
        ]
    )


@dataclass(frozen=True)
class ThermalCoefficients:
    """Mode amplitudes of the N > 0 closed-form solution. c4 carries a
    1/gamma0 factor; c1 is pinned to N(N+1)/(2N+1)^2 by unit trace."""

    c1: float
    c2: float
    c3: float
    c4: float
    c5: complex
    c6: complex


@dataclass(frozen=True)
class VacuumCoefficients:
    """Mode amplitudes of the N = 0 closed-form solution."""

    d1: float
    d2: float
    d3: float
    d4: float
    d5: complex
    d6: complex


def coefficients_phi_thermal(p: WernerParams, bath: BathParams) -> ThermalCoefficients:
    """Closed-form N > 0 coefficients for the werner_phi initial state."""
    if bath.n_bath <= 0:
        raise ValueError("thermal coefficients need N > 0; use the vacuum branch for N = 0")
    n, g0 = bath.n_bath, bath.gamma0
    r, a = p.r, p.alpha
    c1 = n * (n + 1) / (2 * n + 1) ** 2
    return ThermalCoefficients(
        c1=c1,
        c2=c1 - (1 - r) / 4.0,
        c3=1.0 / (2 * (2 * n + 1) ** 2) + (r / 2.0) * (math.cos(a) ** 2 - math.sin(a) ** 2),
        c4=-1.0 / (g0 * (2 * n + 1) ** 2),
        c5=complex(r * math.sin(a) * math.cos(a)),
        c6=0j,
    )


def coefficients_phi_vacuum(p: WernerParams) -> VacuumCoefficients:
    """Closed-form N = 0 coefficients for the werner_phi initial state."""
    r, a = p.r, p.alpha
    return VacuumCoefficients(
        d1=1.0,
        d2=1.0,
        d3=-(1 - r) / 2.0 - r * math.sin(a) ** 2,
        d4=(1 - r) / 4.0,
        d5=complex(r * math.sin(a) * math.cos(a)),
        d6=0j,
    )


def thermal_coefficients_from_xstate(s0: XState, bath: BathParams) -> ThermalCoefficients:
    """Fit the N > 0 mode amplitudes to an arbitrary initial X state.

    The mode expansion is a complete solution family of the population
    system, so the coefficients follow from the initial conditions by a
    short linear solve. Reproduces coefficients_phi_thermal on werner_phi.
    """
    if bath.n_bath <= 0:
        raise ValueError("thermal coefficients need N > 0; use the vacuum branch for N = 0")
    n, g0 = bath.n_bath, bath.gamma0
    c1 = n * (n + 1) / (2 * n + 1) ** 2
    c4g = ((s0.w - s0.x) - 1.0 / (2 * n + 1)) / (2 * n + 1)
    c3 = 0.5 * (s0.y - s0.z - c4g)
    c2 = 0.5 * (s0.y + s0.z - 2 * c1 + c4g)
    return ThermalCoefficients(c1=c1, c2=c2, c3=c3, c4=c4g / g0, c5=s0.u, c6=s0.v)


def vacuum_coefficients_from_xstate(s0: XState) -> VacuumCoefficients:
    """Fit the N = 0 mode amplitudes to an arbitrary initial X state."""
    d4 = s0.x
    d3 = -(s0.z + s0.x)
    d2 = s0.y + s0.z + 2 * s0.x
    return VacuumCoefficients(d1=1.0, d2=d2, d3=d3, d4=d4, d5=s0.u, d6=s0.v)


def evaluate_thermal(c: ThermalCoefficients, bath: BathParams, t: float) -> XState:
    """X state at time t from the N > 0 mode expansion."""
    n, g0 = bath.n_bath, bath.gamma0
    gam = math.exp(-(1 + 2 * n) * g0 * t)
    gam2 = gam * gam
    return XState(
        x=c.c1 * n / (n + 1) - c.c2 * gam2 - c.c4 * g0 * n * gam,
        y=c.c1 + c.c2 * gam2 + c.c3 * gam,
        z=c.c1 + c.c2 * gam2 - c.c3 * gam - c.c4 * g0 * gam,
        w=c.c1 * (n + 1) / n - c.c2 * gam2 + c.c4 * g0 * (n + 1) * gam,
        u=c.c5 * gam,
        v=c.c6 * gam,
    )


def evaluate_vacuum(d: VacuumCoefficients, gamma0: float, t: float) -> XState:
    """X state at time t from the N = 0 mode expansion."""
    up = math.exp(-gamma0 * t)
    up2 = up * up
    return XState(
        x=d.d4 * up2,
        y=d.d2 * up + d.d3 * up - d.d4 * up2,
        z=-d.d3 * up - d.d4 * up2,
        w=d.d1 - d.d2 * up + d.d4 * up2,
        u=d.d5 * up,
        v=d.d6 * up,
    )


def _initial_state(p: WernerParams, family: str) -> XState:
    if family == "phi":
        return werner_phi(p)
    if family == "psi":
        return werner_psi(p)
    raise ValueError(f"family must be 'phi' or 'psi', got {family!r}")


def propagate_analytic(p: WernerParams, bath: BathParams, t: float, family: str = "phi") -> XState:
    """Closed-form state of the Werner family at time t.

    N = 0 uses the vacuum mode expansion, N > 0 the thermal one. The phi
    family evaluates the published coefficient formulas; psi fits the same
    mode families to its initial conditions.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if family == "phi":
        if bath.n_bath > 0:
            return evaluate_thermal(coefficients_phi_thermal(p, bath), bath, t)
        return evaluate_vacuum(coefficients_phi_vacuum(p), bath.gamma0, t)
    s0 = _initial_state(p, family)
    if bath.n_bath > 0:
        return evaluate_thermal(thermal_coefficients_from_xstate(s0, bath), bath, t)
    return evaluate_vacuum(vacuum_coefficients_from_xstate(s0), bath.gamma0, t)


def propagate_rk4(rho0: np.ndarray, bath: BathParams, t: float, dt: float) -> np.ndarray:
    """Integrate the master equation from 0 to t with fixed-step RK4.

    Requires dt <= t/10 so every run takes at least ten steps. The result
    stays Hermitian with unit trace to 1e-9 and min eigenvalue >= -1e-8.
    """
    rho0 = check_density_matrix(rho0)
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t == 0:
        return rho0.copy()
    if dt > t / 10.0:
        raise ValueError(f"dt={dt} too coarse for t={t}; need dt <= t/10")
    gen = lindblad_generator(bath)
    flat = rk4_integrate(gen.dot, flatten_hermitian(rho0), 0.0, t, dt)
    return unflatten_hermitian(flat)
