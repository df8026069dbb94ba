"""Steady states of a Liouvillian, time integration and thermal reference states."""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, IntegrationError, NonUniqueSteadyStateError
from .lindblad import rate_terms, unvec, vec
from .model import SystemSpec, build_hamiltonian, spectrum

RESIDUAL_TOL = 1e-10
NULL_TOL = 1e-9


def _trace_row(d):
    return vec(np.eye(d)).astype(complex)


def residual(superop: np.ndarray, rho: np.ndarray) -> float:
    """Euclidean norm of ``superop @ vec(rho)``."""
    return float(np.linalg.norm(superop @ vec(rho)))


def _finish(superop, v, residual_tol):
    rho = unvec(v)
    rho = rho / np.trace(rho)
    rho = 0.5 * (rho + rho.conj().T)
    res = residual(superop, rho)
    if not res < residual_tol:
        raise ConvergenceError(res, residual_tol)
    return rho


def _null_spaces(superop, null_tol):
    u, s, vh = np.linalg.svd(superop)
    thresh = null_tol * max(1.0, s[0])
    k = max(1, int(np.count_nonzero(s <= thresh)))
    return u[:, -k:], vh[-k:].conj().T


def _project(left, right, rho0):
    """Project ``rho0`` onto the stationary manifold along the conserved quantities.

    This is the infinite-time limit of the dynamics started from ``rho0``,
    valid because the zero eigenvalue of a Lindblad generator is semisimple.
    """
    overlap = left.conj().T @ right
    coeffs = np.linalg.solve(overlap, left.conj().T @ vec(rho0))
    return right @ coeffs


def steady_state(
    superop: np.ndarray,
    method: str = "svd",
    residual_tol: float = RESIDUAL_TOL,
    null_tol: float = NULL_TOL,
    rho0: np.ndarray | None = None,
) -> np.ndarray:
    """Trace-one fixed point of ``superop``.

    Parameters
    ----------
    superop : ndarray
        Vectorized Liouvillian.
    method : {"svd", "lstsq"}
        ``"svd"`` takes the right singular vector of the smallest singular
        value and normalizes its trace. ``"lstsq"`` appends the trace
        functional as an extra row and solves ``[L; tr] x = [0; 1]`` in the
        least-squares sense.
    residual_tol : float
        Bound on ``||L vec(rho)||``; exceeded raises ``ConvergenceError``.
    null_tol : float
        Singular values below ``null_tol * max(1, s_max)`` count as zero.
    rho0 : ndarray, optional
        Only consulted when the null space is degenerate: the result is then
        the long-time limit reached from ``rho0`` instead of an error.

    Raises
    ------
    NonUniqueSteadyStateError
        The null space has dimension > 1 and no ``rho0`` was given.
    ConvergenceError
        The residual tolerance is not met.
    """
    superop = np.asarray(superop, dtype=complex)
    d = math.isqrt(superop.shape[0])
    if method == "svd":
        left, right = _null_spaces(superop, null_tol)
        k = right.shape[1]
        if k == 1:
            return _finish(superop, right[:, 0], residual_tol)
    elif method == "lstsq":
        aug = np.vstack([superop, _trace_row(d)[None, :]])
        rhs = np.zeros(d * d + 1, dtype=complex)
        rhs[-1] = 1.0
        x, _, _, sv = np.linalg.lstsq(aug, rhs, rcond=None)
        rank = int(np.count_nonzero(sv > null_tol * max(1.0, sv[0])))
        k = d * d - rank + 1
        if k == 1:
            return _finish(superop, x, residual_tol)
        left, right = _null_spaces(superop, null_tol)
    else:
        raise ValueError(f"unknown steady-state method {method!r}")
    if rho0 is None:
        raise NonUniqueSteadyStateError(k)
    return _finish(superop, _project(left, right, rho0), residual_tol)


def rk4_step_matrix(superop: np.ndarray, dt: float) -> np.ndarray:
    """One classical RK4 step for ``dv/dt = L v`` written as a matrix."""
    eye = np.eye(superop.shape[0], dtype=complex)
    k1 = superop
    k2 = superop @ (eye + 0.5 * dt * k1)
    k3 = superop @ (eye + 0.5 * dt * k2)
    k4 = superop @ (eye + dt * k3)
    return eye + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def evolve(
    rho0: np.ndarray,
    superop: np.ndarray,
    t_final: float,
    dt: float,
    trace_tol: float = 1e-6,
) -> np.ndarray:
    """Integrate ``d vec(rho)/dt = L vec(rho)`` to ``t_final`` with fixed-step RK4.

    The step is shrunk so that an integer number of steps lands on
    ``t_final``. Raises ``IntegrationError`` if the trace drifts by more
    than ``trace_tol``.
    """
    if not (t_final > 0 and dt > 0):
        raise ValueError(f"t_final and dt must be positive, got {t_final}, {dt}")
    superop = np.asarray(superop, dtype=complex)
    n_steps = max(1, math.ceil(t_final / dt - 1e-12))
    step = rk4_step_matrix(superop, t_final / n_steps)
    v = vec(np.asarray(rho0, dtype=complex)).copy()
    tr0 = np.trace(unvec(v))
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(n_steps):
            v = step @ v
    rho = unvec(v)
    drift = abs(np.trace(rho) - tr0)
    if not np.all(np.isfinite(v)) or drift > trace_tol:
        raise IntegrationError(float(drift) if np.isfinite(drift) else math.inf)
    return rho


def relaxation_time(spec: SystemSpec, factor: float = 50.0) -> float:
    """Integration horizon ``factor / (kappa * smallest active Bohr frequency)``."""
    spec_h = spectrum(build_hamiltonian(spec))
    active = [t.omega for site in range(spec.n_cells) for t in rate_terms(spec, spec_h, site)]
    return factor / (spec.kappa * min(active))


def stable_step(superop: np.ndarray, bound: float = 0.1) -> float:
    """Step size with ``||L|| * dt = bound`` in the spectral norm."""
    return bound / float(np.linalg.norm(superop, 2))


def gibbs_state(h: np.ndarray, T: float) -> np.ndarray:
    """Thermal state ``exp(-H/T) / Z`` for ``T > 0``."""
    if not T > 0:
        raise ValueError(f"gibbs_state needs T > 0, got {T}; use ground_state for T = 0")
    energies, states = np.linalg.eigh(np.asarray(h, dtype=complex))
    weights = np.exp(-(energies - energies[0]) / T)
    weights /= weights.sum()
    return (states * weights) @ states.conj().T


def ground_state(h: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Zero-temperature state: uniform mixture over the lowest eigenspace."""
    energies, states = np.linalg.eigh(np.asarray(h, dtype=complex))
    low = states[:, energies - energies[0] <= tol]
    return low @ low.conj().T / low.shape[1]


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    diff = np.asarray(a) - np.asarray(b)
    return 0.5 * float(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T))).sum())
