r"""Thermal jump operators, per-bath dissipators and the full Liouvillian.

Superoperators act on column-stacked density matrices,
``vec(rho) = rho.reshape(-1, order="F")``, for which
``vec(A X B) = (B^T kron A) vec(X)``. The unitary part is therefore
``-i (I kron H - H^T kron I)``.

Each bath couples to its cell through ``sigma_x``. The coupling operator is
resolved into one jump operator per positive Bohr frequency of the full
Hamiltonian (global, secular form), and every frequency class gets the
Ohmic weight ``J(omega) = kappa * omega`` with Bose-Einstein occupation
``n(omega)``:

.. math::

    \mathcal{L}_i = \sum_{\omega>0} J(\omega)\left[(1+n_i)\,\mathcal{D}[A_i(\omega)]
        + n_i\,\mathcal{D}[A_i^\dagger(\omega)]\right]
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DEFAULT_FREQ_TOL, Spectrum, SystemSpec, build_hamiltonian, spectrum
from .spin_ops import embed, pauli


def vec(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v)
    d = math.isqrt(v.size)
    if d * d != v.size:
        raise ValueError(f"vector of length {v.size} is not a vectorized square matrix")
    return v.reshape((d, d), order="F")


def thermal_occupation(omega: float, T: float) -> float:
    """Bose-Einstein occupation ``1 / (exp(omega / T) - 1)``; exactly 0 at ``T = 0``."""
    if not omega > 0:
        raise ValueError(f"thermal occupation needs omega > 0, got {omega}")
    if T < 0:
        raise ValueError(f"temperature must be >= 0, got {T}")
    if T == 0:
        return 0.0
    x = omega / T
    if x > 700.0:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def spectral_density(omega: float, kappa: float) -> float:
    """Ohmic spectral density ``kappa * omega``."""
    if omega < 0:
        raise ValueError(f"spectral density is defined for omega >= 0, got {omega}")
    return kappa * omega


def commutator_superop(h: np.ndarray) -> np.ndarray:
    """Superoperator of ``rho -> -i [h, rho]``."""
    d = h.shape[0]
    eye = np.eye(d)
    return -1j * (np.kron(eye, h) - np.kron(h.T, eye))


def lindblad_superop(a: np.ndarray) -> np.ndarray:
    """Superoperator of ``rho -> a rho a^+ - {a^+ a, rho} / 2``."""
    d = a.shape[0]
    eye = np.eye(d)
    ada = a.conj().T @ a
    return np.kron(a.conj(), a) - 0.5 * (np.kron(eye, ada) + np.kron(ada.T, eye))


def _n_sites(dim):
    n = dim.bit_length() - 1
    if 2**n != dim or n not in (2, 3):
        raise ValueError(f"Hilbert dimension {dim} does not match 2 or 3 qubits")
    return n


def jump_operator(spec: Spectrum, site: int, omega: float) -> np.ndarray:
    """Energy-lowering part of ``sigma_x`` on ``site`` at Bohr frequency ``omega``.

    ``A = sum |lower><lower| sigma_x |upper><upper|`` over the eigenpairs of the
    frequency class, returned in the computational basis. Summing over whole
    classes makes the result independent of the eigenbasis chosen inside
    degenerate levels.
    """
    pairs = spec.pairs(omega)
    n = _n_sites(len(spec.energies))
    v = spec.states
    sx = v.conj().T @ embed(pauli("x"), site, n) @ v
    a = np.zeros_like(sx)
    for upper, lower in pairs:
        a[lower, upper] = sx[lower, upper]
    return v @ a @ v.conj().T


@dataclass(frozen=True)
class RateTerm:
    """One frequency class of one bath: emission ``A`` at ``down``, absorption ``A^+`` at ``up``."""

    site: int
    omega: float
    jump: np.ndarray
    down: float
    up: float


def rate_terms(spec_sys: SystemSpec, spec_h: Spectrum, site: int) -> list[RateTerm]:
    """Nonvanishing frequency-resolved terms of the dissipator for ``site``."""
    if not 0 <= site < spec_sys.n_cells:
        raise ValueError(f"site {site} has no bath in a {spec_sys.n_cells}-cell spec")
    T = spec_sys.bath_temps[site]
    terms = []
    for omega, _ in spec_h.bohr_table:
        a = jump_operator(spec_h, site, omega)
        if not np.any(np.abs(a) > 1e-14):
            continue
        occ = thermal_occupation(omega, T)
        j = spectral_density(omega, spec_sys.kappa)
        terms.append(RateTerm(site, omega, a, j * (1.0 + occ), j * occ))
    return terms


def dissipator(spec_sys: SystemSpec, spec_h: Spectrum, site: int) -> np.ndarray:
    """Vectorized dissipator of the bath attached to ``site``."""
    d = len(spec_h.energies)
    out = np.zeros((d * d, d * d), dtype=complex)
    for term in rate_terms(spec_sys, spec_h, site):
        out += term.down * lindblad_superop(term.jump)
        if term.up > 0:
            out += term.up * lindblad_superop(term.jump.conj().T)
    return out


def liouvillian(spec: SystemSpec, freq_tol: float = DEFAULT_FREQ_TOL) -> np.ndarray:
    """Full generator ``-i[H, .] + sum_i L_i`` with one bath per cell."""
    h = build_hamiltonian(spec)
    spec_h = spectrum(h, freq_tol)
    out = commutator_superop(h)
    for site in range(spec.n_cells):
        out = out + dissipator(spec, spec_h, site)
    return out


def apply(superop: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Act with a vectorized superoperator on a matrix."""
    return unvec(superop @ vec(rho))
