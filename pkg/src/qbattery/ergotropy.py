"""Internal energy, passive states and ergotropy."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError

CLAMP_TOL = 1e-8


@dataclass(frozen=True)
class ErgotropyReport:
    """Energies of a state and of its passive counterpart.

    ``populations`` are the (clamped) eigenvalues of the state in descending
    order; ``clamped`` is the total negative weight that was zeroed.
    """

    internal_energy: float
    passive_energy: float
    ergotropy: float
    populations: np.ndarray
    clamped: float = 0.0


def _check_dims(rho, h):
    rho = np.asarray(rho, dtype=complex)
    h = np.asarray(h, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape != h.shape:
        raise ValueError(f"dimension mismatch: state {rho.shape}, Hamiltonian {h.shape}")
    return rho, h


def internal_energy(rho: np.ndarray, h: np.ndarray) -> float:
    rho, h = _check_dims(rho, h)
    return float(np.real(np.trace(rho @ h)))


def _clamped_eigh(rho, tol=CLAMP_TOL):
    """Eigendecomposition of ``rho`` with round-off negativity removed."""
    herm = 0.5 * (rho + rho.conj().T)
    if np.abs(rho - herm).max() > tol:
        raise InvalidStateError("density matrix is not Hermitian")
    tr = np.trace(herm).real
    if abs(tr - 1.0) > tol:
        raise InvalidStateError(f"density matrix has trace {tr:.12g}")
    probs, vecs = np.linalg.eigh(herm)
    if probs[0] < -tol:
        raise InvalidStateError(f"density matrix has eigenvalue {probs[0]:.3e} < -{tol:g}")
    negative = probs < 0
    clamped = float(-probs[negative].sum())
    if clamped:
        probs = np.where(negative, 0.0, probs)
        probs = probs / probs.sum()
    return probs, vecs, clamped


def passive_state(rho: np.ndarray, h: np.ndarray) -> np.ndarray:
    """State with the spectrum of ``rho`` placed on the energy levels of ``h``,
    largest population on the lowest level."""
    rho, h = _check_dims(rho, h)
    probs = np.sort(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)))[::-1]
    _, states = np.linalg.eigh(h)
    return (states * probs) @ states.conj().T


def ergotropy(rho: np.ndarray, h: np.ndarray) -> ErgotropyReport:
    """Maximum work extractable from ``rho`` by a unitary, ``tr(rho H) - tr(pi H)``.

    Eigenvalues of ``rho`` in ``[-1e-8, 0)`` are set to zero (and the rest
    renormalized) before both energies are evaluated; anything more
    negative raises ``InvalidStateError``.
    """
    rho, h = _check_dims(rho, h)
    probs, vecs, clamped = _clamped_eigh(rho)
    energies = np.linalg.eigvalsh(h)
    u = float(np.real(np.sum(probs * np.einsum("ik,ij,jk->k", vecs.conj(), h, vecs))))
    populations = probs[::-1]
    passive = float(populations @ energies)
    return ErgotropyReport(u, passive, u - passive, populations, clamped)
