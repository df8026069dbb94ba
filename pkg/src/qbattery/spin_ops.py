"""Pauli matrices and multi-qubit operator embedding.

Operators are plain ``numpy`` complex arrays. The single-qubit basis is
``(|up>, |down>)`` with ``sigma_z |up> = +|up>``; in multi-qubit products
the leftmost tensor factor is cell L, so ``|up up up>`` is index 0.
"""

from functools import reduce

import numpy as np

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

IDENTITY2 = np.eye(2, dtype=complex)


def pauli(axis: str) -> np.ndarray:
    """Return the 2x2 Pauli matrix for ``axis`` in ``{"x", "y", "z"}``."""
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}; expected 'x', 'y' or 'z'") from None


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def embed(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Place a single-qubit operator on ``site`` of an ``n_sites`` register.

    Parameters
    ----------
    op : ndarray, shape (2, 2)
        Single-qubit operator.
    site : int
        Target position, 0 is the leftmost factor (cell L).
    n_sites : int
        Number of qubits, 2 or 3.

    Returns
    -------
    ndarray, shape (2**n_sites, 2**n_sites)
        ``I x ... x op x ... x I``.
    """
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise ValueError(f"embed expects a 2x2 operator, got shape {op.shape}")
    if n_sites not in (2, 3):
        raise ValueError(f"n_sites must be 2 or 3, got {n_sites}")
    if not 0 <= site < n_sites:
        raise ValueError(f"site {site} out of range for {n_sites} sites")
    factors = [op if k == site else IDENTITY2 for k in range(n_sites)]
    return reduce(np.kron, factors)


def is_hermitian(op: np.ndarray, atol: float = 1e-12) -> bool:
    op = np.asarray(op)
    return op.ndim == 2 and op.shape[0] == op.shape[1] and np.allclose(op, op.conj().T, rtol=0, atol=atol)


def dag(op: np.ndarray) -> np.ndarray:
    return np.asarray(op).conj().T
