"""Reference computations that avoid the package's spectrum/vectorization path.

Jump operators are built by enumerating single-spin flips on computational
basis states, and the master equation is applied in plain matrix form.
"""

import itertools
import math

import numpy as np


def configurations(n):
    return list(itertools.product([1, -1], repeat=n))


def energy(spins, spec):
    e = sum(w / 2 * s for w, s in zip(spec.omega, spins))
    return e + sum(lam / 2 * spins[i] * spins[j] for (i, j), lam in spec.coupling.items())


def bose(omega, T):
    return 0.0 if T == 0 else 1.0 / math.expm1(omega / T)


def flip_jumps(spec, site, tol=1e-9):
    """``{gap: A}`` lowering operators for flips of ``site``, grouped by gap."""
    confs = configurations(spec.n_cells)
    index = {c: k for k, c in enumerate(confs)}
    out = {}
    for c in confs:
        f = list(c)
        f[site] = -f[site]
        f = tuple(f)
        gap = energy(c, spec) - energy(f, spec)
        if gap > tol:  # c is the upper state
            key = round(gap, 9)
            a = out.setdefault(key, np.zeros((len(confs), len(confs)), dtype=complex))
            a[index[f], index[c]] = 1.0
    return out


def master_rhs(spec, rho):
    """``-i[H, rho] + sum_i L_i[rho]`` in matrix form."""
    confs = configurations(spec.n_cells)
    h = np.diag([energy(c, spec) for c in confs]).astype(complex)
    out = -1j * (h @ rho - rho @ h)
    for site in range(spec.n_cells):
        for gap, a in flip_jumps(spec, site).items():
            occ = bose(gap, spec.bath_temps[site])
            j = spec.kappa * gap
            for op, rate in ((a, j * (1 + occ)), (a.conj().T, j * occ)):
                od = op.conj().T
                out += rate * (op @ rho @ od - 0.5 * (od @ op @ rho + rho @ od @ op))
    return out


def rate_matrix(spec):
    """Pauli master equation ``dp/dt = W p`` for the populations."""
    confs = configurations(spec.n_cells)
    d = len(confs)
    w = np.zeros((d, d))
    for m, c in enumerate(confs):
        for site in range(spec.n_cells):
            f = list(c)
            f[site] = -f[site]
            k = confs.index(tuple(f))
            gap = energy(f, spec) - energy(c, spec)  # > 0 means m -> k is upward
            if abs(gap) <= 1e-9:
                continue
            T = spec.bath_temps[site]
            occ = bose(abs(gap), T)
            rate = spec.kappa * abs(gap) * (occ if gap > 0 else 1 + occ)
            w[k, m] += rate
            w[m, m] -= rate
    return w


def classical_steady_populations(spec):
    w = rate_matrix(spec)
    _, _, vh = np.linalg.svd(w)
    p = vh[-1].real
    return p / p.sum()
