"""System parameters, the Ising-type battery Hamiltonian and its spectrum.

Units: hbar = k_B = 1 and the bare cell frequency omega = 1 sets the energy
scale, so temperatures and couplings are plain numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

import numpy as np

from .spin_ops import embed, is_hermitian, pauli

DEFAULT_KAPPA = 0.05
DEFAULT_FREQ_TOL = 1e-9

SITE_LABELS = {2: ("L", "R"), 3: ("L", "M", "R")}

# Couplings and frequencies of the middle cell that read as zero on a two-cell
# spec, which models the three-cell battery with M switched off.
_ABSENT_MIDDLE = {"omega_M", "lambda_LM", "lambda_MR"}


@dataclass(frozen=True)
class SystemSpec:
    """Physical parameters of an n-cell battery.

    Attributes
    ----------
    n_cells : int
        2 (cells L, R) or 3 (cells L, M, R).
    omega : tuple of float
        Transition frequency of each cell, ordered as the cell labels.
    coupling : mapping
        ``{(i, j): lambda_ij}`` for site indices ``i < j``. Missing pairs are 0.
    bath_temps : tuple of float
        Temperature of the reservoir attached to each cell.
    kappa : float
        Dimensionless Ohmic constant.
    """

    n_cells: int
    omega: tuple[float, ...]
    coupling: Mapping[tuple[int, int], float]
    bath_temps: tuple[float, ...]
    kappa: float = DEFAULT_KAPPA

    def __post_init__(self):
        if self.n_cells not in (2, 3):
            raise ValueError(f"n_cells must be 2 or 3, got {self.n_cells}")
        n = self.n_cells
        omega = tuple(float(w) for w in self.omega)
        temps = tuple(float(t) for t in self.bath_temps)
        if len(omega) != n or len(temps) != n:
            raise ValueError(f"omega and bath_temps need {n} entries each")
        coupling = {pair: 0.0 for pair in combinations(range(n), 2)}
        for (i, j), value in dict(self.coupling).items():
            key = (min(i, j), max(i, j))
            if i == j or key not in coupling:
                raise ValueError(f"invalid coupling pair {(i, j)} for {n} cells")
            coupling[key] = float(value)
        if any(not np.isfinite(w) or w < 0 for w in omega):
            raise ValueError(f"frequencies must be finite and >= 0, got {omega}")
        for i, w in enumerate(omega):
            # a zero-frequency cell is only allowed when it is fully detached
            if w == 0 and any(v != 0 for pair, v in coupling.items() if i in pair):
                raise ValueError(f"cell {self.labels[i]} has zero frequency but nonzero coupling")
        if any(not np.isfinite(t) or t < 0 for t in temps):
            raise ValueError(f"bath temperatures must be finite and >= 0, got {temps}")
        if not np.isfinite(self.kappa) or self.kappa <= 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "bath_temps", temps)
        object.__setattr__(self, "coupling", coupling)
        object.__setattr__(self, "kappa", float(self.kappa))

    @property
    def labels(self) -> tuple[str, ...]:
        return SITE_LABELS[self.n_cells]

    @property
    def dim(self) -> int:
        return 2**self.n_cells

    def _site(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"no cell {label!r} in a {self.n_cells}-cell spec") from None

    def _pair(self, labels: str) -> tuple[int, int]:
        if len(labels) != 2:
            raise ValueError(f"coupling path needs two cell labels, got {labels!r}")
        i, j = self._site(labels[0]), self._site(labels[1])
        if i == j:
            raise ValueError(f"self-coupling {labels!r} is undefined")
        return (min(i, j), max(i, j))

    def get(self, path: str) -> float:
        """Read a parameter by path, e.g. ``"T_L"``, ``"lambda_LR"``, ``"kappa"``."""
        if path == "kappa":
            return self.kappa
        if self.n_cells == 2 and path in _ABSENT_MIDDLE:
            return 0.0
        kind, _, target = path.partition("_")
        if kind == "T":
            return self.bath_temps[self._site(target)]
        if kind == "omega":
            return self.omega[self._site(target)]
        if kind == "lambda":
            return self.coupling[self._pair(target)]
        raise ValueError(f"unresolvable parameter path {path!r}")

    def with_params(self, params: Mapping[str, float]) -> SystemSpec:
        """Return a copy with the given parameter paths replaced."""
        omega = list(self.omega)
        temps = list(self.bath_temps)
        coupling = dict(self.coupling)
        kappa = self.kappa
        for path, value in params.items():
            value = float(value)
            if path == "kappa":
                kappa = value
                continue
            if self.n_cells == 2 and path in _ABSENT_MIDDLE:
                if value != 0:
                    raise ValueError(f"{path} must stay 0 on a two-cell spec")
                continue
            kind, _, target = path.partition("_")
            if kind == "T":
                temps[self._site(target)] = value
            elif kind == "omega":
                omega[self._site(target)] = value
            elif kind == "lambda":
                coupling[self._pair(target)] = value
            else:
                raise ValueError(f"unresolvable parameter path {path!r}")
        return SystemSpec(self.n_cells, tuple(omega), coupling, tuple(temps), kappa)

    def params(self) -> dict[str, float]:
        """All parameters as a flat ``{path: value}`` dict."""
        out = {}
        for i, lab in enumerate(self.labels):
            out[f"omega_{lab}"] = self.omega[i]
        for (i, j), v in self.coupling.items():
            out[f"lambda_{self.labels[i]}{self.labels[j]}"] = v
        for i, lab in enumerate(self.labels):
            out[f"T_{lab}"] = self.bath_temps[i]
        out["kappa"] = self.kappa
        return out

    def to_three_cell(self, middle_temp: float = 0.0) -> SystemSpec:
        """Embed a two-cell spec as three cells with a detached, zero-frequency M."""
        if self.n_cells == 3:
            return self
        omega_l, omega_r = self.omega
        t_l, t_r = self.bath_temps
        return SystemSpec(
            3,
            (omega_l, 0.0, omega_r),
            {(0, 2): self.coupling[(0, 1)]},
            (t_l, middle_temp, t_r),
            self.kappa,
        )


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian Hamiltonian.

    ``bohr_table`` holds ``(omega, pairs)`` entries sorted by frequency, where
    each pair ``(upper, lower)`` indexes eigenstates with
    ``energies[upper] - energies[lower] == omega`` up to ``freq_tol``.
    """

    energies: np.ndarray
    states: np.ndarray
    bohr_table: tuple[tuple[float, tuple[tuple[int, int], ...]], ...]
    freq_tol: float = DEFAULT_FREQ_TOL
    hamiltonian: np.ndarray = field(default=None, repr=False)

    @property
    def frequencies(self) -> tuple[float, ...]:
        return tuple(w for w, _ in self.bohr_table)

    def pairs(self, omega: float) -> tuple[tuple[int, int], ...]:
        for w, pairs in self.bohr_table:
            if abs(w - omega) <= self.freq_tol:
                return pairs
        raise ValueError(f"{omega} is not a Bohr frequency of this spectrum")


def build_hamiltonian(spec: SystemSpec) -> np.ndarray:
    r"""Battery Hamiltonian for ``spec``.

    .. math::

        H = \sum_i \frac{\omega_i}{2}\sigma_z^i
            + \sum_{i<j} \frac{\lambda_{ij}}{2}\sigma_z^i\sigma_z^j

    Each unordered pair enters once with weight ``lambda_ij / 2``, so the
    two-cell battery with ``omega = 1, lambda_LR = 0.1`` has the levels
    ``1.05, -0.05, -0.05, -0.95``.
    """
    if not isinstance(spec, SystemSpec):
        raise TypeError(f"expected SystemSpec, got {type(spec).__name__}")
    n = spec.n_cells
    sz = pauli("z")
    z_ops = [embed(sz, i, n) for i in range(n)]
    h = sum(0.5 * w * z for w, z in zip(spec.omega, z_ops))
    for (i, j), lam in spec.coupling.items():
        h = h + 0.5 * lam * (z_ops[i] @ z_ops[j])
    return h


def _group_gaps(gaps, freq_tol):
    """Single-linkage clustering of sorted ``(gap, pair)`` items."""
    groups = []
    for gap, pair in gaps:
        if groups and gap - groups[-1][-1][0] <= freq_tol:
            groups[-1].append((gap, pair))
        else:
            groups.append([(gap, pair)])
    return tuple(
        (float(np.mean([g for g, _ in grp])), tuple(p for _, p in grp)) for grp in groups
    )


def spectrum(h: np.ndarray, freq_tol: float = DEFAULT_FREQ_TOL) -> Spectrum:
    """Diagonalize ``h`` and tabulate its positive Bohr frequencies."""
    h = np.asarray(h, dtype=complex)
    scale = max(1.0, float(np.abs(h).max(initial=0.0)))
    if not is_hermitian(h, atol=1e-12 * scale):
        raise ValueError("spectrum() requires a Hermitian operator")
    energies, states = np.linalg.eigh(h)
    d = len(energies)
    gaps = sorted(
        (energies[k] - energies[m], (k, m))
        for k in range(d)
        for m in range(d)
        if energies[k] - energies[m] > freq_tol
    )
    return Spectrum(energies, states, _group_gaps(gaps, freq_tol), freq_tol, h)


def _two_cell_fig2():
    return SystemSpec(2, (1.0, 1.0), {(0, 1): 0.1}, (0.0, 0.0))


def _three_cell(t_l, t_m, t_r):
    return SystemSpec(3, (1.0, 1.0, 1.0), {(0, 1): 0.1, (1, 2): 0.1, (0, 2): 0.1}, (t_l, t_m, t_r))


PRESETS = {
    "two_cell_fig2": _two_cell_fig2,
    "three_cell_fig4": lambda: _three_cell(0.0, 0.0, 0.0),
    "three_cell_fig6": lambda: _three_cell(1.0, 0.0, 0.0),
}

# Parameters a preset fixes by assumption rather than from a stated value.
PRESET_ASSUMPTIONS = {
    "two_cell_fig2": {"lambda_LR": 0.1},
}


def preset(name: str, overrides: Mapping[str, float] | None = None) -> SystemSpec:
    """Parameter set for one of the reproduced figures.

    ``two_cell_fig2`` is the L-R battery with M removed; its ``lambda_LR``
    defaults to 0.1 as an assumption. The three-cell presets use
    ``lambda = 0.1`` on every pair; ``three_cell_fig6`` fixes
    ``T_L = 1, T_R = 0``. ``overrides`` maps parameter paths to values.
    """
    try:
        spec = PRESETS[name]()
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    if overrides:
        spec = spec.with_params(overrides)
    return spec
