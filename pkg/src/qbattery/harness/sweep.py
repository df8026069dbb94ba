"""Grid evaluation of steady-state ergotropy."""

from __future__ import annotations

import itertools
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .. import __version__
from ..ergotropy import CLAMP_TOL, ergotropy
from ..errors import InvalidStateError, SolverError
from ..lindblad import liouvillian
from ..model import PRESET_ASSUMPTIONS, SystemSpec, build_hamiltonian, preset
from ..steady_state import residual, steady_state
from .config import Axis, ConfigError, SolverSettings, SweepConfig

log = logging.getLogger(__name__)

RESULT_COLUMNS = ("W", "internal_energy", "residual", "min_eig")


@dataclass(frozen=True)
class Row:
    values: tuple[float, ...]
    W: float
    internal_energy: float
    residual: float
    min_eig: float
    status: str = "ok"

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass
class SweepResult:
    axes: tuple[Axis, ...]
    rows: list[Row]
    metadata: dict[str, str] = field(default_factory=dict)

    @property
    def columns(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.axes) + RESULT_COLUMNS

    @property
    def n_errors(self) -> int:
        return sum(not r.ok for r in self.rows)

    def column(self, name: str) -> np.ndarray:
        """One column as an array, error rows included (as NaN)."""
        names = [a.name for a in self.axes]
        if name in names:
            k = names.index(name)
            return np.array([r.values[k] for r in self.rows])
        if name in RESULT_COLUMNS:
            return np.array([getattr(r, name) for r in self.rows])
        raise KeyError(name)


def evaluate_point(spec: SystemSpec, solver: SolverSettings = SolverSettings()) -> tuple[float, float, float, float]:
    """Steady-state ergotropy of one parameter set.

    Returns ``(W, internal_energy, residual, min_eig)``.
    """
    superop = liouvillian(spec, solver.freq_tol)
    rho = steady_state(superop, method=solver.method,
                       residual_tol=solver.residual_tol, null_tol=solver.null_tol)
    report = ergotropy(rho, build_hamiltonian(spec))
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    return report.ergotropy, report.internal_energy, residual(superop, rho), min_eig


def _evaluate(job):
    base, params, values, solver = job
    nan = math.nan
    try:
        spec = base.with_params(params)
        w, u, res, min_eig = evaluate_point(spec, solver)
    except (SolverError, InvalidStateError, ValueError, np.linalg.LinAlgError) as exc:
        return Row(values, nan, nan, nan, nan, f"error: {exc}")
    if not (res < solver.residual_tol and min_eig >= -CLAMP_TOL):
        return Row(values, w, u, res, min_eig, "error: threshold violated")
    return Row(values, w, u, res, min_eig)


def _assumption_flags(config):
    swept = {t for a in config.axes for t in a.targets}
    flags = {}
    for path in PRESET_ASSUMPTIONS.get(config.preset, {}):
        assumed = path not in config.overrides and path not in swept
        flags[f"{path}_assumed"] = "true" if assumed else "false"
    return flags


def _fmt(x):
    return format(x, ".12g") if isinstance(x, float) else str(x)


def build_metadata(config: SweepConfig, base: SystemSpec) -> dict[str, str]:
    swept = {t for a in config.axes for t in a.targets}
    meta = {
        "engine": f"qbattery {__version__}",
        "config": config.name,
        "preset": config.preset,
        "kappa": _fmt(config.solver.kappa),
        "freq_tol": _fmt(config.solver.freq_tol),
        "residual_tol": _fmt(config.solver.residual_tol),
        "null_tol": _fmt(config.solver.null_tol),
        "min_eig_tol": _fmt(-CLAMP_TOL),
        "method": config.solver.method,
        "coupling_convention": "H = sum omega_i/2 sz_i + sum_{i<j} lambda_ij/2 sz_i sz_j",
        "vectorization": "column-stacking",
        "zero_frequency_transitions": "excluded",
    }
    meta.update(_assumption_flags(config))
    for axis in config.axes:
        meta[f"axis.{axis.name}"] = "+".join(axis.targets)
    for path, value in base.params().items():
        if path not in swept:
            meta[f"fixed.{path}"] = _fmt(value)
    meta.update(config.notes)
    return meta


def check_output_dir(path: str | Path) -> Path:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"output directory {out} is not writable: {exc}") from exc
    if not os.access(out, os.W_OK):
        raise ConfigError(f"output directory {out} is not writable")
    return out


def run_sweep(config: SweepConfig, workers: int = 1) -> SweepResult:
    """Evaluate the steady-state ergotropy on the full grid of ``config``.

    Rows follow row-major order of ``config.axes`` (first axis outermost).
    Points that fail keep their place in the grid as error rows.
    """
    if config.output is not None:
        check_output_dir(config.output)
    base = preset(config.preset, config.overrides).with_params({"kappa": config.solver.kappa})
    jobs = []
    for values in itertools.product(*(a.values for a in config.axes)):
        params = {t: v for a, v in zip(config.axes, values) for t in a.targets}
        jobs.append((base, params, tuple(values), config.solver))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate, jobs, chunksize=max(1, len(jobs) // (8 * workers))))
    else:
        rows = [_evaluate(job) for job in jobs]
    meta = build_metadata(config, base)
    meta["rows"] = str(len(rows))
    meta["error_rows"] = str(sum(not r.ok for r in rows))
    result = SweepResult(tuple(config.axes), rows, meta)
    if result.n_errors:
        log.warning("%s: %d of %d grid points failed", config.name, result.n_errors, len(rows))
    return result
