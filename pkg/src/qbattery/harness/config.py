"""Sweep configuration: axes, fixed overrides and solver settings."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from ..model import DEFAULT_FREQ_TOL, DEFAULT_KAPPA, preset
from ..steady_state import NULL_TOL, RESIDUAL_TOL

DEFAULT_POINTS = 81


class ConfigError(ValueError):
    """Invalid or unresolvable sweep configuration."""


@dataclass(frozen=True)
class Axis:
    """One swept dimension. All ``targets`` receive the same value (tied axis)."""

    name: str
    targets: tuple[str, ...]
    values: tuple[float, ...]
    continuous: bool = False

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Axis:
        if "name" not in d:
            raise ConfigError(f"axis without a name: {d}")
        name = str(d["name"])
        targets = tuple(d.get("targets", [name]))
        if not targets:
            raise ConfigError(f"axis {name!r} has no targets")
        if "values" in d:
            values = tuple(float(v) for v in d["values"])
            if not values:
                raise ConfigError(f"axis {name!r} has an empty value list")
            return cls(name, targets, values, continuous=False)
        try:
            lo, hi, n = float(d["min"]), float(d["max"]), int(d["points"])
        except KeyError as exc:
            raise ConfigError(f"axis {name!r} needs 'values' or 'min'/'max'/'points'") from exc
        if n < 2:
            raise ConfigError(f"axis {name!r}: point count must be >= 2, got {n}")
        if not lo < hi:
            raise ConfigError(f"axis {name!r}: min must be < max, got {lo} >= {hi}")
        return cls(name, targets, tuple(np.linspace(lo, hi, n).tolist()), continuous=True)

    def to_dict(self) -> dict[str, Any]:
        if self.continuous:
            return {"name": self.name, "targets": list(self.targets),
                    "min": self.values[0], "max": self.values[-1], "points": len(self.values)}
        return {"name": self.name, "targets": list(self.targets), "values": list(self.values)}


@dataclass(frozen=True)
class SolverSettings:
    kappa: float = DEFAULT_KAPPA
    freq_tol: float = DEFAULT_FREQ_TOL
    residual_tol: float = RESIDUAL_TOL
    null_tol: float = NULL_TOL
    method: str = "svd"

    def __post_init__(self):
        if self.method not in ("svd", "lstsq"):
            raise ConfigError(f"unknown solver method {self.method!r}")
        if not (self.kappa > 0 and self.freq_tol > 0 and self.residual_tol > 0 and self.null_tol > 0):
            raise ConfigError("solver settings must all be positive")


@dataclass(frozen=True)
class SweepConfig:
    name: str
    preset: str
    axes: tuple[Axis, ...] = ()
    overrides: dict[str, float] = field(default_factory=dict)
    solver: SolverSettings = field(default_factory=SolverSettings)
    output: str | None = None
    notes: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """Check the preset and that every override and axis target resolves."""
        try:
            base = preset(self.preset, self.overrides)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate axis names in {names}")
        targets = [t for a in self.axes for t in a.targets]
        if len(set(targets)) != len(targets):
            raise ConfigError(f"parameter swept by more than one axis: {targets}")
        for axis in self.axes:
            for path in axis.targets:
                try:
                    base.get(path)
                    base.with_params({path: axis.values[0]})
                except ValueError as exc:
                    raise ConfigError(f"axis {axis.name!r}: {exc}") from exc

    @property
    def grid_size(self) -> int:
        return int(np.prod([len(a.values) for a in self.axes], dtype=int))

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> SweepConfig:
        try:
            solver = SolverSettings(**d.get("solver", {}))
        except TypeError as exc:
            raise ConfigError(f"bad solver settings: {exc}") from exc
        if "preset" not in d:
            raise ConfigError("config needs a 'preset'")
        return cls(
            name=str(d.get("name", "sweep")),
            preset=d["preset"],
            axes=tuple(Axis.from_dict(a) for a in d.get("axes", [])),
            overrides={k: float(v) for k, v in d.get("overrides", {}).items()},
            solver=solver,
            output=d.get("output"),
            notes=dict(d.get("notes", {})),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "preset": self.preset,
            "axes": [a.to_dict() for a in self.axes],
            "overrides": dict(self.overrides),
            "solver": vars(self.solver).copy(),
            "output": self.output,
            "notes": dict(self.notes),
        }


def load_config_dict(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return data


def merge(base: dict[str, Any], extra: dict[str, Any]) -> dict[str, Any]:
    """Recursive dict merge; values from ``extra`` win, lists are replaced."""
    out = copy.deepcopy(base)
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


_T_RANGE = {"min": 0.0, "max": 2.0, "points": DEFAULT_POINTS}
_ESTIMATED = {"axis_ranges_estimated": "true"}

FIGURES: dict[str, dict[str, Any]] = {
    "fig2a": {
        "name": "fig2a",
        "preset": "two_cell_fig2",
        "axes": [
            {"name": "T_R", "values": [0.25, 0.5, 0.75, 1.0]},
            {"name": "T_L", **_T_RANGE},
        ],
    },
    "fig2b": {
        "name": "fig2b",
        "preset": "two_cell_fig2",
        "axes": [
            {"name": "T_L", "values": [0.25, 0.5, 0.75, 1.0]},
            {"name": "T_R", **_T_RANGE},
        ],
    },
    "fig3": {
        "name": "fig3",
        "preset": "two_cell_fig2",
        "axes": [{"name": "T_L", **_T_RANGE}, {"name": "T_R", **_T_RANGE}],
    },
    "fig4a": {
        "name": "fig4a",
        "preset": "three_cell_fig4",
        "overrides": {"T_R": 0.0},
        "axes": [
            {"name": "T_M", "values": [0.0, 0.5, 1.0]},
            {"name": "T_L", **_T_RANGE},
        ],
    },
    "fig4b": {
        "name": "fig4b",
        "preset": "three_cell_fig4",
        "overrides": {"T_L": 0.0},
        "axes": [
            {"name": "T_M", "values": [0.0, 0.5, 1.0]},
            {"name": "T_R", **_T_RANGE},
        ],
    },
    "fig5": {
        "name": "fig5",
        "preset": "three_cell_fig4",
        "axes": [
            {"name": "T_M", "values": [0.5, 0.75, 1.0]},
            {"name": "T_L", **_T_RANGE},
            {"name": "T_R", **_T_RANGE},
        ],
    },
    "fig6": {
        "name": "fig6",
        "preset": "three_cell_fig6",
        "overrides": {"T_L": 1.0, "T_R": 0.0},
        "axes": [
            {"name": "T_M", "values": [0.0, 0.5, 1.0]},
            {"name": "lambda", "targets": ["lambda_LM", "lambda_MR", "lambda_LR"],
             "min": 0.0, "max": 2.0, "points": 101},
        ],
    },
}
for _fig in FIGURES.values():
    _fig["notes"] = dict(_ESTIMATED)


def figure_config(name: str, **extra: Any) -> SweepConfig:
    """Built-in config for a figure, with ``extra`` merged on top."""
    if name not in FIGURES:
        raise ConfigError(f"unknown figure {name!r}; choose from {sorted(FIGURES)}")
    return SweepConfig.from_dict(merge(FIGURES[name], extra))
