"""Command-line entry point: ``qbattery <fig2a|...|fig6|sweep> [options]``.

Exit codes: 0 on success, 1 on a configuration error, 2 when at least one
grid point failed (the CSV is still written, failures flagged per row).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import FIGURES, ConfigError, SweepConfig, figure_config, load_config_dict, merge
from .output import emit_csv, emit_plot_script
from .sweep import check_output_dir, run_sweep

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbattery",
        description="Steady-state ergotropy sweeps for two- and three-cell quantum batteries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in [*FIGURES, "sweep"]:
        p = sub.add_parser(name, help="generic sweep from --config" if name == "sweep" else f"reproduce {name}")
        p.add_argument("--config", type=Path, required=name == "sweep",
                       help="JSON config; for figures, merged over the built-in one")
        p.add_argument("--out", type=Path, default=None, help="output directory (default: .)")
        p.add_argument("--kappa", type=float, default=None, help="Ohmic constant")
        p.add_argument("--points", type=int, default=None, help="points per continuous axis")
        p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    return parser


def resolve_config(args: argparse.Namespace) -> SweepConfig:
    raw = FIGURES.get(args.command, {})
    if args.config is not None:
        raw = merge(raw, load_config_dict(args.config))
    flags = {}
    if args.kappa is not None:
        flags["solver"] = {"kappa": args.kappa}
    if args.out is not None:
        flags["output"] = str(args.out)
    raw = merge(raw, flags)
    if args.points is not None:
        raw["axes"] = [
            {**a, "points": args.points} if "points" in a else a for a in raw.get("axes", [])
        ]
    if args.command != "sweep":
        raw.setdefault("name", args.command)
    return SweepConfig.from_dict(raw)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.workers < 1:
            raise ConfigError("--workers must be >= 1")
        config = resolve_config(args)
        out_dir = check_output_dir(config.output or ".")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    result = run_sweep(config, workers=args.workers)
    csv_path = out_dir / f"{config.name}.csv"
    emit_csv(result, csv_path)
    try:
        emit_plot_script(result, out_dir / f"{config.name}.gp", csv_path.name)
    except ValueError as exc:
        logging.warning("no plot script: %s", exc)
    print(f"{config.name}: {len(result.rows)} rows, {result.n_errors} errors -> {csv_path}")
    return EXIT_SOLVER if result.n_errors else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
