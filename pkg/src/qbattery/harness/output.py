"""CSV tables and gnuplot scripts for sweep results."""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .sweep import RESULT_COLUMNS, SweepResult


def _num(x: float) -> str:
    return format(x, ".12g")


def format_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    for key, value in result.metadata.items():
        buf.write(f"# {key}={value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns + ("status",))
    for row in result.rows:
        writer.writerow(
            [_num(v) for v in row.values]
            + [_num(getattr(row, c)) for c in RESULT_COLUMNS]
            + [row.status]
        )
    return buf.getvalue()


def emit_csv(result: SweepResult, path: str | Path) -> None:
    """Write ``# key=value`` metadata, a header and one line per grid point."""
    if not result.rows:
        raise ValueError("refusing to write an empty sweep result")
    Path(path).write_text(format_csv(result), encoding="utf-8")


def _blocks(result):
    """Split the rows into contiguous blocks, one per combination of the
    leading list-valued (family) axes."""
    axes = result.axes
    n_family = 0
    while n_family < len(axes) and not axes[n_family].continuous:
        n_family += 1
    family, grid = axes[:n_family], axes[n_family:]
    if any(not a.continuous for a in grid):
        raise ValueError("family axes must precede continuous axes for plotting")
    block = 1
    for a in grid:
        block *= len(a.values)
    blocks = []
    for b in range(len(result.rows) // block):
        first = result.rows[b * block]
        label = ", ".join(f"{a.name}={_num(v)}" for a, v in zip(family, first.values))
        blocks.append((b * block, (b + 1) * block - 1, label))
    return family, grid, blocks


def plot_script(result: SweepResult, csv_name: str) -> str:
    if not result.rows:
        raise ValueError("cannot plot an empty sweep result")
    family, grid, blocks = _blocks(result)
    skip = len(result.metadata) + 1
    w_col = len(result.axes) + 1
    src = f"'{csv_name}' skip {skip}"
    lines = [
        f"# gnuplot script for {result.metadata.get('config', 'sweep')}",
        "set datafile separator comma",
        "set datafile missing 'nan'",
        f"set title \"ergotropy W ({result.metadata.get('config', 'sweep')})\"",
    ]
    stem = Path(csv_name).stem
    if len(grid) == 1:
        x_col = len(family) + 1
        lines += [
            "set terminal pngcairo size 800,600",
            f"set output '{stem}.png'",
            f"set xlabel '{grid[0].name}'",
            "set ylabel 'W'",
            "set key top left",
        ]
        curves = [
            f"{src} every ::{lo}::{hi} using {x_col}:{w_col} with lines lw 2 title '{label or 'W'}'"
            for lo, hi, label in blocks
        ]
        lines.append("plot " + ", \\\n     ".join(curves))
    elif len(grid) == 2:
        x_col, y_col = len(family) + 1, len(family) + 2
        n = len(blocks)
        lines += [
            f"set terminal pngcairo size {600 * n},500",
            f"set output '{stem}.png'",
            f"set xlabel '{grid[0].name}'",
            f"set ylabel '{grid[1].name}'",
            "set cblabel 'W'",
            "set palette rgbformulae 33,13,10",
            "set size ratio 1",
        ]
        if n > 1:
            lines.append(f"set multiplot layout 1,{n}")
        for lo, hi, label in blocks:
            if label:
                lines.append(f"set title '{label}'")
            lines.append(f"plot {src} every ::{lo}::{hi} using {x_col}:{y_col}:{w_col} with image notitle")
        if n > 1:
            lines.append("unset multiplot")
    else:
        raise ValueError(f"cannot plot a sweep with {len(grid)} continuous axes; need 1 or 2")
    return "\n".join(lines) + "\n"


def emit_plot_script(result: SweepResult, path: str | Path, csv_name: str | None = None) -> None:
    """Write a gnuplot script rendering the CSV as line plots (one continuous
    axis, one curve per family value) or heat maps (two continuous axes,
    one panel per family value)."""
    path = Path(path)
    text = plot_script(result, csv_name or path.with_suffix(".csv").name)
    path.write_text(text, encoding="utf-8")
