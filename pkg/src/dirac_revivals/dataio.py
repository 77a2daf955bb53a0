"""Deterministic CSV/JSON emitters for the computed datasets.

Every CSV starts with a `# schema=1` comment and a header row; JSON
documents carry a top-level "schema" field.  Numbers are formatted with
repr-faithful %.17g so identical configurations produce byte-identical
files.
"""

from __future__ import annotations

import json
from typing import Iterable

import numpy as np

from .catstate import SpectralFunction
from .density import SpatialGrid2D
from .evolution import TimeSeries

__all__ = [
    "SCHEMA_VERSION",
    "format_number",
    "write_spectral_csv",
    "write_series_csv",
    "write_columns_csv",
    "write_grid_csv",
    "write_grid_json",
    "write_timescales_json",
]

SCHEMA_VERSION = 1


def format_number(x: float) -> str:
    return f"{float(x):.17g}"


def _write_lines(path: str, lines: Iterable[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def write_spectral_csv(path: str, spectral: SpectralFunction) -> None:
    """Lines sorted by energy: columns energy, weight."""
    lines = [f"# schema={SCHEMA_VERSION}", "energy,weight"]
    for e, w in spectral.lines:
        lines.append(f"{format_number(e)},{format_number(w)}")
    _write_lines(path, lines)


def write_series_csv(path: str, series: TimeSeries, label: str = "value") -> None:
    """Real series as t,<label>; complex series as t,re,im,abs."""
    values = np.asarray(series.values)
    ts = series.times
    lines = [f"# schema={SCHEMA_VERSION}"]
    if np.iscomplexobj(values):
        lines.append("t,re,im,abs")
        for t, v in zip(ts, values):
            lines.append(",".join((format_number(t), format_number(v.real),
                                   format_number(v.imag), format_number(abs(v)))))
    else:
        lines.append(f"t,{label}")
        for t, v in zip(ts, values):
            lines.append(f"{format_number(t)},{format_number(v)}")
    _write_lines(path, lines)


def write_columns_csv(path: str, t: np.ndarray, columns: dict[str, np.ndarray]) -> None:
    """Shared time axis with one named column per series."""
    names = list(columns)
    lines = [f"# schema={SCHEMA_VERSION}", ",".join(["t"] + names)]
    for i, ti in enumerate(np.asarray(t)):
        row = [format_number(ti)] + [format_number(columns[name][i]) for name in names]
        lines.append(",".join(row))
    _write_lines(path, lines)


def write_grid_csv(path: str, grid: SpatialGrid2D) -> None:
    """(s, t, value) triples, t-major then s."""
    lines = [f"# schema={SCHEMA_VERSION}", "s,t,value"]
    s = grid.s
    for i, t in enumerate(grid.t):
        for j in range(grid.ns):
            lines.append(",".join((format_number(s[j]), format_number(t),
                                   format_number(grid.values[i, j]))))
    _write_lines(path, lines)


def write_grid_json(path: str, grid: SpatialGrid2D) -> None:
    """Grid spec plus a flat row-major value array."""
    doc = {
        "schema": SCHEMA_VERSION,
        "s_min": grid.s_min,
        "s_max": grid.s_max,
        "ns": grid.ns,
        "t_min": grid.t_min,
        "t_max": grid.t_max,
        "nt": grid.nt,
        "values": [float(v) for v in grid.values.ravel()],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def write_timescales_json(path: str, report: dict) -> None:
    """Fixed field order: schema, n0, delta_n, residual, T1, T2, T3, params."""
    doc = {"schema": SCHEMA_VERSION}
    for key in ("n0", "delta_n", "residual", "T1", "T2", "T3", "params"):
        if key in report:
            doc[key] = report[key]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
