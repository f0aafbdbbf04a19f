"""Versioned CSV/JSON emission for sweep records, spectra, series, and scenarios.

Every CSV starts with a schema comment line ('# schema=<name>.v<version>')
followed by a fixed header; downstream consumers must refuse mismatched
versions. Floats are written with repr precision so a round trip recovers
them exactly; non-finite values serialize as Infinity/-Infinity/NaN, which
both float() and JavaScript's Number() accept.
"""

from __future__ import annotations

import io
import json
import math
import os

import numpy as np

from .scenarios import ScenarioResult
from .spectral import BlockSpectrum
from .sweep import SweepRecord

SCHEMA_VERSION = 1

SCHEMAS = {
    "sweep": ["N", "beta", "steps", "var_hb", "var_hc", "bound", "kl_bits", "final_energy", "avg_power"],
    "spectra": ["N", "beta", "form", "mean", "mean_abs", "max_abs", "variance"],
    "spectra_hist": ["N", "beta", "form", "eigenvalue", "weight"],
    "series": ["step", "energy", "avg_power", "inst_power", "var_hb", "var_hc", "robertson", "kl_step", "fisher_bound"],
    "scenario": ["t", "energy", "power", "i_e_analytic", "i_e_discrete", "robertson", "fisher_bound", "grouping", "flags"],
}


def schema_line(name: str) -> str:
    return f"# schema={name}.v{SCHEMA_VERSION}"


def _format_value(value) -> str:
    if isinstance(value, (bool, str)):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    return repr(value)


def _parse_value(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)  # accepts Infinity/-Infinity/NaN
    except ValueError:
        return text


def write_rows(destination, schema_name: str, rows: list[dict], fmt: str = "csv") -> None:
    """Write dict rows under a named schema; destination is a path or text file."""
    if schema_name not in SCHEMAS:
        raise ValueError(f"unknown schema {schema_name!r}")
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
    if not rows:
        raise ValueError("nothing to write: rows are empty")
    columns = SCHEMAS[schema_name]
    for row in rows:
        missing = [c for c in columns if c not in row]
        if missing:
            raise ValueError(f"row is missing columns {missing} for schema {schema_name!r}")
    if fmt == "csv":
        lines = [schema_line(schema_name), ",".join(columns)]
        lines += [",".join(_format_value(row[c]) for c in columns) for row in rows]
        payload = "\n".join(lines) + "\n"
    else:
        payload = json.dumps([{c: row[c] for c in columns} for row in rows], indent=1) + "\n"
    if hasattr(destination, "write"):
        destination.write(payload)
        return
    parent = os.path.dirname(os.path.abspath(destination))
    if not os.path.isdir(parent):
        raise OSError(f"destination directory does not exist: {parent}")
    with open(destination, "w", encoding="utf-8") as handle:
        handle.write(payload)


def read_csv(source) -> tuple[str, int, list[dict]]:
    """Parse a schema-versioned CSV back into (schema_name, version, rows)."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("# schema="):
        raise ValueError("missing schema comment line")
    tag = lines[0].removeprefix("# schema=").strip()
    name, _, version_text = tag.rpartition(".v")
    if not name or not version_text.isdigit():
        raise ValueError(f"malformed schema tag {tag!r}")
    if len(lines) < 2:
        raise ValueError("missing column header")
    columns = lines[1].split(",")
    rows = []
    for line in lines[2:]:
        cells = line.split(",")
        if len(cells) != len(columns):
            raise ValueError(f"row has {len(cells)} cells, expected {len(columns)}: {line!r}")
        rows.append({c: _parse_value(cell) for c, cell in zip(columns, cells)})
    return name, int(version_text), rows


def sweep_rows(records: list[SweepRecord]) -> list[dict]:
    return [
        {
            "N": r.n_spins,
            "beta": r.beta,
            "steps": r.steps,
            "var_hb": r.time_avg_var_hb,
            "var_hc": r.time_avg_var_hc,
            "bound": r.time_avg_bound,
            "kl_bits": r.time_avg_kl_bits,
            "final_energy": r.final_energy,
            "avg_power": r.avg_power,
        }
        for r in records
    ]


def spectra_rows(n_spins: int, beta: float, form: str, block: BlockSpectrum) -> list[dict]:
    stats = block.stats
    return [
        {
            "N": n_spins,
            "beta": beta,
            "form": form,
            "mean": stats.mean,
            "mean_abs": stats.mean_abs,
            "max_abs": stats.max_abs,
            "variance": stats.variance,
        }
    ]


def histogram_rows(n_spins: int, beta: float, form: str, block: BlockSpectrum) -> list[dict]:
    return [
        {"N": n_spins, "beta": beta, "form": form, "eigenvalue": float(v), "weight": int(w)}
        for v, w in zip(block.eigenvalues, block.weights)
    ]


def series_rows(series) -> list[dict]:
    return [
        {
            "step": int(series.steps[i]),
            "energy": series.energy[i],
            "avg_power": series.avg_power[i],
            "inst_power": series.inst_power[i],
            "var_hb": series.var_hb[i],
            "var_hc": series.var_hc[i],
            "robertson": series.robertson[i],
            "kl_step": series.kl_step[i],
            "fisher_bound": series.fisher[i],
        }
        for i in range(len(series.steps))
    ]


def scenario_rows(result: ScenarioResult) -> list[dict]:
    flag_map: dict[float, list[str]] = {}
    for t, tag in result.flags:
        flag_map.setdefault(t, []).append(tag)
    rows = []
    for i, t in enumerate(result.times):
        tags = flag_map.get(float(t), [])
        rows.append(
            {
                "t": result.times[i],
                "energy": result.energy[i],
                "power": result.power[i],
                "i_e_analytic": result.i_e_analytic[i],
                "i_e_discrete": result.i_e_discrete[i],
                "robertson": result.robertson[i],
                "fisher_bound": result.fisher_bound[i],
                "grouping": result.grouping,
                "flags": ";".join(sorted(set(tags))),
            }
        )
    return rows


def rows_to_text(schema_name: str, rows: list[dict], fmt: str) -> str:
    buffer = io.StringIO()
    write_rows(buffer, schema_name, rows, fmt)
    return buffer.getvalue()
