"""Matrix and table serialization.

The native matrix format is JSON: {"dim": n, "metadata": {...}, "data": rows}
where every entry is a [re, im] pair.  Floats are written with repr fidelity
so a save/load round trip is bit exact.  A plain CSV reader is provided for
matrices produced elsewhere; cells are either a real number or a quoted
"re,im" pair.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os

import numpy as np

from .core import as_cmatrix

ARTIFACT_VERSION = "almostnormal 0.1.0"


def format_float(x: float) -> str:
    """17 significant digits, enough to reproduce any double exactly."""
    return f"{float(x):.17g}"


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def save_matrix(path, a, metadata=None) -> None:
    a = as_cmatrix(a)
    data = [[[float(z.real), float(z.imag)] for z in row] for row in a]
    doc = {"dim": int(a.shape[0]), "metadata": dict(metadata or {}), "data": data}
    text = json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
        fh.write("\n")


def _matrix_from_json(doc) -> tuple[np.ndarray, dict]:
    if not isinstance(doc, dict) or "data" not in doc:
        raise ValueError("matrix JSON must be an object with a 'data' field")
    rows = doc["data"]
    n = len(rows)
    if n == 0:
        raise ValueError("matrix data is empty")
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"row {i} has length {len(row)}, expected {n}")
        for j, cell in enumerate(row):
            if not (isinstance(cell, (list, tuple)) and len(cell) == 2):
                raise ValueError(f"entry ({i},{j}) is not a [re, im] pair")
            out[i, j] = complex(float(cell[0]), float(cell[1]))
    if "dim" in doc and int(doc["dim"]) != n:
        raise ValueError(f"declared dim {doc['dim']} does not match data ({n} rows)")
    meta = doc.get("metadata") or {}
    return as_cmatrix(out), dict(meta)


def _parse_csv_cell(cell: str, where: str) -> complex:
    parts = cell.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ValueError(f"cannot parse matrix cell {cell!r} at {where}")


def _matrix_from_csv(text: str) -> tuple[np.ndarray, dict]:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise ValueError("matrix CSV is empty")
    n = len(rows)
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"row {i} has {len(row)} cells, expected {n} (square)")
        for j, cell in enumerate(row):
            out[i, j] = _parse_csv_cell(cell.strip(), f"({i},{j})")
    return as_cmatrix(out), {}


def load_matrix(path) -> tuple[np.ndarray, dict]:
    """Load a matrix from JSON (native) or CSV, sniffed from content."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if not stripped:
        raise ValueError(f"{path}: file is empty")
    if stripped[0] == "{":
        return _matrix_from_json(json.loads(text))
    return _matrix_from_csv(text)


def _sanitize(value):
    """JSON cannot carry inf/nan; encode them as strings."""
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if math.isnan(v):
            return "nan"
        return v
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, np.ndarray):
        return [_sanitize(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {k: _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    return value

def write_report(path, payload: dict) -> None:
    """Deterministic JSON report: sorted keys, repr floats, sanitized inf."""
    text = json.dumps(_sanitize(payload), sort_keys=True, indent=2, allow_nan=False)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
        fh.write("\n")


def write_csv(out, columns, rows, comments=()) -> None:
    """Write a CSV table with optional leading '# ' comment lines.

    Floats go through format_float so reruns are byte identical; `out` may
    be a path or a writable text file.
    """
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_cell(v) for v in row])
    text = buf.getvalue()
    if isinstance(out, (str, os.PathLike)):
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)


def read_csv(src) -> tuple[list[str], list[list[str]], list[str]]:
    """Read back a write_csv table: (columns, string rows, comment lines).

    `src` may be a path or a readable text file, matching write_csv.
    """
    comments = []
    body = []
    if isinstance(src, (str, os.PathLike)):
        with open(src, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    else:
        lines = src.readlines()
    for line in lines:
        if line.startswith("#"):
            comments.append(line[1:].strip())
        elif line.strip():
            body.append(line)
    rows = list(csv.reader(body))
    if not rows:
        raise ValueError("no header row in CSV input")
    return rows[0], rows[1:], comments
