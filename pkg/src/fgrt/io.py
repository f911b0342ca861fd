"""File formats: density/operator matrices and probability tables as JSON, quasi-distributions as CSV.

JSON floats are written with 17 significant digits so files round-trip
exactly, and keys keep insertion order so output is byte-stable.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .geometry import CB
from .modmath import as_int
from .phase_space import DimensionMismatch, ProbabilityTable, QuasiDist


class FormatError(ValueError):
    pass


def _encode(obj) -> str:
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not np.isfinite(x):
            raise FormatError(f"cannot serialize non-finite float {x}")
        text = format(x, ".17g")
        if "e" not in text and "." not in text and "n" not in text:
            text += ".0"
        return text
    return json.dumps(obj)


def dumps(obj) -> str:
    return _encode(obj) + "\n"


def matrix_to_dict(matrix) -> dict:
    matrix = np.asarray(matrix, dtype=complex)
    return {"d": int(matrix.shape[0]), "re": matrix.real.tolist(), "im": matrix.imag.tolist()}


def matrix_from_dict(data: dict) -> np.ndarray:
    try:
        d = as_int(data["d"])
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    except KeyError as exc:
        raise FormatError(f"matrix file is missing field {exc}") from None
    if re.shape != im.shape or re.ndim != 2 or re.shape[0] != d:
        raise DimensionMismatch(f"matrix parts have shapes {re.shape}, {im.shape} for d={d}")
    return re + 1j * im


def write_matrix(path, matrix) -> None:
    Path(path).write_text(dumps(matrix_to_dict(matrix)))


def read_matrix(path) -> np.ndarray:
    return matrix_from_dict(json.loads(Path(path).read_text()))


def table_to_dict(p: ProbabilityTable) -> dict:
    return {
        "d": p.d,
        "tables": [{"basis": b, "probabilities": p.row(b).tolist()} for b in p.bases],
    }


def table_from_dict(data: dict) -> ProbabilityTable:
    try:
        d = as_int(data["d"])
        entries = data["tables"]
    except KeyError as exc:
        raise FormatError(f"probability file is missing field {exc}") from None
    probs = np.full((d + 1, d), np.nan)
    for entry in entries:
        b = int(entry["basis"])
        if not CB <= b < d:
            raise FormatError(f"basis {b} outside [-1, {d - 1}]")
        row = np.asarray(entry["probabilities"], dtype=float)
        if row.shape != (d,):
            raise DimensionMismatch(f"basis {b} has {row.size} probabilities, expected {d}")
        probs[b + 1] = row
    missing = [b for b in range(CB, d) if np.isnan(probs[b + 1]).any()]
    if missing:
        raise FormatError(f"probability file lacks bases {missing}")
    return ProbabilityTable(d, probs)


def write_table(path, p: ProbabilityTable) -> None:
    Path(path).write_text(dumps(table_to_dict(p)))


def read_table(path) -> ProbabilityTable:
    return table_from_dict(json.loads(Path(path).read_text()))


def write_quasi_csv(path, v: QuasiDist, apg: bool = False) -> None:
    header = ["xi", "eta", "value"] if apg else ["m_minus1", "m0", "value"]
    grid = v.grid()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for x in range(v.d):
            for y in range(v.d):
                writer.writerow([x, y, format(float(grid[x, y]), ".17g")])


def read_quasi_csv(path) -> QuasiDist:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    body = rows[1:]
    d = as_int(round(len(body) ** 0.5))
    values = np.zeros(d * d)
    for x, y, value in body:
        values[int(x) * d + int(y)] = float(value)
    return QuasiDist(d, values)
