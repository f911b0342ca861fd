"""MUB states and the point/line operators built on the DAPG labels.

All matrices are dense ``complex128`` arrays in the computational basis.
Phase exponents are reduced mod d before looking up powers of omega.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import (
    CB,
    ApgLine,
    DapgLine,
    DapgPoint,
    apg_line_points,
    dapg_lines,
    dapg_points,
    duality_inverse,
    line_point_rows,
    line_points,
)
from .modmath import as_int, eps, inv2, omega_table


class BasisNotApplicable(ValueError):
    pass


def shift_operator(dim) -> np.ndarray:
    """X|n> = |n+1>."""
    d = as_int(dim)
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def clock_operator(dim) -> np.ndarray:
    """Z|n> = omega^n |n>."""
    return np.diag(omega_table(dim)).astype(complex)


def mub_state(dim, m: int, b: int) -> np.ndarray:
    d = as_int(dim)
    if not CB <= b < d:
        raise ValueError(f"basis label {b} outside [-1, {d - 1}]")
    if b == CB:
        v = np.zeros(d, dtype=complex)
        v[m % d] = 1.0
        return v
    n = np.arange(d)
    k = (inv2(d) * b * n * (n - 1) - n * m) % d
    return omega_table(d)[k] / np.sqrt(d)


def xz_eigen_check(dim, m: int, b: int) -> float:
    """Residual norm of ``X Z^b |m;b> - omega^m |m;b>``."""
    d = as_int(dim)
    if b == CB:
        raise BasisNotApplicable("computational-basis states are Z eigenstates, not X Z^b ones")
    v = mub_state(d, m, b)
    op = shift_operator(d) @ np.linalg.matrix_power(clock_operator(d), b)
    return float(np.linalg.norm(op @ v - omega_table(d)[m % d] * v))


def point_operator(dim, alpha: DapgPoint) -> np.ndarray:
    """``|m,b><b,m|`` from its closed-form entries."""
    d = as_int(dim)
    m, b = alpha
    if not CB <= b < d:
        raise ValueError(f"basis label {b} outside [-1, {d - 1}]")
    if b == CB:
        a = np.zeros((d, d), dtype=complex)
        a[m % d, m % d] = 1.0
        return a
    n = np.arange(d)[:, None]
    k = np.arange(d)[None, :]
    s = ((n - k) * (inv2(d) * b * (n + k - 1) - m)) % d
    return omega_table(d)[s] / d


def line_operator(dim, j: DapgLine) -> np.ndarray:
    d = as_int(dim)
    x, y = j[0] % d, j[1] % d
    n = np.arange(d)[:, None]
    k = np.arange(d)[None, :]
    phase = omega_table(d)[(-(n - k) * y) % d]
    return np.where((n + k) % d == (2 * x) % d, phase, 0)


def line_operator_by_sum(dim, j: DapgLine) -> np.ndarray:
    d = as_int(dim)
    total = sum(point_operator(d, a) for a in line_points(d, j))
    return total - np.eye(d)


def line_projector(dim, j: DapgLine) -> np.ndarray:
    d = as_int(dim)
    return (line_operator(d, j) + np.eye(d)) / 2


def line_state_matrix(dim, j: DapgLine) -> np.ndarray:
    """d x (d+1) matrix whose column b holds ``|m(b),b> / sqrt(d+1)``."""
    d = as_int(dim)
    rows = line_point_rows(d, j)
    cols = [mub_state(d, int(m), b) for m, b in zip(rows, range(CB, d))]
    return np.stack(cols, axis=1) / np.sqrt(d + 1)


def apg_line_operator(dim, lam: ApgLine) -> np.ndarray:
    d = as_int(dim)
    ops = [line_operator(d, duality_inverse(d, p)) for p in apg_line_points(d, lam)]
    return sum(ops) / d


def eigen_multiplicities(matrix: np.ndarray, targets=(1.0, -1.0), tol: float = 1e-8) -> tuple:
    """Count Hermitian eigenvalues within ``tol`` of each target; leftovers are returned last."""
    vals = np.linalg.eigvalsh(matrix)
    counts = [int(np.sum(np.abs(vals - t) <= tol)) for t in targets]
    return (*counts, len(vals) - sum(counts))


def max_abs_diff(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def allclose(a, b, tol: float | None = None) -> bool:
    return max_abs_diff(a, b) <= (eps() if tol is None else tol)


@dataclass(frozen=True)
class OperatorTable:
    """Every point and line operator for one dimension, stacked in enumeration order.

    ``points[point_index(α)]`` is A_α and ``lines[line_index(j)]`` is P_j.
    The arrays are read-only so a cached table can be shared freely.
    """

    d: int
    points: np.ndarray
    lines: np.ndarray


@lru_cache(maxsize=16)
def _build_table(d: int) -> OperatorTable:
    points = np.stack([point_operator(d, a) for a in dapg_points(d)])
    lines = np.stack([line_operator(d, j) for j in dapg_lines(d)])
    points.setflags(write=False)
    lines.setflags(write=False)
    return OperatorTable(d, points, lines)


def operator_table(dim) -> OperatorTable:
    return _build_table(as_int(dim))
