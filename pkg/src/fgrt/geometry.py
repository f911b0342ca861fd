"""Dual affine plane (DAPG) and affine plane (APG) realizations over Z_d.

DAPG points are MUB labels ``(m, b)`` laid out in d rows and d+1 columns,
with ``b = CB = -1`` standing for the computational basis.  A DAPG line is
fixed by its rows in the first two columns, ``j = (m(-1), m(0))``, and runs
through ``m(b) = b/2 * (2*m(-1) - 1) + m(0)`` for b >= 0.

APG points are pairs ``(xi, eta)`` on a d x d grid; APG lines are either
sloped (``eta = r*xi + s``) or vertical (``xi = s'``).  The two geometries
are tied together by sending the DAPG line ``(m(-1), m(0))`` to the APG
point ``(xi, eta) = (m(-1), m(0))``.
"""
from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .modmath import as_int, inv2

CB = -1


class DapgPoint(NamedTuple):
    m: int
    b: int


class DapgLine(NamedTuple):
    m_minus1: int
    m0: int


class ApgPoint(NamedTuple):
    xi: int
    eta: int


@dataclass(frozen=True)
class Sloped:
    r: int
    s: int


@dataclass(frozen=True)
class Vertical:
    s_prime: int


ApgLine = Union[Sloped, Vertical]


@dataclass(frozen=True)
class AxiomReport:
    axiom_id: str
    passed: bool
    counterexample: str | None = None

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  counterexample: {self.counterexample}" if self.counterexample else ""
        return f"[{status}] {self.axiom_id}{tail}"


# -- enumeration ------------------------------------------------------------

def dapg_lines(dim) -> list[DapgLine]:
    """All d^2 lines, row-major: index = m_minus1 * d + m0."""
    d = as_int(dim)
    return [DapgLine(x, y) for x in range(d) for y in range(d)]


def dapg_points(dim) -> list[DapgPoint]:
    """All d(d+1) points, column-major: index = (b + 1) * d + m."""
    d = as_int(dim)
    return [DapgPoint(m, b) for b in range(CB, d) for m in range(d)]


def line_index(dim, j: DapgLine) -> int:
    d = as_int(dim)
    return (j[0] % d) * d + j[1] % d


def point_index(dim, alpha: DapgPoint) -> int:
    d = as_int(dim)
    return (alpha[1] + 1) * d + alpha[0] % d


def apg_points(dim) -> list[ApgPoint]:
    d = as_int(dim)
    return [ApgPoint(x, y) for x in range(d) for y in range(d)]


def apg_lines(dim) -> list[ApgLine]:
    """Sloped lines ordered by (r, s), then the d vertical lines."""
    d = as_int(dim)
    return [Sloped(r, s) for r in range(d) for s in range(d)] + [Vertical(s) for s in range(d)]


def _check_point(d: int, alpha: DapgPoint) -> DapgPoint:
    m, b = alpha
    if not CB <= b < d:
        raise ValueError(f"basis label {b} outside [-1, {d - 1}]")
    return DapgPoint(m % d, b)


# -- DAPG -------------------------------------------------------------------

def line_point_rows(dim, j: DapgLine) -> np.ndarray:
    """Rows ``m(b)`` for b = -1, 0, ..., d-1 as an int array of length d+1."""
    d = as_int(dim)
    x, y = j[0] % d, j[1] % d
    b = np.arange(d)
    rows = (inv2(d) * b * (2 * x - 1) + y) % d
    return np.concatenate(([x], rows))


def line_points(dim, j: DapgLine) -> list[DapgPoint]:
    d = as_int(dim)
    rows = line_point_rows(d, j)
    return [DapgPoint(int(m), b) for m, b in zip(rows, range(CB, d))]


def lines_through_point(dim, alpha: DapgPoint) -> list[DapgLine]:
    d = as_int(dim)
    m, b = _check_point(d, alpha)
    if b == CB:
        return [DapgLine(m, y) for y in range(d)]
    h = inv2(d)
    return [DapgLine(x, (m - h * b * (2 * x - 1)) % d) for x in range(d)]


def incidence(dim, alpha: DapgPoint, j: DapgLine) -> int:
    d = as_int(dim)
    m, b = _check_point(d, alpha)
    if b == CB:
        return int(m == j[0] % d)
    return int(int(line_point_rows(d, j)[b + 1]) == m)


def incidence_table(dim) -> np.ndarray:
    """0/1 array of shape (d(d+1), d^2) indexed by (point_index, line_index)."""
    d = as_int(dim)
    table = np.zeros((d * (d + 1), d * d), dtype=np.int8)
    for jx, j in enumerate(dapg_lines(d)):
        for bx, m in enumerate(line_point_rows(d, j)):
            table[bx * d + int(m), jx] = 1
    return table


def write_incidence_csv(dim, path) -> None:
    d = as_int(dim)
    table = incidence_table(d)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["alpha_index", "j_index", "lambda"])
        for a in range(table.shape[0]):
            for j in range(table.shape[1]):
                writer.writerow([a, j, int(table[a, j])])


def _report(axiom_id: str, failures: list[str]) -> AxiomReport:
    if failures:
        return AxiomReport(axiom_id, False, failures[0])
    return AxiomReport(axiom_id, True)


def verify_dapg_axioms(dim) -> list[AxiomReport]:
    d = as_int(dim)
    lines = dapg_lines(d)
    points = dapg_points(d)
    point_set = set(points)
    members = {j: frozenset(line_points(d, j)) for j in lines}
    on = {a: set() for a in points}
    for j, pts in members.items():
        for a in pts:
            on[a].add(j)

    reports = []

    fails = []
    if len(set(members.values())) != d * d:
        fails.append(f"{len(set(members.values()))} distinct lines, expected {d * d}")
    covered = set().union(*members.values())
    if covered != point_set or len(point_set) != d * (d + 1):
        fails.append(f"{len(covered)} points covered, expected {d * (d + 1)}")
    reports.append(_report("DAPG(a)", fails))

    fails = []
    for j, k in itertools.combinations(lines, 2):
        shared = members[j] & members[k]
        if len(shared) != 1:
            fails.append(f"lines {tuple(j)} and {tuple(k)} share {len(shared)} points")
            break
    for a, c in itertools.combinations(points, 2):
        joining = len(on[a] & on[c])
        expected = 1 if a.b != c.b else 0
        if joining != expected:
            fails.append(f"points {tuple(a)} and {tuple(c)} lie on {joining} common lines")
            break
    reports.append(_report("DAPG(b)", fails))

    fails = []
    for a in points:
        if len(on[a]) != d or set(lines_through_point(d, a)) != on[a]:
            fails.append(f"point {tuple(a)} lies on {len(on[a])} lines")
            break
    for j in lines:
        pts = line_points(d, j)
        if len(set(pts)) != d + 1:
            fails.append(f"line {tuple(j)} has {len(set(pts))} points")
            break
    reports.append(_report("DAPG(c)", fails))

    fails = []
    columns = [{a for a in points if a.b == b} for b in range(CB, d)]
    if any(len(col) != d for col in columns) or set().union(*columns) != point_set:
        fails.append("columns do not partition the points into d-sets")
    for col in columns:
        for a, c in itertools.combinations(sorted(col), 2):
            if on[a] & on[c]:
                fails.append(f"same-column points {tuple(a)} and {tuple(c)} share a line")
                break
    reports.append(_report("DAPG(d)", fails))

    fails = []
    for a, c in itertools.combinations(points, 2):
        if a.b != c.b and not on[a] & on[c]:
            fails.append(f"points {tuple(a)} and {tuple(c)} are not joined")
            break
    reports.append(_report("DAPG(e)", fails))
    return reports


# -- APG --------------------------------------------------------------------

def apg_line_points(dim, lam: ApgLine) -> list[ApgPoint]:
    d = as_int(dim)
    if isinstance(lam, Vertical):
        return [ApgPoint(lam.s_prime % d, y) for y in range(d)]
    return [ApgPoint(x, (lam.r * x + lam.s) % d) for x in range(d)]


def apg_direction(lam: ApgLine):
    """Parallel-class key: the slope r, or None for vertical lines."""
    return None if isinstance(lam, Vertical) else lam.r


def verify_apg_axioms(dim) -> list[AxiomReport]:
    d = as_int(dim)
    points = apg_points(d)
    lines = apg_lines(d)
    members = {lam: frozenset(apg_line_points(d, lam)) for lam in lines}
    on = {p: set() for p in points}
    for lam, pts in members.items():
        for p in pts:
            on[p].add(lam)

    reports = []

    fails = []
    if len(set(points)) != d * d:
        fails.append(f"{len(set(points))} points, expected {d * d}")
    if len(set(members.values())) != d * (d + 1):
        fails.append(f"{len(set(members.values()))} distinct lines, expected {d * (d + 1)}")
    reports.append(_report("APG(a)", fails))

    # at most one shared point per line pair; exactly one line through two points
    fails = []
    for u, v in itertools.combinations(lines, 2):
        if len(members[u] & members[v]) > 1:
            fails.append(f"lines {u} and {v} share {len(members[u] & members[v])} points")
            break
    for p, q in itertools.combinations(points, 2):
        if len(on[p] & on[q]) != 1:
            fails.append(f"points {tuple(p)} and {tuple(q)} lie on {len(on[p] & on[q])} common lines")
            break
    reports.append(_report("APG(b)", fails))

    fails = []
    for lam, pts in members.items():
        if len(pts) != d:
            fails.append(f"line {lam} has {len(pts)} points")
            break
    for p in points:
        if len(on[p]) != d + 1:
            fails.append(f"point {tuple(p)} lies on {len(on[p])} lines")
            break
    reports.append(_report("APG(c)", fails))

    # parallel postulate, transitivity of parallelism, d+1 classes of d lines
    fails = []
    for lam in lines:
        for p in points:
            if p in members[lam]:
                continue
            disjoint = [mu for mu in on[p] if not members[mu] & members[lam]]
            if len(disjoint) != 1:
                fails.append(f"{len(disjoint)} parallels to {lam} through {tuple(p)}")
                break
        if fails:
            break
    classes: dict = {}
    for lam in lines:
        classes.setdefault(apg_direction(lam), []).append(lam)
    if len(classes) != d + 1:
        fails.append(f"{len(classes)} parallel classes, expected {d + 1}")
    for key, group in classes.items():
        if len(group) != d:
            fails.append(f"class {key} has {len(group)} lines")
        covered = set().union(*(members[lam] for lam in group))
        if len(covered) != d * d or any(
            members[u] & members[v] for u, v in itertools.combinations(group, 2)
        ):
            fails.append(f"class {key} does not partition the points")
    reports.append(_report("APG(d)", fails))

    fails = []
    for u, v in itertools.combinations(lines, 2):
        if apg_direction(u) != apg_direction(v) and len(members[u] & members[v]) != 1:
            fails.append(f"non-parallel lines {u} and {v} meet in {len(members[u] & members[v])} points")
            break
    reports.append(_report("APG(e)", fails))
    return reports


# -- duality ----------------------------------------------------------------

def duality_map(dim, j: DapgLine) -> ApgPoint:
    d = as_int(dim)
    return ApgPoint(j[0] % d, j[1] % d)


def duality_inverse(dim, p: ApgPoint) -> DapgLine:
    d = as_int(dim)
    return DapgLine(p[0] % d, p[1] % d)


def apg_common_dapg_point(dim, lam: ApgLine) -> DapgPoint:
    """The DAPG point shared by the d DAPG lines dual to the points of ``lam``."""
    d = as_int(dim)
    if isinstance(lam, Vertical):
        return DapgPoint(lam.s_prime % d, CB)
    return DapgPoint((inv2(d) * lam.r + lam.s) % d, (-lam.r) % d)


def apg_common_dapg_point_brute(dim, lam: ApgLine) -> DapgPoint:
    """Intersect the dual DAPG lines directly; used to cross-check the closed form."""
    d = as_int(dim)
    duals = [duality_inverse(d, p) for p in apg_line_points(d, lam)]
    common = set(line_points(d, duals[0]))
    for j in duals[1:]:
        common &= set(line_points(d, j))
    if len(common) != 1:
        raise ValueError(f"dual lines of {lam} share {len(common)} points")
    return common.pop()
