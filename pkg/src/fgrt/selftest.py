"""Invariant battery run by ``fgrt selftest``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from . import operators as ops
from . import phase_space as ps
from .modmath import as_int, eps, inv2, omega_table
from .tomography_sim import random_mixed


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _close(name: str, err: float, tol: float) -> CheckResult:
    return CheckResult(name, bool(err <= tol), f"max error {err:.3g}")


def run_selftest(dim, seed: int = 0) -> list[CheckResult]:
    d = as_int(dim)
    tol = eps()
    results = []

    for report in geo.verify_dapg_axioms(d) + geo.verify_apg_axioms(d):
        results.append(CheckResult(report.axiom_id, report.passed, report.counterexample or ""))

    table = ops.operator_table(d)
    A, P = table.points, table.lines
    eye = np.eye(d)
    lines = geo.dapg_lines(d)
    points = geo.dapg_points(d)

    results.append(_close("roots of unity sum to zero", abs(omega_table(d).sum()), tol))
    results.append(CheckResult("2 * inv2 = 1 mod d", (2 * inv2(d)) % d == 1))

    states = np.stack([ops.mub_state(d, a.m, a.b) for a in points])
    gram = np.abs(states.conj() @ states.T)
    labels_b = np.array([a.b for a in points])
    labels_m = np.array([a.m for a in points])
    same_state = np.equal.outer(labels_m, labels_m).astype(float)
    expected = np.where(np.equal.outer(labels_b, labels_b), same_state, 1 / np.sqrt(d))
    results.append(_close("MUB orthonormality and unbiasedness", float(np.max(np.abs(gram - expected))), tol))

    outer = np.einsum("an,ak->ank", states, states.conj())
    results.append(_close("point operator closed form = |m,b><b,m|", float(np.max(np.abs(outer - A))), tol))

    per_basis = A.reshape(d + 1, d, d, d).sum(axis=1)
    results.append(_close("per-basis completeness", float(np.max(np.abs(per_basis - eye))), tol))

    xz = max(ops.xz_eigen_check(d, m, b) for b in range(d) for m in range(d))
    results.append(_close("X Z^b eigenrelation", xz, tol))

    lam = np.einsum("ank,jkn->aj", A, P)
    inc = geo.incidence_table(d)
    results.append(_close("tr(A P) = incidence", float(np.max(np.abs(lam - inc))), tol))

    pp = np.einsum("ink,jkn->ij", P, P)
    dual = np.stack([
        [sum(pp[geo.line_index(d, j), geo.line_index(d, k)] for k in geo.lines_through_point(d, a)) / d
         for j in lines]
        for a in points
    ])
    results.append(_close("incidence via lines through the point", float(np.max(np.abs(dual - inc))), tol))

    results.append(_close("P_j^2 = I", float(np.max(np.abs(P @ P - eye))), tol))
    results.append(_close("tr(P_j P_j') = d delta", float(np.max(np.abs(pp - d * np.eye(d * d)))), tol))
    results.append(_close("sum_j P_j = d I", float(np.max(np.abs(P.sum(axis=0) - d * eye))), tol))

    by_sum = np.stack([A[inc[:, jx] == 1].sum(axis=0) - eye for jx in range(d * d)])
    results.append(_close("P_j = sum of A over the line - I", float(np.max(np.abs(by_sum - P))), tol))

    fdf = 0.0
    for jx in range(d * d):
        on_line = A[inc[:, jx] == 1]
        total = on_line.sum(axis=0)
        pairs = total @ total - np.einsum("ank,akl->nl", on_line, on_line)
        fdf = max(fdf, float(np.max(np.abs(pairs - total))))
    results.append(_close("fluctuation distillation formula", fdf, tol))

    mults = {ops.eigen_multiplicities(p) for p in P}
    want = ((d + 1) // 2, (d - 1) // 2, 0)
    results.append(CheckResult("P_j spectrum (+1, -1) multiplicities", mults == {want}, f"{sorted(mults)}"))

    M = np.stack([ops.line_state_matrix(d, j) for j in lines])
    mm = np.einsum("ink,jnk->ij", M.conj(), M)
    target = np.where(np.eye(d * d, dtype=bool), 1.0, 1 / (d + 1))
    err = float(np.max(np.abs(mm - target)))
    proj = np.stack([ops.line_projector(d, j) for j in lines])
    err = max(err, float(np.max(np.abs(M @ M.conj().transpose(0, 2, 1) - 2 / (d + 1) * proj))))
    results.append(_close("line-state matrix relations", err, tol))

    rho = random_mixed(d, d, seed)
    v = ps.quasi_dist(rho)
    err = abs(v.values.sum() / d - 1)
    results.append(_close("quasi-distribution normalisation", err, tol))
    err = float(np.max(np.abs(ps.state_from_quasi(v) - rho)))
    results.append(_close("state from quasi-distribution", err, tol))

    direct = ps.radon_forward(rho)
    via_lines = ps.radon_transform(v)
    results.append(_close("Radon transform: direct vs line sums", float(np.max(np.abs(direct.probs - via_lines.probs))), tol))

    back = ps.radon_inverse(direct)
    results.append(_close("Radon inversion recovers V", float(np.max(np.abs(back.values - v.values))), tol))

    err = 0.0
    for lam in geo.apg_lines(d):
        alpha = geo.apg_common_dapg_point(d, lam)
        err = max(err, float(np.max(np.abs(ops.apg_line_operator(d, lam) - A[geo.point_index(d, alpha)]))))
        err = max(err, abs(v.apg_radon(lam) - direct[alpha]))
    results.append(_close("APG line average = point operator; APG Radon sums", err, tol))
    return results
