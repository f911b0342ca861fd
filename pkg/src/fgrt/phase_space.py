"""Line-indexed quasi-distributions and the finite Radon transform.

``V(j) = tr(rho P_j)`` lives on the d^2 DAPG lines.  Summing it over the d
lines through a point gives the MUB probability of that point (the Radon
transform), and summing the probabilities over the d+1 points of a line
recovers ``V(j) + 1`` (the inversion).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (
    CB,
    ApgLine,
    apg_line_points,
    apg_lines,
    incidence_table,
    line_index,
)
from .modmath import as_int, eps
from .operators import operator_table

DEFAULT_NORM_TOL = 1e-6


class DimensionMismatch(ValueError):
    pass


class UnnormalizedTable(ValueError):
    pass


class NotADensityOperator(ValueError):
    pass


@dataclass(frozen=True)
class QuasiDist:
    """Values of a quasi-distribution, stored in row-major DAPG line order."""

    d: int
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.d * self.d,):
            raise DimensionMismatch(f"expected {self.d ** 2} values, got shape {self.values.shape}")

    def __getitem__(self, j) -> float:
        return self.values[line_index(self.d, j)]

    def grid(self) -> np.ndarray:
        """Values as a d x d array indexed ``[m_minus1, m0]``, equivalently ``[xi, eta]``."""
        return self.values.reshape(self.d, self.d)

    def apg(self, xi: int, eta: int):
        return self.grid()[xi % self.d, eta % self.d]

    def apg_radon(self, lam: ApgLine):
        """(1/d) times the sum of the APG-indexed values over the points of ``lam``."""
        return sum(self.apg(*p) for p in apg_line_points(self.d, lam)) / self.d


@dataclass(frozen=True)
class ProbabilityTable:
    """MUB outcome probabilities; row ``b + 1`` holds basis b (b = -1 is the computational basis)."""

    d: int
    probs: np.ndarray

    def __post_init__(self):
        if self.probs.shape != (self.d + 1, self.d):
            raise DimensionMismatch(
                f"expected shape {(self.d + 1, self.d)}, got {self.probs.shape}"
            )

    def __getitem__(self, alpha) -> float:
        m, b = alpha
        return self.probs[b + 1, m % self.d]

    def row(self, b: int) -> np.ndarray:
        return self.probs[b + 1]

    def flat(self) -> np.ndarray:
        """Entries in column-major DAPG point order."""
        return self.probs.reshape(-1)

    @property
    def bases(self) -> range:
        return range(CB, self.d)


def check_density(rho, tol: float | None = None, require_psd: bool = True) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    tol = eps() if tol is None else tol
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"density operator must be square, got {rho.shape}")
    as_int(rho.shape[0])
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise NotADensityOperator("matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise NotADensityOperator(f"trace is {np.trace(rho).real:.6g}, expected 1")
    if require_psd and np.linalg.eigvalsh(rho)[0] < -tol:
        raise NotADensityOperator("matrix has a negative eigenvalue")
    return rho


def _square(op) -> tuple[np.ndarray, int]:
    op = np.asarray(op, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {op.shape}")
    return op, as_int(op.shape[0])


def quasi_values(op) -> np.ndarray:
    """``tr(op P_j)`` for every line; complex in general."""
    op, d = _square(op)
    lines = operator_table(d).lines
    return np.einsum("nk,jkn->j", op, lines)


def quasi_dist(rho) -> QuasiDist:
    rho = check_density(rho, require_psd=False)
    values = quasi_values(rho)
    if np.max(np.abs(values.imag)) > eps():
        raise NotADensityOperator("quasi-distribution has an imaginary part")
    return QuasiDist(rho.shape[0], values.real.copy())


def apg_quasi(rho) -> QuasiDist:
    """Same values as :func:`quasi_dist`; read them through ``apg``/``apg_radon``."""
    return quasi_dist(rho)


def operator_from_quasi(values, d: int) -> np.ndarray:
    values = np.asarray(values)
    d = as_int(d)
    if values.shape != (d * d,):
        raise DimensionMismatch(f"expected {d * d} values, got shape {values.shape}")
    return np.einsum("j,jnk->nk", values, operator_table(d).lines) / d


def state_from_quasi(v: QuasiDist) -> np.ndarray:
    return operator_from_quasi(v.values, v.d)


def radon_forward(rho) -> ProbabilityTable:
    """``p[b][m] = tr(rho A_(m,b))`` evaluated directly."""
    rho = check_density(rho, require_psd=False)
    d = rho.shape[0]
    points = operator_table(d).points
    p = np.einsum("nk,akn->a", rho, points).real
    return ProbabilityTable(d, p.reshape(d + 1, d))


def radon_transform(v: QuasiDist) -> ProbabilityTable:
    """Sum V over the lines through each point: ``(1/d) sum_j Lambda(alpha, j) V(j)``."""
    d = v.d
    p = incidence_table(d) @ v.values / d
    return ProbabilityTable(d, p.reshape(d + 1, d))


def check_table(p: ProbabilityTable, tol: float = DEFAULT_NORM_TOL) -> None:
    sums = p.probs.sum(axis=1)
    bad = np.flatnonzero(np.abs(sums - 1) > tol)
    if bad.size:
        b = int(bad[0]) - 1
        raise UnnormalizedTable(f"basis {b} probabilities sum to {sums[bad[0]]:.12g}")


def radon_inverse(p: ProbabilityTable, tol: float = DEFAULT_NORM_TOL) -> QuasiDist:
    """``V(j) = sum_{alpha in j} p(alpha) - 1``."""
    check_table(p, tol)
    d = p.d
    values = incidence_table(d).T @ p.flat() - 1
    return QuasiDist(d, values)


def project_psd(rho: np.ndarray) -> np.ndarray:
    """Clip negative eigenvalues and renormalize the trace."""
    vals, vecs = np.linalg.eigh(rho)
    vals = np.clip(vals, 0, None)
    vals /= vals.sum()
    return (vecs * vals) @ vecs.conj().T


@dataclass(frozen=True)
class Reconstruction:
    rho: np.ndarray
    min_eigenvalue: float
    projected: bool = False

    @property
    def is_psd(self) -> bool:
        return self.min_eigenvalue >= -eps()


def reconstruct_state(p: ProbabilityTable, tol: float = DEFAULT_NORM_TOL,
                      project: bool = False) -> Reconstruction:
    """Invert the Radon transform and rebuild rho.

    The result is linear in the table; a negative ``min_eigenvalue`` is
    reported, not repaired, unless ``project`` is set.
    """
    rho = state_from_quasi(radon_inverse(p, tol))
    rho = (rho + rho.conj().T) / 2
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    if project:
        rho = project_psd(rho)
    return Reconstruction(rho, min_eig, project)


def overlap_via_quasi(a, b) -> complex:
    """``(1/d) sum_j tr(A P_j) tr(B P_j)``, which equals ``tr(A B)``."""
    a, d = _square(a)
    b, db = _square(b)
    if d != db:
        raise DimensionMismatch(f"dimensions differ: {d} vs {db}")
    return complex(np.sum(quasi_values(a) * quasi_values(b)) / d)


def apg_radon_table(v: QuasiDist) -> dict:
    """``apg_radon(lam)`` for every APG line, keyed by line."""
    return {lam: v.apg_radon(lam) for lam in apg_lines(v.d)}

