"""Finite-shot MUB tomography experiments built on the Radon inversion."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Union

import numpy as np

from .modmath import as_int, eps
from .phase_space import ProbabilityTable, check_density, project_psd, radon_forward, reconstruct_state

Shots = Union[int, str]
EXACT = "exact"


class BadRank(ValueError):
    pass


class NegativeProbability(ValueError):
    pass


def _rng(seed) -> np.random.Generator:
    # PCG64 streams are reproducible across platforms for a fixed seed
    return np.random.Generator(np.random.PCG64(seed))


def _gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_pure(dim, seed) -> np.ndarray:
    d = as_int(dim)
    psi = _gaussian(_rng(seed), d)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_mixed(dim, rank: int, seed) -> np.ndarray:
    d = as_int(dim)
    if not 1 <= rank <= d:
        raise BadRank(f"rank must be in [1, {d}], got {rank}")
    g = _gaussian(_rng(seed), (d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def sample_table(rho, shots: Shots, seed) -> ProbabilityTable:
    """Empirical MUB frequencies from ``shots`` independent draws per basis."""
    exact = radon_forward(rho)
    if shots == EXACT:
        return exact
    shots = int(shots)
    if shots < 1:
        raise ValueError(f"shots must be positive, got {shots}")
    probs = exact.probs
    if probs.min() < -eps():
        raise NegativeProbability(f"probability {probs.min():.3g} < 0; rho is not a valid state")
    probs = np.clip(probs, 0, None)
    probs = probs / probs.sum(axis=1, keepdims=True)
    rng = _rng(seed)
    counts = np.stack([rng.multinomial(shots, row) for row in probs])
    return ProbabilityTable(exact.d, counts / shots)


def _psd_sqrt(rho: np.ndarray, cutoff: float = 1e-14) -> np.ndarray:
    vals, vecs = np.linalg.eigh(rho)
    vals = np.where(vals > cutoff, vals, 0.0)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """``(tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`` for PSD arguments."""
    root = _psd_sqrt(rho)
    vals = np.linalg.eigvalsh(root @ sigma @ root)
    vals = np.where(vals > 1e-14, vals, 0.0)
    return float(np.sum(np.sqrt(vals)) ** 2)


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(rho - sigma))))


@dataclass
class ExperimentConfig:
    d: int
    shots: Shots = EXACT
    state: str = "pure"
    seed: int = 0
    project_psd: bool = False

    def __post_init__(self):
        self.d = as_int(self.d)
        if self.shots != EXACT:
            if int(self.shots) < 1:
                raise ValueError(f"shots must be >= 1 or 'exact', got {self.shots}")
            self.shots = int(self.shots)
        parse_state_spec(self.state, self.d)


@dataclass
class ExperimentReport:
    d: int
    shots: Shots
    state: str
    seed: int
    fidelity: float
    trace_distance: float
    min_eigenvalue: float
    fidelity_approximate: bool
    sampling_deviations: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def parse_state_spec(spec: str, d: int):
    """Return ``(kind, arg)`` for ``pure``, ``mixed:RANK`` or ``file:PATH``."""
    if spec == "pure":
        return "pure", None
    kind, _, arg = spec.partition(":")
    if kind == "mixed" and arg:
        rank = int(arg)
        if not 1 <= rank <= d:
            raise BadRank(f"rank must be in [1, {d}], got {rank}")
        return "mixed", rank
    if kind == "file" and arg:
        return "file", arg
    raise ValueError(f"unrecognised state spec {spec!r}; use pure, mixed:RANK or file:PATH")


def make_state(cfg: ExperimentConfig, seed) -> np.ndarray:
    kind, arg = parse_state_spec(cfg.state, cfg.d)
    if kind == "pure":
        return random_pure(cfg.d, seed)
    if kind == "mixed":
        return random_mixed(cfg.d, arg, seed)
    from .io import read_matrix

    rho = check_density(read_matrix(arg))
    if rho.shape[0] != cfg.d:
        raise ValueError(f"state file has d={rho.shape[0]}, config has d={cfg.d}")
    return rho


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    start = time.perf_counter()
    state_seed, sample_seed = np.random.SeedSequence(cfg.seed).spawn(2)
    rho = make_state(cfg, state_seed)
    table = sample_table(rho, cfg.shots, sample_seed)
    rec = reconstruct_state(table, project=cfg.project_psd)
    sigma = rec.rho
    approximate = False
    if not cfg.project_psd and not rec.is_psd:
        approximate = True
        fid = fidelity(rho, project_psd(sigma))
    else:
        fid = fidelity(rho, sigma)
    deviations = np.max(np.abs(table.probs - radon_forward(rho).probs), axis=1)
    return ExperimentReport(
        d=cfg.d,
        shots=cfg.shots,
        state=cfg.state,
        seed=cfg.seed,
        fidelity=fid,
        trace_distance=trace_distance(rho, sigma),
        min_eigenvalue=rec.min_eigenvalue,
        fidelity_approximate=approximate,
        sampling_deviations=deviations.tolist(),
        elapsed=time.perf_counter() - start,
    )
