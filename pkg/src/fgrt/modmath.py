"""Arithmetic in Z_d for odd prime d, plus d-th roots of unity."""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_EPS = 1e-10


def eps() -> float:
    """Algebraic comparison tolerance; ``FGRT_EPS`` overrides the default."""
    value = os.environ.get("FGRT_EPS")
    return float(value) if value else DEFAULT_EPS


class DimensionError(ValueError):
    pass


class NonPositive(DimensionError):
    pass


class NotPrime(DimensionError):
    pass


class EvenPrimeUnsupported(DimensionError):
    pass


class ZeroInverse(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class PrimeDim:
    d: int

    def __int__(self) -> int:
        return self.d

    def __index__(self) -> int:
        return self.d


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            return False
    return True


def validate_dim(n) -> PrimeDim:
    if isinstance(n, PrimeDim):
        return n
    if isinstance(n, bool) or int(n) != n:
        raise NotPrime(f"dimension must be an integer, got {n!r}")
    n = int(n)
    if n <= 0:
        raise NonPositive(f"dimension must be positive, got {n}")
    if n == 2:
        raise EvenPrimeUnsupported("d = 2 is not supported; d must be an odd prime")
    if not _is_prime(n):
        raise NotPrime(f"dimension {n} is not prime")
    return PrimeDim(n)


@lru_cache(maxsize=None)
def _checked(n: int) -> int:
    return validate_dim(n).d


def as_int(dim) -> int:
    """Validate ``dim`` (int or PrimeDim) and return it as a plain int."""
    if isinstance(dim, PrimeDim):
        return dim.d
    return _checked(int(dim))


def residue(x: int, dim) -> int:
    """Euclidean remainder of ``x`` in [0, d-1]."""
    return int(x) % as_int(dim)


def inv2(dim) -> int:
    d = as_int(dim)
    return (d + 1) // 2


def mod_inv(a: int, dim) -> int:
    d = as_int(dim)
    a %= d
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {d}")
    return pow(a, -1, d)


def omega_pow(dim, k: int) -> complex:
    d = as_int(dim)
    return cmath.exp(2j * math.pi * (int(k) % d) / d)


@lru_cache(maxsize=None)
def _omega_table(d: int) -> np.ndarray:
    table = np.exp(2j * np.pi * np.arange(d) / d)
    table.setflags(write=False)
    return table


def omega_table(dim) -> np.ndarray:
    """Read-only array ``[omega**0, ..., omega**(d-1)]``; index with exponents reduced mod d."""
    return _omega_table(as_int(dim))
