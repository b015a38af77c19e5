"""Pointwise arithmetic functions: factorization, Möbius, von Mangoldt."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError


def _check_natural(n: int, name: str = "n") -> int:
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"{name} must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise DomainError(f"{name} must be >= 1, got {n}")
    return n


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n`` by trial division, as ``{p: exponent}``.

    Deterministic; intended for the desk range (n up to ~10^14).
    """
    n = _check_natural(n)
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                factors[p] = factors.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == {n: 1}


def mobius(n: int) -> int:
    """Möbius function: (-1)^k on square-free n with k prime factors, else 0.

    >>> mobius(30)
    -1
    """
    factors = factorize(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def von_mangoldt(n: int) -> float:
    """log p if n is a power of the prime p, otherwise 0."""
    factors = factorize(n)
    if len(factors) == 1:
        (p,) = factors
        return math.log(p)
    return 0.0


def squarefree_mask(n: int) -> np.ndarray:
    """Boolean array ``m`` of length n+1 with ``m[k]`` true iff k is square-free.

    ``m[0]`` is False. Multiples of p^2 are struck for every prime p <= sqrt(n).
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    mask = np.ones(n + 1, dtype=bool)
    mask[0] = False
    r = math.isqrt(n)
    if r >= 2:
        small = np.ones(r + 1, dtype=bool)
        small[:2] = False
        for p in range(2, math.isqrt(r) + 1):
            if small[p]:
                small[p * p :: p] = False
        for p in np.flatnonzero(small):
            mask[int(p) * int(p) :: int(p) * int(p)] = False
    return mask


def is_squarefree(n: int) -> bool:
    return mobius(n) != 0


def iroot(n: int, k: int) -> int:
    """Largest integer r with r**k <= n, for n >= 0 and k >= 1."""
    if n < 0:
        raise DomainError("iroot needs n >= 0")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r
