"""Square-full numbers n = a^2 b^3 (b square-free) and their weighted sums.

The restricted family keeps only those with b <= B. Counts and the linear
weighted sum are computed exactly from closed forms per b, so they never
materialize the set; the complex-exponent sum enumerates it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

from .arith import factorize, iroot, squarefree_mask
from .errors import DomainError

MAX_LIMIT = 1 << 62


class SquarefullItem(NamedTuple):
    n: int
    a: int
    b: int


def _b_limit(b_cap) -> int | None:
    if b_cap is None:
        return None
    if b_cap < 1:
        raise DomainError(f"b_cap must be >= 1, got {b_cap}")
    return math.floor(b_cap)


@lru_cache(maxsize=32)
def _squarefree_upto(n: int) -> tuple[int, ...]:
    return tuple(int(b) for b in np.flatnonzero(squarefree_mask(n)))


def _b_values(hi: int, b_cap) -> tuple[int, ...]:
    """Square-free b with b^3 <= hi and b <= b_cap."""
    top = iroot(max(hi, 0), 3)
    cap = _b_limit(b_cap)
    if cap is not None:
        top = min(top, cap)
    if top < 1:
        return ()
    bs = _squarefree_upto(1 << max(top - 1, 0).bit_length())
    return bs[: np.searchsorted(bs, top, side="right")]


@dataclass(frozen=True, eq=False)
class SquarefullSet:
    """Ascending square-full numbers up to ``limit`` with their (a, b) parts."""

    limit: int
    b_cap: float | None
    n: np.ndarray
    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.n)

    def __iter__(self) -> Iterator[SquarefullItem]:
        for n, a, b in zip(self.n.tolist(), self.a.tolist(), self.b.tolist()):
            yield SquarefullItem(n, a, b)

    def __contains__(self, value) -> bool:
        i = np.searchsorted(self.n, value)
        return bool(i < len(self.n) and self.n[i] == value)

    @property
    def items(self) -> list[SquarefullItem]:
        return list(self)

    def upto(self, x) -> np.ndarray:
        """Members ``<= x`` (a view)."""
        return self.n[: np.searchsorted(self.n, math.floor(x), side="right")]

    def restrict(self, b_cap) -> "SquarefullSet":
        cap = _b_limit(b_cap)
        if cap is None:
            return self
        keep = self.b <= cap
        return SquarefullSet(self.limit, b_cap, self.n[keep], self.a[keep], self.b[keep])


def enumerate_squarefull(limit: int, b_cap=None, *, include_one: bool = True) -> SquarefullSet:
    """All n = a^2 b^3 <= limit with b square-free (and b <= b_cap if given).

    Loops over square-free b then over a, and sorts. The (a, b) pair is unique
    for each n, so no duplicates arise.
    """
    limit = int(limit)
    if limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    if limit > MAX_LIMIT:
        raise DomainError(f"limit must be <= 2**62, got {limit}")
    ns, as_, bs = [], [], []
    for b in _b_values(limit, b_cap):
        b3 = b * b * b
        top = math.isqrt(limit // b3)
        a = np.arange(1, top + 1, dtype=np.int64)
        ns.append(a * a * b3)
        as_.append(a)
        bs.append(np.full(top, b, dtype=np.int64))
    n = np.concatenate(ns)
    a = np.concatenate(as_)
    b = np.concatenate(bs)
    order = np.argsort(n, kind="stable")
    n, a, b = n[order], a[order], b[order]
    if not include_one:
        n, a, b = n[1:], a[1:], b[1:]
    for arr in (n, a, b):
        arr.flags.writeable = False
    return SquarefullSet(limit, b_cap, n, a, b)


def decompose(n: int) -> SquarefullItem | None:
    """Return the unique (a, b) with n = a^2 b^3 and b square-free, or None.

    >>> decompose(72)
    SquarefullItem(n=72, a=3, b=2)
    >>> decompose(50) is None
    True
    """
    factors = factorize(n)
    if any(e == 1 for e in factors.values()):
        return None
    b = math.prod(p for p, e in factors.items() if e % 2)
    a = math.isqrt(n // b**3)
    return SquarefullItem(n, a, b)


def is_squarefull(n: int) -> bool:
    return decompose(n) is not None


def count_upto(x, b_cap=None, *, include_one: bool = True) -> int:
    """Exact number of members <= x."""
    hi = math.floor(x)
    if hi < 1:
        return 0
    total = sum(math.isqrt(hi // b**3) for b in _b_values(hi, b_cap))
    return total if include_one else total - 1


def count_in_interval(X, H, b_cap=None, *, include_one: bool = True) -> int:
    """Exact number of members f with X < f <= X + H.

    Per square-free b the count of a is isqrt(hi/b^3) - isqrt(lo/b^3), so the
    cost is O((X+H)^(1/3)) regardless of H.
    """
    if H < 0:
        raise DomainError(f"H must be >= 0, got {H}")
    return count_upto(X + H, b_cap, include_one=include_one) - count_upto(X, b_cap, include_one=include_one)


def _moments(cutoff: int, b_cap) -> tuple[int, int, int]:
    """(count, sum of f, largest f) over members f <= cutoff."""
    count = total = largest = 0
    for b in _b_values(cutoff, b_cap):
        b3 = b**3
        top = math.isqrt(cutoff // b3)
        count += top
        total += b3 * top * (top + 1) * (2 * top + 1) // 6
        largest = max(largest, top * top * b3)
    return count, total, largest


def _as_exact(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def _out(value: Fraction):
    return int(value) if value.denominator == 1 else float(value)


def s_weighted(Q, X_cutoff, b_cap=None):
    """Sum of (Q - f) over members f <= X_cutoff.

    Computed exactly: Q * count - sum(f). Integral results come back as int,
    others as float.
    """
    if X_cutoff < 1:
        raise DomainError(f"X_cutoff must be >= 1, got {X_cutoff}")
    count, total, largest = _moments(math.floor(X_cutoff), b_cap)
    q = _as_exact(Q)
    if q < largest:
        raise DomainError(f"Q={Q} is below the largest summed element {largest}")
    return _out(q * count - total)


def _integer_power(alpha) -> int | None:
    alpha = complex(alpha)
    if alpha.imag == 0 and alpha.real >= 1 and alpha.real == int(alpha.real):
        return int(alpha.real)
    return None


def s_complex(Q, X_cutoff, b_cap, alpha) -> complex:
    """(1/alpha) * sum over members f <= X_cutoff of (Q - f)**alpha.

    Positive integer exponents are summed exactly. Other exponents use
    exp(alpha * log(Q - f)) with compensated summation of the real and
    imaginary parts; a zero base contributes 0.
    """
    if alpha == 0:
        raise DomainError("alpha must be nonzero")
    if X_cutoff < 1:
        raise DomainError(f"X_cutoff must be >= 1, got {X_cutoff}")
    k = _integer_power(alpha)
    if k == 1:
        return complex(s_weighted(Q, X_cutoff, b_cap))
    members = enumerate_squarefull(math.floor(X_cutoff), b_cap).n
    if Q < int(members[-1]):
        raise DomainError(f"Q={Q} is below the largest summed element {int(members[-1])}")
    if k is not None:
        q = _as_exact(Q)
        return complex(sum((q - f) ** k for f in members.tolist()) / k)
    alpha = complex(alpha)
    base = float(Q) - members.astype(np.float64)
    base = base[base > 0]
    terms = np.exp(alpha * np.log(base))
    acc = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return acc / alpha

