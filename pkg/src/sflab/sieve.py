"""Segmented prime sieve and Chebyshev-function tables.

A :class:`SieveTable` holds every prime up to ``limit`` together with a
compensated prefix sum of ``log p``, so that theta(x), psi(x) and window sums
theta(b) - theta(a) cost two binary searches each.
"""

from __future__ import annotations

import logging
import math
import os
import struct
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .arith import iroot
from .errors import DomainError, OutOfRangeError

log = logging.getLogger(__name__)

SEGMENT_SIZE = 1 << 20
MAX_LIMIT = 1 << 50
CACHE_MAGIC = b"SFL1"
CACHE_ENV = "SFLAB_CACHE"


def _small_sieve(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def segmented_primes(limit: int, segment_size: int = SEGMENT_SIZE) -> np.ndarray:
    """All primes ``<= limit`` as an int64 array, sieving one segment at a time."""
    base = _small_sieve(math.isqrt(limit))
    chunks = []
    for lo in range(0, limit + 1, segment_size):
        hi = min(lo + segment_size, limit + 1)
        mask = np.ones(hi - lo, dtype=bool)
        if lo < 2:
            mask[: 2 - lo] = False
        for p in base:
            p = int(p)
            pp = p * p
            if pp >= hi:
                break
            start = max(pp, -(-lo // p) * p)
            mask[start - lo :: p] = False
        chunks.append(np.flatnonzero(mask).astype(np.int64) + lo)
    return np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)


def compensated_cumsum(values: np.ndarray, bound: float) -> np.ndarray:
    """Prefix sums ``out[i] = sum(values[:i])`` with one rounding per entry.

    Each value is split into a head on a grid of spacing 2**-k and a tail
    below that spacing. ``bound`` must exceed every partial sum so heads
    accumulate exactly in float64; the tails are tiny, so their own rounding
    error is negligible. Results do not depend on the platform's cumsum order.
    """
    values = np.asarray(values, dtype=np.float64)
    k = 52 - max(1, math.ceil(math.log2(bound + 1.0)))
    scale = math.ldexp(1.0, k)
    heads = np.floor(values * scale) / scale
    tails = values - heads
    out = np.zeros(len(values) + 1, dtype=np.float64)
    out[1:] = np.cumsum(heads) + np.cumsum(tails)
    return out


def _theta_bound(limit: int) -> float:
    # theta(x) < 1.01624 x (Rosser-Schoenfeld)
    return 1.02 * limit + 64.0


@dataclass(frozen=True, eq=False)
class SieveTable:
    """Primes up to ``limit`` with log values and prefix sums.

    ``log_prefix[i]`` is the sum of the logs of the first ``i`` primes, so
    ``log_prefix[-1]`` is theta(limit). Prime powers p^k with k >= 2 are kept
    in a second sorted table so psi(x) needs no root extraction.
    """

    limit: int
    primes: np.ndarray
    logs: np.ndarray = field(repr=False)
    log_prefix: np.ndarray = field(repr=False)
    power_values: np.ndarray = field(repr=False)
    power_logs: np.ndarray = field(repr=False)
    power_prefix: np.ndarray = field(repr=False)

    @classmethod
    def from_primes(cls, limit: int, primes: np.ndarray) -> "SieveTable":
        primes = np.ascontiguousarray(primes, dtype=np.int64)
        logs = np.log(primes.astype(np.float64))
        prefix = compensated_cumsum(logs, _theta_bound(limit))

        pv, pl = [], []
        for p, lp in zip(primes[: np.searchsorted(primes, math.isqrt(limit), "right")].tolist(), logs.tolist()):
            q = p * p
            while q <= limit:
                pv.append(q)
                pl.append(lp)
                q *= p
        order = np.argsort(np.asarray(pv, dtype=np.int64), kind="stable")
        power_values = np.asarray(pv, dtype=np.int64)[order]
        power_logs = np.asarray(pl, dtype=np.float64)[order]
        power_prefix = compensated_cumsum(power_logs, 2.0 * math.sqrt(limit) + 64.0)
        for arr in (primes, logs, prefix, power_values, power_logs, power_prefix):
            arr.flags.writeable = False
        return cls(limit, primes, logs, prefix, power_values, power_logs, power_prefix)

    def __len__(self) -> int:
        return len(self.primes)

    # -- scalar queries -------------------------------------------------

    def _floor(self, x) -> int:
        n = math.floor(x)
        if n > self.limit:
            raise OutOfRangeError(f"x={x} exceeds sieve limit {self.limit}")
        return n

    def prime_count(self, x) -> int:
        n = self._floor(x)
        if n < 2:
            return 0
        return int(np.searchsorted(self.primes, n, side="right"))

    def theta(self, x) -> float:
        """Sum of log p over primes p <= x."""
        n = self._floor(x)
        if n < 2:
            return 0.0
        return float(self.log_prefix[np.searchsorted(self.primes, n, side="right")])

    def psi(self, x) -> float:
        """Sum of Lambda(m) over m <= x, i.e. theta(x) plus the prime-power part."""
        n = self._floor(x)
        if n < 2:
            return 0.0
        idx = np.searchsorted(self.power_values, n, side="right")
        return self.theta(n) + float(self.power_prefix[idx])

    def psi_by_roots(self, x) -> float:
        """psi(x) as sum_k theta(x^(1/k)); independent of the power table."""
        n = self._floor(x)
        if n < 2:
            return 0.0
        return math.fsum(self.theta(iroot(n, k)) for k in range(1, n.bit_length() + 1))

    def window_theta(self, a, b) -> float:
        """theta(b) - theta(a): the sum of log p over a < p <= b."""
        if a > b:
            raise DomainError(f"window_theta needs a <= b, got ({a}, {b})")
        self._floor(b)
        return self.theta(b) - self.theta(a)

    def window_psi(self, a, b) -> float:
        if a > b:
            raise DomainError(f"window_psi needs a <= b, got ({a}, {b})")
        self._floor(b)
        return self.psi(b) - self.psi(a)

    def is_prime(self, n: int) -> bool:
        if n < 2:
            return False
        self._floor(n)
        i = np.searchsorted(self.primes, n)
        return i < len(self.primes) and int(self.primes[i]) == n

    # -- vectorized queries ---------------------------------------------

    def _check_many(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=np.int64)
        if values.size and int(values.max()) > self.limit:
            raise OutOfRangeError(f"value {int(values.max())} exceeds sieve limit {self.limit}")
        return values

    def theta_many(self, values) -> np.ndarray:
        """theta at each integer in ``values`` (entries below 2 give 0)."""
        values = self._check_many(values)
        return self.log_prefix[np.searchsorted(self.primes, values, side="right")]

    def psi_many(self, values) -> np.ndarray:
        values = self._check_many(values)
        return self.theta_many(values) + self.power_prefix[np.searchsorted(self.power_values, values, side="right")]

    def prime_index(self, values) -> tuple[np.ndarray, np.ndarray]:
        """For each value return (is_prime mask, index into ``primes``)."""
        values = self._check_many(values)
        idx = np.searchsorted(self.primes, values)
        safe = np.minimum(idx, max(len(self.primes) - 1, 0))
        mask = (idx < len(self.primes)) & (self.primes[safe] == values) if len(self.primes) else np.zeros(values.shape, bool)
        return mask, safe


# -- cache -------------------------------------------------------------------


def cache_path(cache_dir, limit: int) -> Path:
    return Path(cache_dir) / f"primes_{limit}.sfl"


def write_cache(table: SieveTable, cache_dir) -> Path | None:
    """Persist the prime list: magic ``SFL1``, uint64 limit, uint64 primes (LE)."""
    path = cache_path(cache_dir, table.limit)
    try:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "wb") as fh:
            fh.write(CACHE_MAGIC)
            fh.write(struct.pack("<Q", table.limit))
            fh.write(table.primes.astype("<u8").tobytes())
        os.replace(tmp, path)
    except OSError as exc:
        warnings.warn(f"could not write sieve cache {path}: {exc}", RuntimeWarning, stacklevel=2)
        return None
    return path


def read_cache(cache_dir, limit: int) -> SieveTable | None:
    path = cache_path(cache_dir, limit)
    if not path.is_file():
        return None
    data = path.read_bytes()
    if len(data) < 12 or data[:4] != CACHE_MAGIC or (len(data) - 12) % 8:
        warnings.warn(f"ignoring malformed sieve cache {path}", RuntimeWarning, stacklevel=2)
        return None
    (stored,) = struct.unpack("<Q", data[4:12])
    if stored != limit:
        warnings.warn(f"ignoring sieve cache {path}: header limit {stored}", RuntimeWarning, stacklevel=2)
        return None
    primes = np.frombuffer(data, dtype="<u8", offset=12).astype(np.int64)
    return SieveTable.from_primes(limit, primes)


def build_sieve(limit: int, cache_dir=None) -> SieveTable:
    """Sieve all primes up to ``limit`` (inclusive).

    ``cache_dir`` defaults to the ``SFLAB_CACHE`` environment variable; when
    set, tables are reloaded from and saved to it.
    """
    if isinstance(limit, bool) or int(limit) != limit:
        raise DomainError(f"limit must be an integer, got {limit!r}")
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    if limit > MAX_LIMIT:
        raise DomainError(f"sieve limit must be <= 2**50, got {limit}")
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV) or None
    if cache_dir is not None:
        cached = read_cache(cache_dir, limit)
        if cached is not None:
            log.debug("loaded sieve table for %d from cache", limit)
            return cached
    table = SieveTable.from_primes(limit, segmented_primes(limit))
    if cache_dir is not None:
        write_cache(table, cache_dir)
    return table
