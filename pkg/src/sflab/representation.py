"""Representations N = p + f with p prime and f square-full.

``r_of_n`` and ``r_tilde`` evaluate the weighted counts pointwise. Window
sums over X < N <= X + H swap the order of summation: for each square-full
f the primes land in (X - f, X + H - f], so the whole window costs one pair
of prefix lookups per f.
"""

from __future__ import annotations

import enum
import logging
import math
import time
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import iroot
from .errors import DomainError, OutOfRangeError
from .exponents import THRESHOLD
from .sieve import SieveTable, build_sieve
from .squarefull import SquarefullSet, enumerate_squarefull
from .zeta import singular_constant

log = logging.getLogger(__name__)

CSV_COLUMNS = ("X", "H", "B", "sum_logp", "sum_lambda", "main_term", "rel_dev", "method", "runtime_ms")


class ContractWarning(UserWarning):
    """A window violates 4 <= H <= X; the computation still runs."""


class Method(str, enum.Enum):
    PAIR = "pair_enumeration"
    PREFIX = "prefix_sum"

    @classmethod
    def parse(cls, value) -> "Method":
        if isinstance(value, cls):
            return value
        aliases = {"pair": cls.PAIR, "prefix": cls.PREFIX}
        try:
            return aliases.get(value) or cls(value)
        except ValueError:
            raise DomainError(f"unknown method {value!r}") from None


@dataclass(frozen=True)
class Window:
    """The short interval (X, X + H]."""

    X: int
    H: int

    def __post_init__(self):
        if int(self.X) != self.X or int(self.H) != self.H:
            raise DomainError(f"window needs integer X, H; got ({self.X}, {self.H})")
        if self.X < 2 or self.H < 0:
            raise DomainError(f"window needs X >= 2 and H >= 0; got ({self.X}, {self.H})")

    @property
    def delta(self) -> float:
        """Delta with X/H = X^Delta."""
        return math.log(self.X / self.H) / math.log(self.X)

    @property
    def h_exponent(self) -> float:
        return math.log(self.H) / math.log(self.X)

    @property
    def contract_ok(self) -> bool:
        return 4 <= self.H <= self.X

    @property
    def in_theorem_range(self) -> bool:
        """True when THRESHOLD < log H / log X < 1."""
        return self.H >= 1 and THRESHOLD < self.h_exponent < 1.0


@dataclass(frozen=True)
class WindowReport:
    window: Window
    B: float | None
    sum_logp: float
    sum_lambda: float
    main_term: float
    rel_dev: float
    method: Method
    runtime_ms: float | None = None
    n_squarefull: int = 0
    notes: tuple[str, ...] = field(default=())
    error: str | None = None

    @property
    def lambda_minus_logp(self) -> float:
        return self.sum_lambda - self.sum_logp

    def as_row(self) -> dict:
        return {
            "X": self.window.X,
            "H": self.window.H,
            "B": self.B,
            "sum_logp": self.sum_logp,
            "sum_lambda": self.sum_lambda,
            "main_term": self.main_term,
            "rel_dev": self.rel_dev,
            "method": self.method.value,
            "runtime_ms": self.runtime_ms,
        }


# -- pointwise ---------------------------------------------------------------


@lru_cache(maxsize=8)
def _squarefull_pool(limit: int) -> SquarefullSet:
    return enumerate_squarefull(limit)


def _pool_for(n: int) -> SquarefullSet:
    return _squarefull_pool(1 << max(n, 1).bit_length())


def _check_table(table: SieveTable, top: int) -> None:
    if table.limit < top:
        raise OutOfRangeError(f"sieve limit {table.limit} is below required {top}")


def _r(N: int, b_cap, table: SieveTable) -> float:
    if int(N) != N or N < 2:
        raise DomainError(f"N must be an integer >= 2, got {N}")
    N = int(N)
    _check_table(table, N)
    pool = _pool_for(N)
    k = np.searchsorted(pool.n, N - 2, side="right")
    fs = pool.n[:k]
    if b_cap is not None:
        if b_cap < 1:
            raise DomainError(f"B must be >= 1, got {b_cap}")
        fs = fs[pool.b[:k] <= math.floor(b_cap)]
    mask, idx = table.prime_index(N - fs)
    return math.fsum(table.logs[idx[mask]].tolist())


def r_of_n(N: int, table: SieveTable) -> float:
    """Sum of log p over N = p + f, p prime, f square-full."""
    return _r(N, None, table)


def r_tilde(N: int, B, table: SieveTable) -> float:
    """As :func:`r_of_n` but only f = a^2 b^3 with square-free b <= B.

    By uniqueness of (a, b) this is R(N) cut down to small b-parts, and it
    equals R(N) exactly once B >= N^(1/3).
    """
    if B is None:
        raise DomainError("r_tilde needs a numeric B")
    return _r(N, B, table)


def r_values(n_max: int, table: SieveTable, b_cap=None) -> np.ndarray:
    """Array ``r`` with ``r[N]`` = R(N) (or the B-restricted value) for N <= n_max."""
    _check_table(table, n_max)
    out = np.zeros(n_max + 1, dtype=np.float64)
    sq = enumerate_squarefull(max(n_max - 2, 1), b_cap)
    kp = np.searchsorted(table.primes, n_max, side="right")
    primes, logs = table.primes[:kp], table.logs[:kp]
    for f in sq.n.tolist():
        j = np.searchsorted(primes, n_max - f, side="right")
        out[primes[:j] + f] += logs[:j]
    return out


# -- windows -----------------------------------------------------------------


def _window_terms(window: Window, b_cap) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    X, H = window.X, window.H
    top = X + H - 2
    if H == 0 or top < 1:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    fs = enumerate_squarefull(top, b_cap).n
    hi = X + H - fs
    lo = np.maximum(X - fs, 0)
    return fs, lo, hi


def _sum_prefix(table: SieveTable, lo: np.ndarray, hi: np.ndarray) -> tuple[float, float]:
    d_theta = table.theta_many(hi) - table.theta_many(lo)
    d_psi = table.psi_many(hi) - table.psi_many(lo)
    return math.fsum(d_theta.tolist()), math.fsum(d_psi.tolist())


def _sum_pairs(table: SieveTable, lo: np.ndarray, hi: np.ndarray) -> tuple[float, float]:
    p0 = np.searchsorted(table.primes, lo, side="right").tolist()
    p1 = np.searchsorted(table.primes, hi, side="right").tolist()
    q0 = np.searchsorted(table.power_values, lo, side="right").tolist()
    q1 = np.searchsorted(table.power_values, hi, side="right").tolist()
    logs, plogs = table.logs, table.power_logs
    theta_parts, power_parts = [], []
    for a, b, c, d in zip(p0, p1, q0, q1):
        theta_parts.append(math.fsum(logs[a:b].tolist()))
        if d > c:
            power_parts.append(math.fsum(plogs[c:d].tolist()))
    s_theta = math.fsum(theta_parts)
    return s_theta, math.fsum([s_theta, *power_parts])


def window_sum(window: Window, B=None, table: SieveTable | None = None, method=Method.PREFIX, *, timing: bool = True) -> WindowReport:
    """Sum of R(N) (or its B-restricted version) over X < N <= X + H.

    Both weights are returned: ``sum_logp`` uses log p as R does, and
    ``sum_lambda`` counts prime powers with weight Lambda(m). The two
    methods differ only in how each per-f block of primes is summed:
    ``prefix_sum`` differences the cached prefix array, ``pair_enumeration``
    adds the individual logs of the block.
    """
    method = Method.parse(method)
    X, H = window.X, window.H
    notes = []
    if not window.contract_ok:
        msg = f"contract: H={H} outside [4, X={X}]"
        warnings.warn(msg, ContractWarning, stacklevel=2)
        notes.append(msg)
    if table is None:
        table = build_sieve(max(X + H, 2))
    _check_table(table, X + H)
    if B is not None and B < 1:
        raise DomainError(f"B must be >= 1, got {B}")

    start = time.perf_counter()
    fs, lo, hi = _window_terms(window, B)
    if method is Method.PREFIX:
        s_logp, s_lambda = _sum_prefix(table, lo, hi)
    else:
        s_logp, s_lambda = _sum_pairs(table, lo, hi)
    elapsed = (time.perf_counter() - start) * 1e3

    main = singular_constant() * H * math.sqrt(X)
    rel = s_logp / main - 1.0 if main else math.nan
    if window.in_theorem_range:
        notes.append("inside theorem range")
    return WindowReport(
        window=window,
        B=B,
        sum_logp=s_logp,
        sum_lambda=s_lambda,
        main_term=main,
        rel_dev=rel,
        method=method,
        runtime_ms=elapsed if timing else None,
        n_squarefull=len(fs),
        notes=tuple(notes),
    )


def window_sum_bruteforce(window: Window, table: SieveTable, b_cap=None) -> float:
    """Sum of R(N) by evaluating every N in the window; slow, for checking."""
    return math.fsum(_r(N, b_cap, table) for N in range(window.X + 1, window.X + window.H + 1) if N >= 2)


# -- sweeps ------------------------------------------------------------------


def h_for(X: int, h_exponent: float) -> int:
    """ceil(X ** h_exponent), snapping values within rounding of an integer."""
    v = X**h_exponent
    r = round(v)
    if abs(v - r) <= 1e-9 * max(v, 1.0):
        return int(r)
    return math.ceil(v)


def b_from_rule(X: int, H: int, a: float | None):
    """B = (log X)^(4A), capped where the restriction becomes vacuous."""
    if a is None:
        return None
    return min(math.log(X) ** (4.0 * a), float(iroot(X + H, 3)))


def sweep(
    x_list,
    h_exponent: float,
    *,
    a: float | None = None,
    budget: int = 10**8,
    method=Method.PREFIX,
    table: SieveTable | None = None,
    timing: bool = True,
) -> list[WindowReport]:
    """One :class:`WindowReport` per X with H = ceil(X^h_exponent).

    Rows whose window exceeds ``budget`` carry an ``error`` and NaN values;
    the remaining rows are still computed. A single sieve covers all rows.
    """
    if not 0.0 < h_exponent < 1.0:
        raise DomainError(f"h_exponent must lie in (0, 1), got {h_exponent}")
    method = Method.parse(method)
    plan = []
    for X in x_list:
        X = int(X)
        H = h_for(X, h_exponent)
        plan.append((X, H, b_from_rule(X, H, a)))
    need = max((X + H for X, H, _ in plan if X + H <= budget), default=2)
    if table is None or table.limit < need:
        table = build_sieve(max(need, 2))
    rows = []
    for X, H, B in plan:
        w = Window(X, H)
        if X + H > budget:
            nan = math.nan
            rows.append(WindowReport(w, B, nan, nan, nan, nan, method, None, error=f"E_RANGE: X+H={X + H} exceeds budget {budget}"))
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ContractWarning)
            rows.append(window_sum(w, B, table, method, timing=timing))
    return rows
