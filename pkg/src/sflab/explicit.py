"""Truncated explicit formula for psi and the zero sums of the window analysis.

Zeros are read from ASCII tables of ordinates gamma > 0 and are taken on the
critical line (beta = 1/2). Each sum over |gamma| <= T pairs rho with its
conjugate, so it is twice the real part of the sum over positive ordinates.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.special import loggamma

from .errors import DomainError, OutOfRangeError, ZeroFileError
from .sieve import SieveTable, build_sieve
from .squarefull import count_upto, s_complex

FIRST_ZERO = 14.134725141734694
FIRST_ZERO_GUARD = 1e-4
BUNDLED_ZEROS = "zeta_zeros_1000.txt"
DIAG_GRID_POINTS = 16


@dataclass(frozen=True, eq=False)
class ZeroTable:
    gammas: np.ndarray
    source_digest: str = ""

    @property
    def count(self) -> int:
        return len(self.gammas)

    @property
    def max_gamma(self) -> float:
        return float(self.gammas[-1]) if len(self.gammas) else 0.0

    def upto(self, T: float) -> np.ndarray:
        """Ordinates 0 < gamma <= T, ascending."""
        if T < 0:
            raise DomainError(f"T must be >= 0, got {T}")
        if T > self.max_gamma and T != 0:
            raise OutOfRangeError(f"T={T} exceeds zero-table coverage; max available gamma is {self.max_gamma}")
        return self.gammas[: np.searchsorted(self.gammas, T, side="right")]


def parse_zeros(text: str, limit: int | None = None, digest: str = "") -> ZeroTable:
    values: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            g = float(line)
        except ValueError:
            raise ZeroFileError(f"not a number: {line!r}", lineno) from None
        if not math.isfinite(g) or g <= 0:
            raise ZeroFileError(f"ordinate must be positive and finite, got {line!r}", lineno)
        if values and g <= values[-1]:
            raise ZeroFileError(f"ordinates must be strictly ascending ({g} after {values[-1]})", lineno)
        if not values and abs(g - FIRST_ZERO) > FIRST_ZERO_GUARD:
            raise ZeroFileError(f"first ordinate {g} is not the first zeta zero {FIRST_ZERO:.6f}", lineno)
        values.append(g)
        if limit is not None and len(values) >= limit:
            break
    gammas = np.asarray(values, dtype=np.float64)
    gammas.flags.writeable = False
    return ZeroTable(gammas, digest)


def load_zeros(path, limit: int | None = None) -> ZeroTable:
    """Read a zero table: one ordinate per line, ascending, '#' comments allowed."""
    data = Path(path).read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as exc:
        raise ZeroFileError(f"file is not ASCII: {exc}") from None
    return parse_zeros(text, limit, digest)


def bundled_zeros(limit: int | None = None) -> ZeroTable:
    """The first 1000 zeros shipped with the package."""
    ref = resources.files("sflab") / "data" / BUNDLED_ZEROS
    with resources.as_file(ref) as path:
        return load_zeros(path, limit)


def _paired_sum(terms: np.ndarray) -> float:
    """2 * Re(sum(terms)), accumulated with compensation in ascending-gamma order."""
    return 2.0 * math.fsum(terms.real.tolist())


def psi_truncated(x: float, T: float, zeros: ZeroTable) -> float:
    """x - sum over |gamma| <= T of x^rho / rho, with rho = 1/2 + i gamma.

    Conjugate zeros are paired, so the value is real by construction. No
    correction for the truncation remainder is added.
    """
    if x < 2:
        raise DomainError(f"x must be >= 2, got {x}")
    gammas = zeros.upto(T)
    if not len(gammas):
        return float(x)
    rho = 0.5 + 1j * gammas
    terms = np.exp(rho * math.log(x)) / rho
    return float(x) - _paired_sum(terms)


def psi_error_rms(center: float, T: float, zeros: ZeroTable, table: SieveTable, points: int = 32) -> float:
    """RMS of psi_truncated - psi over ``points`` half-integers around ``center``."""
    half = points // 2
    xs = [math.floor(center) + k + 0.5 for k in range(-half, points - half)]
    errs = [psi_truncated(x, T, zeros) - table.psi(x) for x in xs]
    return math.sqrt(math.fsum(e * e for e in errs) / len(errs))


def s_rho_diff(X: int, H: int, B, rho_gamma: float | None = None, *, alpha: complex | None = None) -> complex:
    """S_rho(X + H) - S_rho(X) by direct summation over square-full f <= X.

    rho = 1/2 + i*rho_gamma unless ``alpha`` overrides it (alpha = 1 reduces
    to H times the count of members up to X).
    """
    if H < 0:
        raise DomainError(f"H must be >= 0, got {H}")
    if alpha is None:
        if rho_gamma is None:
            raise DomainError("give rho_gamma or alpha")
        alpha = complex(0.5, rho_gamma)
    if H == 0:
        return 0j
    return s_complex(X + H, X, B, alpha) - s_complex(X, X, B, alpha)


def gamma_ratio(rho: np.ndarray) -> np.ndarray:
    """Gamma(rho) Gamma(1/2) / Gamma(rho + 3/2) through log-Gamma."""
    rho = np.asarray(rho, dtype=np.complex128)
    return np.exp(loggamma(rho) + loggamma(0.5) - loggamma(rho + 1.5))


@dataclass(frozen=True)
class TruncationDiag:
    X: int
    H: int
    B: float
    T: float
    r1: float
    r2: float
    r3: float
    n_zeros: int
    main_count: int
    psi_err_sample: tuple[tuple[float, float], ...] = field(default=())

    def as_row(self) -> dict:
        return {k: getattr(self, k) for k in ("X", "H", "B", "T", "r1", "r2", "r3", "n_zeros", "main_count")}


def default_T(X: float, H: float, eps1: float) -> float:
    """T = X^(1 + eps1) / H."""
    return X ** (1.0 + eps1) / H


def truncation_diag(X: int, H: int, B: float, T: float, zeros: ZeroTable, table: SieveTable | None = None) -> TruncationDiag:
    """Magnitudes of the three zero sums for the window (X, X + H].

    r1 = |sum Gamma(rho)Gamma(1/2)/Gamma(rho+3/2) ((X+H)^(rho+1/2) - X^(rho+1/2))|,
    r2 = |sum ((X+H)^rho - X^rho) / (2 rho) * B|, r3 = sum H^beta |gamma|^(beta-1/2),
    each over |gamma| <= T. ``psi_err_sample`` holds psi_truncated - psi on a
    16-point grid across the window.
    """
    if not (X >= 2 and H >= 0):
        raise DomainError(f"need X >= 2 and H >= 0, got X={X}, H={H}")
    gammas = zeros.upto(T)
    beta = 0.5
    rho = beta + 1j * gammas
    lx, lxh = math.log(X), math.log(X + H)
    if len(gammas):
        t1 = gamma_ratio(rho) * (np.exp((rho + 0.5) * lxh) - np.exp((rho + 0.5) * lx))
        t2 = (np.exp(rho * lxh) - np.exp(rho * lx)) / (2.0 * rho) * float(B)
        r1 = abs(_paired_sum(t1))
        r2 = abs(_paired_sum(t2))
        r3 = 2.0 * math.fsum((H**beta * gammas ** (beta - 0.5)).tolist())
    else:
        r1 = r2 = r3 = 0.0
    if table is None:
        table = build_sieve(max(X + H, 2))
    grid = np.linspace(X, X + H, DIAG_GRID_POINTS).tolist()
    sample = tuple((x, psi_truncated(x, T, zeros) - table.psi(x)) for x in grid)
    return TruncationDiag(X, H, float(B), float(T), r1, r2, r3, len(gammas), count_upto(X, B), sample)
