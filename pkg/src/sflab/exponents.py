"""Zero-density exponent calculus behind the admissible range of H.

phi is the piecewise exponent bounding sums of Y^beta over zeros with
|gamma| ~ Y^lambda. Breakpoints are exact rationals so branch selection is
decided in rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import DomainError

PHI_BREAK_1 = Fraction(25, 48)
PHI_BREAK_2 = Fraction(3, 4)
C_ALPHA_BREAK = Fraction(3, 4)

SQRT15 = math.sqrt(15.0)
LAMBDA1 = 1.0
LAMBDA2 = (17.0 + 4.0 * SQRT15) / 49.0
THRESHOLD = (32.0 - 4.0 * SQRT15) / 49.0


def _exact(x) -> Fraction:
    try:
        return x if isinstance(x, Fraction) else Fraction(x)
    except (TypeError, ValueError, OverflowError):
        raise DomainError(f"not a finite real number: {x!r}") from None


def _phi_branch(lam: Fraction) -> int:
    if lam <= PHI_BREAK_1:
        return 0
    if lam <= PHI_BREAK_2:
        return 1
    return 2


def _check_unit(lam, name="lambda") -> Fraction:
    q = _exact(lam)
    if not 0 <= q <= 1:
        raise DomainError(f"{name} must lie in [0, 1], got {lam}")
    return q


def phi(lam: float) -> float:
    """Piecewise exponent: 3/5 l + 3/4, then 3l + 2(1 - sqrt(3l)), then l + 1/2."""
    branch = _phi_branch(_check_unit(lam))
    lam = float(lam)
    if branch == 0:
        return 0.6 * lam + 0.75
    if branch == 1:
        return 3.0 * lam + 2.0 * (1.0 - math.sqrt(3.0 * lam))
    return lam + 0.5


def _rational_sqrt(q: Fraction) -> Fraction | None:
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def phi_branches_exact(lam: Fraction) -> tuple[Fraction | None, Fraction | None, Fraction]:
    """All three branch formulas at ``lam`` in exact arithmetic.

    The middle branch is None when sqrt(3 lam) is irrational.
    """
    lam = _exact(lam)
    root = _rational_sqrt(3 * lam)
    middle = None if root is None else 3 * lam + 2 * (1 - root)
    return Fraction(3, 5) * lam + Fraction(3, 4), middle, lam + Fraction(1, 2)


def phi_derivative(lam: float) -> float:
    """One-sided (right) derivative of phi; in [3/5, 1] on [0, 1]."""
    branch = _phi_branch(_check_unit(lam))
    if branch == 0:
        return 0.6
    if branch == 1:
        return 3.0 - 3.0 / math.sqrt(3.0 * float(lam))
    return 1.0


def c_alpha(alpha: float) -> float:
    """Ingham-Huxley density exponent c(alpha) on [1/2, 1]."""
    q = _exact(alpha)
    if not Fraction(1, 2) <= q <= 1:
        raise DomainError(f"alpha must lie in [1/2, 1], got {alpha}")
    a = float(alpha)
    if q >= C_ALPHA_BREAK:
        return 3.0 * (1.0 - a) / (3.0 * a - 1.0)
    return 3.0 * (1.0 - a) / (2.0 - a)


def c_alpha_branches_exact(alpha: Fraction) -> tuple[Fraction, Fraction]:
    a = _exact(alpha)
    return 3 * (1 - a) / (3 * a - 1), 3 * (1 - a) / (2 - a)


def _bisect_increasing(g, lo: float, hi: float, tol: float) -> float:
    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if glo > 0 or ghi < 0:
        raise DomainError("root is not bracketed")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        gm = g(mid)
        if gm == 0.0:
            return mid
        if gm < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def cond1(lam: float) -> float:
    return phi(lam) - 0.5 * float(lam)


def cond2(lam: float) -> float:
    return phi(lam) + 0.5 * float(lam)


def solve_lambda_roots(tol: float = 1e-14) -> tuple[float, float]:
    """Roots of phi(l) - l/2 = 1 and phi(l) + l/2 = 3/2 on [0, 1].

    Both left-hand sides are strictly increasing (phi' >= 3/5), so
    bisection on [0, 1] finds the unique roots. Closed forms: 1 and
    (17 + 4 sqrt 15) / 49.
    """
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    lam1 = _bisect_increasing(lambda x: cond1(x) - 1.0, 0.0, 1.0, tol)
    lam2 = _bisect_increasing(lambda x: cond2(x) - 1.5, 0.0, 1.0, tol)
    return lam1, lam2


@dataclass(frozen=True)
class ExponentReport:
    delta: float
    epsilon: float
    phi_delta: float
    cond1: float
    cond2: float
    slack1: float
    slack2: float
    admissible: bool
    within_margin: bool
    lambda1: float
    lambda2: float
    threshold: float
    eta: float | None = None
    c_factor: float | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def admissibility(delta: float, epsilon: float = 0.0, *, X: float | None = None, c1: float = 1.0, c: float = 1.0) -> ExponentReport:
    """Both root conditions at Delta, with slack against 1 - eps/10 and 3/2 - eps/10.

    ``admissible`` is the strict pair cond1 < 1, cond2 < 3/2; ``within_margin``
    uses the eps/10 margins. When X is given the zero-free width eta and the
    log-saving factor are filled in.
    """
    _check_unit(delta, "delta")
    if epsilon < 0:
        raise DomainError(f"epsilon must be >= 0, got {epsilon}")
    pd = phi(delta)
    c1v = pd - 0.5 * delta
    c2v = pd + 0.5 * delta
    s1 = (1.0 - epsilon / 10.0) - c1v
    s2 = (1.5 - epsilon / 10.0) - c2v
    lam1, lam2 = solve_lambda_roots()
    return ExponentReport(
        delta=float(delta),
        epsilon=float(epsilon),
        phi_delta=pd,
        cond1=c1v,
        cond2=c2v,
        slack1=s1,
        slack2=s2,
        admissible=c1v < 1.0 and c2v < 1.5,
        within_margin=s1 >= 0 and s2 >= 0,
        lambda1=lam1,
        lambda2=lam2,
        threshold=1.0 - lam2,
        eta=None if X is None else zero_free_width(X, c1),
        c_factor=None if X is None else log_saving(X, c),
    )


@dataclass(frozen=True)
class BudgetTerm:
    label: str
    exponent: float
    bound: float

    @property
    def passed(self) -> bool | None:
        # the main term is the reference, not a test
        if self.label == "main":
            return None
        return self.exponent < self.bound


def error_budget(X: float, H: float, eps1: float) -> list[BudgetTerm]:
    """Exponents (base X) of the main term and each error term for the window.

    With X/H = X^Delta and T = X^(1+eps1)/H = X^(Delta+eps1). Every error
    exponent is compared against the main-term exponent 3/2 - Delta.
    """
    if not 4 <= H <= X:
        raise DomainError(f"error_budget needs 4 <= H <= X, got X={X}, H={H}")
    if eps1 <= 0:
        raise DomainError(f"eps1 must be positive, got {eps1}")
    delta = math.log(X / H) / math.log(X)
    return budget_for_delta(delta, eps1)


def budget_for_delta(delta: float, eps1: float) -> list[BudgetTerm]:
    delta = min(max(delta, 0.0), 1.0)
    pd = phi(delta)
    h = 1.0 - delta
    main = 1.5 - delta
    terms = [
        ("r1_r2", h - 0.5 + pd - 0.5 * delta + eps1),
        ("r3_zero_density", pd - 0.5 * delta + 3.0 * eps1),
        ("r3_zero_free", 0.5 * h + 0.5 + 2.0 * eps1),
        ("e_first", h - 0.5 + pd - 0.5 * delta + 4.0 * eps1),
        ("e_second", pd - 0.5 * delta + 4.0 * eps1),
        ("t_term", delta + eps1),
        ("x32_over_t", 1.5 - delta - eps1),
    ]
    return [BudgetTerm("main", main, main)] + [BudgetTerm(k, v, main) for k, v in terms]


def budget_passes(terms: list[BudgetTerm]) -> bool:
    return all(t.passed for t in terms if t.label != "main")


def zero_free_width(X: float, c1: float = 1.0) -> float:
    """eta = c1 (log X)^(-2/3) (log log X)^(-1/3)."""
    _check_log_log(X, c1)
    lx = math.log(X)
    return c1 * lx ** (-2.0 / 3.0) * math.log(lx) ** (-1.0 / 3.0)


def log_saving(X: float, c: float = 1.0) -> float:
    """1/C = exp(c (log X / log log X)^(1/3))."""
    _check_log_log(X, c)
    lx = math.log(X)
    return math.exp(c * (lx / math.log(lx)) ** (1.0 / 3.0))


def _check_log_log(X: float, const: float) -> None:
    if X < 16:
        raise DomainError(f"X must be >= 16 so that log log X is safely positive, got {X}")
    if const <= 0:
        raise DomainError(f"constant must be positive, got {const}")
