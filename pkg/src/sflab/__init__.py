"""Sums of a prime and a square-full number in short intervals, at desk scale."""

__version__ = "0.1.0"

from .errors import DomainError, OutOfRangeError, SflabError, ZeroFileError
from .exponents import LAMBDA2, THRESHOLD, admissibility, c_alpha, error_budget, phi, solve_lambda_roots
from .explicit import ZeroTable, bundled_zeros, load_zeros, psi_truncated, s_rho_diff, truncation_diag
from .representation import Window, WindowReport, r_of_n, r_tilde, sweep, window_sum
from .sieve import SieveTable, build_sieve
from .squarefull import SquarefullItem, SquarefullSet, count_in_interval, decompose, enumerate_squarefull, s_complex, s_weighted
from .zeta import mobius_dirichlet_partial, singular_constant, zeta

__all__ = [
    "DomainError",
    "OutOfRangeError",
    "SflabError",
    "ZeroFileError",
    "LAMBDA2",
    "THRESHOLD",
    "admissibility",
    "c_alpha",
    "error_budget",
    "phi",
    "solve_lambda_roots",
    "ZeroTable",
    "bundled_zeros",
    "load_zeros",
    "psi_truncated",
    "s_rho_diff",
    "truncation_diag",
    "Window",
    "WindowReport",
    "r_of_n",
    "r_tilde",
    "sweep",
    "window_sum",
    "SieveTable",
    "build_sieve",
    "SquarefullItem",
    "SquarefullSet",
    "count_in_interval",
    "decompose",
    "enumerate_squarefull",
    "s_complex",
    "s_weighted",
    "mobius_dirichlet_partial",
    "singular_constant",
    "zeta",
]
