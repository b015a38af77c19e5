import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sflab.errors import DomainError
from sflab.exponents import (
    C_ALPHA_BREAK,
    LAMBDA2,
    PHI_BREAK_1,
    PHI_BREAK_2,
    THRESHOLD,
    admissibility,
    budget_for_delta,
    budget_passes,
    c_alpha,
    c_alpha_branches_exact,
    cond1,
    cond2,
    error_budget,
    log_saving,
    phi,
    phi_branches_exact,
    phi_derivative,
    solve_lambda_roots,
    zero_free_width,
)

LAMBDA2_CLOSED = (17 + 4 * math.sqrt(15)) / 49


def test_phi_examples():
    assert phi(0) == 0.75
    assert phi(Fraction(25, 48)) == pytest.approx(17 / 16, abs=1e-15)
    assert phi(1) == 1.5
    assert phi(0.7) == pytest.approx(1.2017246507621122, abs=1e-15)


@pytest.mark.parametrize("lam", [-0.01, 1.01, float("nan"), float("inf")])
def test_phi_domain(lam):
    with pytest.raises(DomainError):
        phi(lam)


def test_phi_continuity_exact():
    left, middle, _ = phi_branches_exact(PHI_BREAK_1)
    assert left == middle == Fraction(17, 16)
    _, middle, right = phi_branches_exact(PHI_BREAK_2)
    assert middle == right == Fraction(5, 4)


def test_phi_slopes():
    grid = np.arange(0, 10001) / 10000
    values = np.array([phi(x) for x in grid])
    slopes = np.diff(values) / 1e-4
    assert slopes.min() >= 0.6 - 1e-6
    assert slopes.max() <= 1 + 1e-6


@given(st.floats(0, 1))
def test_phi_derivative_range(lam):
    assert 0.6 - 1e-12 <= phi_derivative(lam) <= 1 + 1e-12


def test_conditions_increasing():
    grid = np.linspace(0, 1, 2001)
    c1 = [cond1(x) for x in grid]
    c2 = [cond2(x) for x in grid]
    assert all(a < b for a, b in zip(c1, c1[1:]))
    assert all(a < b for a, b in zip(c2, c2[1:]))


def test_c_alpha_examples():
    assert c_alpha(1) == 0
    assert c_alpha(0.75) == pytest.approx(0.6, abs=1e-15)
    assert c_alpha(0.5) == 1
    a, b = c_alpha_branches_exact(C_ALPHA_BREAK)
    assert a == b == Fraction(3, 5)
    for bad in (0.49, 1.01):
        with pytest.raises(DomainError):
            c_alpha(bad)


@given(st.floats(0.5, 1))
def test_c_alpha_density_hypothesis_shape(alpha):
    assert 0 <= c_alpha(alpha) <= 12 / 5 * (1 - alpha) + 1e-12


def test_roots():
    lam1, lam2 = solve_lambda_roots()
    assert lam1 == 1
    assert abs(lam2 - LAMBDA2_CLOSED) <= 1e-12
    assert abs(LAMBDA2 - LAMBDA2_CLOSED) <= 1e-15
    assert abs(THRESHOLD - (32 - 4 * math.sqrt(15)) / 49) <= 1e-12
    assert abs(cond2(lam2) - 1.5) <= 1e-12


def test_admissibility_examples():
    r = admissibility(0.5)
    assert r.cond1 == pytest.approx(0.8, abs=1e-15) and r.admissible
    r = admissibility(0.7)
    assert r.cond2 == pytest.approx(1.55172465, abs=1e-8) and not r.admissible
    r = admissibility(LAMBDA2)
    assert r.cond2 == pytest.approx(1.5, abs=1e-15)
    assert r.threshold == pytest.approx(THRESHOLD, abs=1e-12)


def test_admissibility_margin():
    r = admissibility(0.6, 0.1)
    assert r.admissible and r.within_margin
    r = admissibility(LAMBDA2 - 1e-4, 0.1)
    assert r.admissible and not r.within_margin
    with pytest.raises(DomainError):
        admissibility(0.5, -1)


def test_admissibility_with_x():
    r = admissibility(0.5, X=1e6)
    assert r.eta == zero_free_width(1e6)
    assert r.c_factor == log_saving(1e6)
    assert set(r.as_dict()) >= {"delta", "phi_delta", "cond1", "cond2", "admissible", "lambda1", "lambda2", "threshold"}


def test_budget_examples():
    terms = error_budget(1e8, 1e8**0.7, 0.01)
    main = terms[0]
    assert main.label == "main" and main.exponent == pytest.approx(1.2) and main.passed is None
    assert all(t.exponent < 1.2 for t in terms[1:])
    assert budget_passes(terms)
    assert not budget_passes(budget_for_delta(LAMBDA2 + 0.01, 0.001))
    zero = budget_for_delta(0.0, 0.01)
    assert zero[1].exponent == pytest.approx(1.25 + 0.01)
    assert budget_passes(zero)


def test_budget_domain():
    with pytest.raises(DomainError):
        error_budget(100, 2, 0.01)
    with pytest.raises(DomainError):
        error_budget(100, 200, 0.01)
    with pytest.raises(DomainError):
        error_budget(100, 10, 0)


def test_zero_free_width():
    with pytest.raises(DomainError):
        zero_free_width(math.e**math.e)
    lx = math.log(1e6)
    assert zero_free_width(1e6) == pytest.approx(lx ** (-2 / 3) * math.log(lx) ** (-1 / 3), rel=1e-15)
    xs = [1e2, 1e4, 1e8, 1e16]
    widths = [zero_free_width(x) for x in xs]
    assert all(a > b for a, b in zip(widths, widths[1:]))
    assert log_saving(1e8) > log_saving(1e4) > 1
