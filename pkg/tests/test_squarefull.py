import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import b_part, is_squarefull_brute, s_direct, squarefull_mask_numpy
from sflab.errors import DomainError
from sflab.squarefull import (
    SquarefullItem,
    count_in_interval,
    count_upto,
    decompose,
    enumerate_squarefull,
    s_complex,
    s_weighted,
)

FIRST_14 = [1, 4, 8, 9, 16, 25, 27, 32, 36, 49, 64, 72, 81, 100]


def test_enumerate_100():
    s = enumerate_squarefull(100)
    assert s.n.tolist() == FIRST_14
    assert len(s) == 14
    assert FIRST_14 == [n for n in range(1, 101) if is_squarefull_brute(n)]


def test_enumerate_b_cap_one_gives_squares():
    assert enumerate_squarefull(100, 1).n.tolist() == [k * k for k in range(1, 11)]


@pytest.mark.parametrize("cap", [None, 1, 2, 50])
def test_enumerate_limit_one(cap):
    assert enumerate_squarefull(1, cap).n.tolist() == [1]


def test_exclude_one_flag():
    assert enumerate_squarefull(100, include_one=False).n.tolist() == FIRST_14[1:]
    assert count_upto(100, include_one=False) == 13


def test_enumerate_matches_brute_force_1e6():
    good = squarefull_mask_numpy(10**6)
    assert enumerate_squarefull(10**6).n.tolist() == np.flatnonzero(good).tolist()


def test_items_satisfy_invariants():
    for item in enumerate_squarefull(20_000):
        assert item.n == item.a**2 * item.b**3
        assert decompose(item.n) == item
        assert b_part(item.n) == item.b


def test_b_cap_filters_by_b_part():
    full = {n: b for n, _, b in enumerate_squarefull(50_000)}
    for cap in (1, 2, 3, 6.5, 10):
        got = enumerate_squarefull(50_000, cap).n.tolist()
        assert got == sorted(n for n, b in full.items() if b <= math.floor(cap))


@pytest.mark.parametrize("limit", [1000, 10**6, 12345678])
def test_cap_at_cube_root_is_vacuous(limit):
    assert enumerate_squarefull(limit, limit ** (1 / 3) + 1e-9).n.tolist() == enumerate_squarefull(limit).n.tolist()


def test_sorted_and_unique():
    n = enumerate_squarefull(10**7).n
    assert np.all(np.diff(n) > 0)


@pytest.mark.parametrize(
    "n, expected",
    [(72, SquarefullItem(72, 3, 2)), (1, SquarefullItem(1, 1, 1)), (50, None), (108, SquarefullItem(108, 2, 3))],
)
def test_decompose(n, expected):
    assert decompose(n) == expected


def test_decompose_zero():
    with pytest.raises(DomainError):
        decompose(0)


@given(st.integers(1, 10**6))
def test_decompose_agrees_with_exponent_check(n):
    item = decompose(n)
    assert (item is not None) == is_squarefull_brute(n)
    if item:
        assert item.a**2 * item.b**3 == n


def test_count_examples():
    assert count_in_interval(0, 100) == 14
    assert count_in_interval(8, 1) == 1
    brute = sum(1 for f in range(10**6 + 1, 10**6 + 1001) if is_squarefull_brute(f))
    assert count_in_interval(10**6, 10**3) == brute


def test_count_negative_h():
    with pytest.raises(DomainError):
        count_in_interval(10, -1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 5000), st.one_of(st.none(), st.integers(1, 100)))
def test_count_matches_enumeration(X, H, cap):
    members = enumerate_squarefull(X + H + 1, cap).n
    expected = int(np.count_nonzero((members > X) & (members <= X + H)))
    assert count_in_interval(X, H, cap) == expected


@pytest.mark.parametrize("x", [10**6, 10**7, 10**8, 10**10, 10**12])
def test_density_corridor(x):
    assert 2.0 <= count_upto(x) / math.sqrt(x) <= 2.2


def test_interval_count_bound():
    # constant 3 recorded for the empirical short-interval bound
    rng = random.Random(0)
    for _ in range(100):
        X = rng.randint(4, 10**8)
        H = rng.randint(2, X)
        B = X ** (1 / 3)
        assert count_in_interval(X, H, B) <= 3 * (H * X**-0.5 * B + B)


def test_s_weighted_examples():
    assert s_weighted(10, 10, 2) == 18
    assert s_weighted(10, 10, 1) == 16
    assert s_weighted(7, 1, 3) == 6


def test_s_weighted_rejects_small_q():
    with pytest.raises(DomainError):
        s_weighted(50, 100, None)
    with pytest.raises(DomainError):
        s_weighted(10, 0.5, None)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**8), st.data())
def test_s_identity(X, data):
    H = data.draw(st.integers(4, max(X, 4)))
    B = data.draw(st.integers(1, max(1, round(X ** (1 / 3)))))
    diff = s_weighted(X + H, X, B) - s_weighted(X, X, B)
    assert diff == H * len(enumerate_squarefull(X, B))


def test_s_complex_integer_exponents():
    assert s_complex(10, 10, 2, 1) == complex(s_weighted(10, 10, 2))
    assert s_complex(10, 10, 2, 2) == 61
    with pytest.raises(DomainError):
        s_complex(10, 10, 2, 0)


@pytest.mark.parametrize("Q, cutoff, cap", [(30, 25, 3), (1000, 1000, 10), (1100, 1000, 10), (1e4 + 0.5, 1e4, None)])
def test_s_complex_matches_term_oracle(Q, cutoff, cap):
    rho = complex(0.5, 14.134725)
    got = s_complex(Q, cutoff, cap, rho)
    want = s_direct(Q, cutoff, cap, rho)
    assert abs(got - want) <= 1e-10 * max(1.0, abs(want))
