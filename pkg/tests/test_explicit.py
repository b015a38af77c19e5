import math

import mpmath
import numpy as np
import pytest

from oracles import psi_direct, s_direct
from sflab.errors import DomainError, OutOfRangeError, ZeroFileError
from sflab.explicit import (
    bundled_zeros,
    default_T,
    gamma_ratio,
    load_zeros,
    parse_zeros,
    psi_error_rms,
    psi_truncated,
    s_rho_diff,
    truncation_diag,
)
from sflab.squarefull import count_upto

BASELINE_10K = {"r1": 204.82482331628691, "r2": 115.0714170235385, "r3": 1834.1210428976599, "n_zeros": 29, "main_count": 176}


def test_bundled_table(zeros):
    assert zeros.count == 1000
    assert zeros.gammas[0] == pytest.approx(14.134725141734694, abs=1e-12)
    assert np.all(np.diff(zeros.gammas) > 0)
    assert len(zeros.source_digest) == 64
    assert bundled_zeros(10).count == 10


def test_bundled_against_mpmath(zeros):
    mpmath.mp.dps = 30
    for k in (1, 2, 100, 1000):
        assert zeros.gammas[k - 1] == pytest.approx(float(mpmath.zetazero(k).imag), abs=1e-9)


def test_load_three_zeros(tmp_path):
    p = tmp_path / "z.txt"
    p.write_text("14.134725142\n21.022039639\n# comment\n25.010857580\n")
    assert load_zeros(p).count == 3


def test_load_empty(tmp_path):
    p = tmp_path / "z.txt"
    p.write_text("")
    table = load_zeros(p)
    assert table.count == 0
    assert psi_truncated(100, 0, table) == 100.0


@pytest.mark.parametrize(
    "text, line",
    [("21.0\n14.1\n", 1), ("14.134725142\n21.0\n14.1\n", 3), ("14.134725142\nabc\n", 2), ("14.134725142\n-3\n", 2), ("14.2\n", 1)],
)
def test_parse_errors(text, line):
    with pytest.raises(ZeroFileError, match=f"line {line}:"):
        parse_zeros(text)


def test_psi_truncated_examples(zeros):
    assert psi_truncated(1000, 0, zeros) == 1000.0
    psi100 = psi_direct(100)
    assert psi100 == pytest.approx(94.04531122935739, rel=1e-13)
    got = psi_truncated(100, 100, zeros)
    assert type(got) is float
    assert abs(got - psi100) < abs(100 - psi100)
    assert math.isfinite(psi_truncated(2, 1000, zeros))
    assert len(zeros.upto(100)) == 29


def test_psi_truncated_errors(zeros):
    with pytest.raises(OutOfRangeError, match="1419.42"):
        psi_truncated(100, 5000, zeros)
    with pytest.raises(DomainError):
        psi_truncated(1.5, 10, zeros)
    with pytest.raises(DomainError):
        zeros.upto(-1)


def test_psi_truncated_close_to_psi(zeros, table_small):
    # half-integers avoid the jumps of psi
    for x in (500.5, 1000.5, 2000.5):
        assert abs(psi_truncated(x, 1000, zeros) - table_small.psi(x)) < 10


def test_psi_error_rms_decreases(zeros, table_small):
    rms = [psi_error_rms(1000, T, zeros, table_small) for T in (50, 200, 1000)]
    assert rms[0] > rms[-1]


def test_s_rho_diff_alpha_one():
    for X, H, B in [(1000, 100, 10), (10**6, 5000, 3), (10**6, 5000, None)]:
        assert s_rho_diff(X, H, B, alpha=1) == H * count_upto(X, B)


def test_s_rho_diff_against_oracle():
    got = s_rho_diff(1000, 100, 10, 14.134725)
    rho = complex(0.5, 14.134725)
    want = s_direct(1100, 1000, 10, rho) - s_direct(1000, 1000, 10, rho)
    assert abs(got - want) <= 1e-9 * max(1.0, abs(want))


def test_s_rho_diff_edges():
    assert s_rho_diff(1000, 0, 10, 14.1) == 0
    with pytest.raises(DomainError):
        s_rho_diff(1000, 10, 10)
    with pytest.raises(DomainError):
        s_rho_diff(1000, -1, 10, 14.1)


def test_gamma_ratio_against_mpmath():
    mpmath.mp.dps = 30
    for g in (14.134725141734694, 100.0, 1000.0):
        rho = complex(0.5, g)
        want = complex(mpmath.gamma(rho) * mpmath.gamma(0.5) / mpmath.gamma(rho + 1.5))
        got = complex(gamma_ratio(np.array([rho]))[0])
        assert abs(got - want) <= 1e-10 * abs(want)


def test_diag_below_first_zero(zeros, table_small):
    d = truncation_diag(10**4, 10**3, 10, 14.0, zeros, table_small)
    assert (d.r1, d.r2, d.r3, d.n_zeros) == (0.0, 0.0, 0.0, 0)


def test_diag_baseline(zeros, table_small):
    d = truncation_diag(10**4, 10**3, 10, 100, zeros, table_small)
    assert {k: getattr(d, k) for k in BASELINE_10K} == BASELINE_10K
    assert d.r3 == 2 * math.fsum((math.sqrt(10**3) * np.ones(29)).tolist())
    assert len(d.psi_err_sample) == 16
    again = truncation_diag(10**4, 10**3, 10, 100, zeros, table_small)
    assert again == d


def test_default_T():
    assert default_T(10**4, 10**2, 0.0) == pytest.approx(100)
    assert default_T(10**4, 10**2, 0.5) == pytest.approx(10**4)
