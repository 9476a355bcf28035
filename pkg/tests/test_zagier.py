import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rootbias import _kloost, arith
from rootbias.errors import DomainError
from rootbias.quadratic import class_number
from rootbias.zagier import (
    check_restriction,
    kloosterman,
    kloosterman_real,
    kloosterman_row,
    kloosterman_square_sum,
    kloosterman_square_sum_rho,
    rho,
    rho_table,
    weil_bound,
    zagier_L,
    zagier_L_many,
    zagier_L_restricted,
    zagier_L_series,
    zagier_mean,
)


def _kloosterman_naive(m, n, c):
    return sum(
        cmath.exp(2j * math.pi * (a * m + pow(a, -1, c) * n) / c) for a in range(1, c) if math.gcd(a, c) == 1
    ) if c > 1 else 1.0


# Kloosterman ------------------------------------------------------------------


def test_kloosterman_examples():
    assert kloosterman(3, 7, 1) == 1
    assert abs(kloosterman(1, 1, 2) - 1) < 1e-15
    assert abs(kloosterman(1, 1, 5) - (2 + 2 * math.cos(4 * math.pi / 5))) < 1e-12


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 400))
def test_kloosterman_matches_naive(m, n, c):
    assert abs(kloosterman(m, n, c) - _kloosterman_naive(m, n, c)) < 1e-9 * c


@given(st.integers(1, 40), st.integers(1, 40), st.integers(1, 600))
def test_kloosterman_weil_symmetry_reality(m, n, c):
    S = kloosterman(m, n, c)
    assert abs(S) <= weil_bound(m, n, c) * (1 + 1e-12)
    assert abs(S - kloosterman(n, m, c)) < 1e-9 * c
    assert abs(kloosterman_real(m, n, c) - S.real) == 0


@pytest.mark.parametrize("c", [1, 2, 7, 12, 49, 97, 360])
def test_kloosterman_row(c):
    row = kloosterman_row(3, c)
    for j in range(0, c, max(1, c // 17)):
        assert abs(row[j] - kloosterman(3, j, c).real) < 1e-9 * c


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(1, 5000))
def test_multiplicative_engine_matches_direct(m, n, c):
    assert abs(_kloost.kloosterman_mult(m, n, c) - kloosterman(m, n, c).real) < 1e-9 * c


@pytest.mark.parametrize("q", [2, 4, 8, 3, 9, 27, 5, 25, 7, 49, 101, 127])
def test_prime_power_rows(q):
    row = _kloost.row_one(q)
    assert np.max(np.abs(row - np.array([kloosterman(1, j, q).real for j in range(q)]))) < 1e-9 * q


# rho --------------------------------------------------------------------------


def test_rho_examples():
    for c in (1, 5, 12):
        assert rho(c, 6) == 0 and rho(c, 7) == 0
    assert rho(1, -4) == 1 and rho(1, -3) == 1
    assert rho(5, -4) == 2


@pytest.mark.parametrize("delta", [-4, -3, -20, -39, -396, 5, 12, 1, 0, 16, -1000])
def test_rho_table_matches_brute_force(delta):
    t = rho_table(delta, 800)
    assert all(int(t[c]) == rho(c, delta) for c in range(1, 801))


# L(s, Delta) ------------------------------------------------------------------


def test_zagier_L_examples():
    assert abs(zagier_L(1, -4) - math.pi / 4) < 1e-13
    assert abs(zagier_L(1, -3) - math.pi / (3 * math.sqrt(3))) < 1e-13
    for N in (5, 6, 10, 13, 14):
        assert abs(zagier_L(1, -4 * N) - math.pi / (2 * math.sqrt(N)) * class_number(-4 * N)) < 1e-12
    assert zagier_L(2.5, -2) == 0 and zagier_L(2.5, 7) == 0


def test_zagier_L_rejects_squares_and_zero():
    for d in (0, 1, 4, 9):
        with pytest.raises(DomainError):
            zagier_L(2, d)


@pytest.mark.parametrize("delta", [-20, -3, -4, -39, -44, -63, -108, -396, 5, 8, 24, 45])
def test_closed_form_vs_series(delta):
    s = 2.5
    assert abs(zagier_L(s, delta) - zagier_L_series(s, delta, 100_000)) < 1e-3


def test_series_complex_s():
    s = 2.2 + 1.5j
    assert abs(zagier_L(s, -23) - zagier_L_series(s, -23, 100_000)) < 1e-3


def test_restricted_series():
    assert abs(zagier_L(2.5, -8) - zagier_L_series(2.5, -8, 100_000, N=2)) < 1e-3
    assert abs(zagier_L_restricted(2.5, -20, 5) - zagier_L_series(2.5, -20, 100_000, N=5)) < 1e-3
    # hypothesis N | D, gcd(N, q) = 1 is enforced
    with pytest.raises(DomainError):
        check_restriction(-39, 2)
    with pytest.raises(DomainError):
        zagier_L_restricted(2.5, -32, 2)  # D = -8, q = 2


def test_series_domain():
    with pytest.raises(DomainError):
        zagier_L_series(1.0, -4, 10_000)
    with pytest.raises(DomainError):
        zagier_L_series(2.0, -4, 999)
    assert zagier_L_series(2.0, -6, 1000) == 0


def test_growth_sanity_nonsquare():
    """At s = 2.5 the exponent is 0, so |L(s, Delta)| stays bounded over -10^4 <= Delta < 0."""
    # every fifth discriminant keeps the run short; the extremes of the range are included
    deltas = np.array([d for d in range(-10_000, 0) if d % 4 in (0, 1)][::5] + [-4, -3], dtype=np.int64)
    vals, _ = zagier_L_many(2.5, deltas)
    assert np.max(np.abs(vals)) < zagier_mean(2.5, 1).real * 10
    # coarse uniformity: the maximum over the top decade is not growing
    top = np.max(np.abs(vals[:deltas.size // 10]))
    bottom = np.max(np.abs(vals[-deltas.size // 10:]))
    assert top < 2 * bottom


def test_many_matches_scalar():
    deltas = np.array([-4, -20, -39, -396, 5, 12, 45, -10**9 - 3, 4 * 10**8 + 5], dtype=np.int64)
    vals, rel = zagier_L_many(2.5, deltas)
    for d, v in zip(deltas.tolist(), vals):
        ref = zagier_L(2.5, d)
        assert abs(v - ref) <= (rel + 1e-12) * abs(ref) + 1e-13


def test_mean_value_of_L_along_progression():
    """The average of L(s, (n N^2 / d)^2 - 4N) over n tends to zeta^(N)(2s)/zeta^(N)(1+s)."""
    s, N = 2.5, 5
    for d in (1, 5):
        n = np.arange(1, 40_001, dtype=np.int64)
        deltas = (n * N * N // d) ** 2 - 4 * N
        vals, _ = zagier_L_many(s, deltas)
        assert abs(vals.mean() - zagier_mean(s, N)) < 5e-3


# Kloosterman square sums --------------------------------------------------------


def test_square_sum_examples():
    assert abs(kloosterman_square_sum(1, 0, 1) - 1) < 1e-15
    assert kloosterman_square_sum_rho(1, 0, 1) == rho(1, -4) == 1
    for m, n, c in ((2, 0, 3), (5, 3, 7)):
        assert abs(kloosterman_square_sum(m, n, c) - kloosterman_square_sum_rho(m, n, c)) < 1e-8 * c


@given(st.integers(1, 30), st.integers(-20, 30), st.integers(1, 150))
def test_square_sum_identity(m, n, c):
    assert abs(kloosterman_square_sum(m, n, c) - kloosterman_square_sum_rho(m, n, c)) < 1e-8 * c
