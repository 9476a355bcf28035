import math

import numpy as np
import pytest

from rootbias import arith
from rootbias.bias import m_sharp_detailed
from rootbias.errors import DomainError
from rootbias.petersson import (
    PeterssonTruncation,
    default_c_max,
    delta_sharp,
    delta_star,
    divisor_tail_sum,
    m_sharp_via_petersson,
    sharp_n_tail,
    sharp_table,
)


def test_divisor_tail_sum_is_an_upper_bound():
    d = np.zeros(2_000_001)
    for j in range(1, 2_000_001):
        d[j::j] += 1
    c = np.arange(2_000_001, dtype=float)
    for Y, beta in ((100, 1.5), (1000, 3.5), (50, 5.5)):
        actual = float(np.sum(d[Y + 1 :] * c[Y + 1 :] ** -beta))
        assert actual <= divisor_tail_sum(Y, beta)
        assert divisor_tail_sum(Y, beta) < 50 * actual  # not absurdly loose


def test_truncation_validation():
    with pytest.raises(DomainError):
        PeterssonTruncation(0)
    with pytest.raises(DomainError):
        PeterssonTruncation(10, tail_bound=-1)


def test_delta_sharp_domain():
    t = PeterssonTruncation(100)
    with pytest.raises(DomainError):
        delta_sharp(1, 5, 5, 2, t)  # gcd(mn, N) > 1
    with pytest.raises(DomainError):
        delta_sharp(1, 1, 4, 2, t)  # N not squarefree
    with pytest.raises(DomainError):
        delta_sharp(1, 1, 5, 1, t)


@pytest.mark.parametrize("m,n,N,k", [(1, 1, 5, 3), (1, 4, 5, 2), (1, 49, 6, 2), (2, 9, 7, 2)])
def test_delta_sharp_truncation_honesty(m, n, N, k):
    prev = None
    for C in (200, 400, 800, 1600):
        v, tail = delta_sharp(m, n, N, k, PeterssonTruncation(C))
        if prev is not None:
            assert abs(v - prev[0]) <= prev[1] + 1e-15
        prev = (v, tail)


def test_delta_sharp_stable_value():
    v1, _ = delta_sharp(1, 1, 5, 3, PeterssonTruncation(100))
    v2, t2 = delta_sharp(1, 1, 5, 3, PeterssonTruncation(10_000))
    assert abs(v1 - 0.00803167342862716) < 1e-12
    assert abs(v2 - v1) < 1e-12 and t2 < 1e-10


def test_delta_star_diagonal_and_offdiagonal():
    v, tail = delta_star(1, 1, 5, 3, PeterssonTruncation(300))
    diag = 5 * 25 * arith.euler_phi(5) / (2 * math.pi**2)
    assert abs(v - diag) < 1e-3 * diag
    off, _ = delta_star(1, 2, 5, 3, PeterssonTruncation(300))
    assert abs(off) < 1e-10


def test_table_matches_scalar_delta_sharp():
    N, k = 5, 2
    table = sharp_table(N, k, n_max=120, c_max=4000)
    for i in (0, 7, 40, len(table.n) - 1):
        n = int(table.n[i])
        C = max(200, math.ceil(4000 * n / 120))
        v, tail = delta_sharp(1, n * n, N, k, PeterssonTruncation(C))
        assert abs(table.values[i] - v) < 1e-10 + 1e-9 * abs(v)
        assert table.c_tails[i] == pytest.approx(tail, rel=1e-10, abs=1e-300)
    assert all(math.gcd(int(n), N) == 1 for n in table.n)


def test_table_deterministic_across_threads():
    a = sharp_table(7, 2, n_max=150, c_max=3000, threads=1)
    from rootbias import petersson

    petersson._table_cache.clear()
    petersson._kloost_cache.clear()
    b = sharp_table(7, 2, n_max=150, c_max=3000, threads=4)
    assert np.array_equal(a.values, b.values)
    assert np.array_equal(a.c_tails, b.c_tails)


def test_n_tail_decreasing():
    vals = [sharp_n_tail(5, 2, X, 2.5) for X in (100, 1000, 10_000)]
    assert vals[0] > vals[1] > vals[2] > 0


def test_default_c_max_scaling():
    assert default_c_max(5, 1000) >= 60 * 2 * math.pi / 5**1.5 * 1000
    assert default_c_max(10, 1000) < default_c_max(5, 1000)


def test_m_sharp_petersson_domain():
    with pytest.raises(DomainError):
        m_sharp_via_petersson(1.5, 5, 2)


def test_truncation_honesty_in_n():
    """Raising n_max moves M#(s) by less than the bound reported with the smaller n_max."""
    s = 2.5
    v1, b1 = m_sharp_via_petersson(s, 5, 2, n_max=300)
    v2, b2 = m_sharp_via_petersson(s, 5, 2, n_max=600)
    assert abs(v2 - v1) <= b1
    assert b2 < b1


def test_two_route_single_cell():
    s = 3.0
    p_val, p_err = m_sharp_via_petersson(s, 6, 2)
    a_val, a_err = m_sharp_detailed(s, 6, 2)
    assert abs(p_val - a_val) < max(1e-4, p_err + a_err)
    assert abs(p_val - a_val) < 1e-4
