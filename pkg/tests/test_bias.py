import math
from fractions import Fraction

import numpy as np
import pytest
from dimension_oracle import dim_cusp, dim_new

from rootbias import arith
from rootbias.bias import (
    BiasReport,
    Level,
    Weight,
    asymptotic_main_term,
    bias_closed_form,
    bias_report,
    c_constant,
    dim_star_cubic,
    dim_star_squarefree,
    l_minus_4N_closed,
    m0,
    m1,
    m2,
    m_sharp,
    m_sharp_detailed,
    signed_counts,
)
from rootbias.errors import ConvergenceError, DomainError
from rootbias.quadratic import class_number
from rootbias.zagier import zagier_L

SQF = [N for N in range(2, 101) if arith.is_squarefree(N)]


def test_level_weight_validation():
    Level(6)
    Weight(2)
    for bad in (1, 4, 12, 0):
        with pytest.raises(DomainError):
            Level(bad)
    with pytest.raises(DomainError):
        Weight(1)


def test_c_constant():
    assert c_constant(5) == Fraction(1, 2)
    assert c_constant(6) == Fraction(1, 2)
    assert c_constant(7) == 1
    assert c_constant(11) == 2
    with pytest.raises(DomainError):
        c_constant(3)


def test_bias_closed_form_examples():
    assert bias_closed_form(2, 2) == 1
    assert bias_closed_form(3, 5) == 2
    assert bias_closed_form(5, 4) == 4
    assert [bias_closed_form(2, k) for k in range(2, 10)] == [1, 1, 0, 0, 1, 1, 0, 0]
    assert [bias_closed_form(3, k) for k in range(2, 8)] == [2, 1, 1, 2, 1, 1]
    assert all(bias_closed_form(7, k) == 6 for k in range(2, 13))


def test_dimension_oracle_sanity():
    # classical values
    assert dim_cusp(11, 2) == 1 and dim_cusp(1, 12) == 1 and dim_cusp(1, 10) == 0
    assert dim_new(11, 2) == 1 and dim_new(22, 2) == 0 and dim_new(37, 2) == 2


@pytest.mark.parametrize("N", [N for N in SQF if N <= 13])
@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_dim_star_cubic_matches_oracle(N, k):
    assert dim_star_cubic(N, k) == dim_new(N**3, 2 * k)


@pytest.mark.parametrize("M", [M for M in SQF if M <= 60])
@pytest.mark.parametrize("k", [2, 3, 4, 6, 7])
def test_dim_star_squarefree_matches_oracle(M, k):
    assert dim_star_squarefree(M, k) == dim_new(M, 2 * k)


def test_dimension_examples():
    assert dim_star_cubic(5, 2) == 24  # phi(5)^2 nu(5) / 4 with nu(5) = 6
    assert dim_star_cubic(2, 2) == 1
    assert dim_star_squarefree(11, 2) == 2


def test_signed_counts_examples():
    assert signed_counts(2, 2) == (1, 0)
    assert signed_counts(3, 2) == (3, 1)
    assert signed_counts(5, 2) == (14, 10)


def test_signed_counts_structure():
    for N in SQF:
        for k in range(2, 13):
            plus, minus = signed_counts(N, k)
            assert plus >= 0 and minus >= 0
            assert plus + minus == dim_star_cubic(N, k)
            b = bias_closed_form(N, k)
            assert plus - minus == b and b >= 0
            assert (b == 0) == (N == 2 and k % 4 in (0, 1))


def test_asymptotic_main_term():
    assert asymptotic_main_term(5, 2) == 12
    assert asymptotic_main_term(2, 2) == 0.375
    ratios = []
    for N in SQF:
        plus, _ = signed_counts(N, 2)
        ratios.append(abs(plus - asymptotic_main_term(N, 2)) / (N**1.5 * math.log(N)))
    assert max(ratios) < 1


def test_l_minus_4N_closed():
    assert abs(l_minus_4N_closed(5) - math.pi / math.sqrt(5)) < 1e-14
    assert abs(l_minus_4N_closed(7) - math.pi / math.sqrt(7)) < 1e-14
    assert abs(l_minus_4N_closed(3) - 2 * math.pi / (3 * math.sqrt(3))) < 1e-14
    for N in SQF:
        assert abs(l_minus_4N_closed(N) - zagier_L(1, -4 * N)) < 1e-10


def test_m0_examples():
    N, k = 5, 3
    expect = 5 * math.sqrt(5) * 4 / (2 * math.pi) * math.gamma(2.5) / math.gamma(3.5) * zagier_L(1, -20)
    assert abs(m0(1, N, k) - expect) < 1e-12
    assert abs(m0(1, 7, 2) - 6) < 1e-10
    assert abs(m0(1, 5, 3) - bias_closed_form(5, 3)) < 1e-10


def test_m1_vanishes_except_small_levels():
    for N in (5, 6, 7, 10, 11):
        assert m1(1.7, N, 2) == 0 and m1(1, N, 4) == 0
    for k in range(2, 9):
        m1_2 = m1(1, 2, k)
        m1_3 = m1(1, 3, k)
        assert m1_2 != 0 or math.cos((2 * k - 1) * math.pi / 4) == 0
        assert m1_3 != 0


def test_m2_at_one_is_zero():
    for N, k in ((5, 2), (7, 3), (2, 4), (30, 2)):
        val, tail = m2(1, N, k)
        assert val == 0 and tail == 0


def _m2_partial(*args, **kw):
    try:
        return m2(*args, **kw)
    except ConvergenceError as e:
        return e.partial


def test_m2_self_convergence():
    """Doubling the number of terms moves M2 by less than the reported error."""
    fine, ferr = _m2_partial(2.5, 5, 3, tol=1e-14, max_terms=4096)
    coarse, cerr = _m2_partial(2.5, 5, 3, tol=1e-14, max_terms=2048)
    assert abs(fine - coarse) <= cerr + ferr
    assert ferr < 1e-6


def test_m2_unreachable_tolerance_reports_partial():
    with pytest.raises(ConvergenceError) as info:
        m2(2.5, 5, 3, tol=1e-300)
    value, err = info.value.partial
    assert np.isfinite(abs(value)) and err > 0


def test_m_sharp_at_one():
    assert abs(m_sharp(1, 5, 3) - 4) < 1e-8
    assert abs(m_sharp(1, 2, 2) - 1) < 1e-8
    for N in SQF:
        if N > 50:
            break
        for k in range(2, 9):
            assert abs(m_sharp(1, N, k) - bias_closed_form(N, k)) < 1e-6


def test_k_independence_beyond_three():
    for N in (5, 6, 7, 10, 11, 13, 14):
        vals = [m_sharp(1, N, k).real for k in range(2, 9)]
        assert max(vals) - min(vals) < 1e-8


def test_conjugate_symmetry():
    s = 1.3 + 0.7j
    for N, k in ((5, 2), (6, 3), (2, 3)):
        a = m_sharp(s, N, k)
        b = m_sharp(s.conjugate(), N, k)
        assert abs(a - b.conjugate()) < 1e-8 * max(1, abs(a))


def test_strip_errors():
    with pytest.raises(DomainError):
        m_sharp(3.5, 5, 2)  # Re s >= 2k - 1
    with pytest.raises(DomainError):
        m_sharp(-2.5, 5, 2)
    with pytest.raises(DomainError):
        m2(0.5, 5, 2)  # even-integer-free region left of 1 is unsupported for M2


def test_report_roundtrip_and_invariants():
    r = bias_report(5, 3)
    assert r.bias_closed == 4 and r.h_plus == 22 and r.h_minus == 18 and r.class_number == 2
    assert r.ok(1e-6)
    assert BiasReport.from_dict(r.to_dict()) == r
    with pytest.raises(ArithmeticError):
        BiasReport(5, 3, 4, 4.0, 40, 20, 18, 0.0, 0.0, "1/2", 2)
