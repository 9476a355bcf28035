import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from rootbias import arith
from rootbias.errors import DomainError


@given(st.integers(1, 10**7))
def test_factor_matches_sympy(n):
    f = arith.factor(n)
    assert dict(f.factors) == sympy.factorint(n)
    assert math.prod(p**e for p, e in f.factors) == n


def test_factor_rejects_nonpositive():
    with pytest.raises(DomainError):
        arith.factor(0)


@given(st.integers(1, 5000))
def test_multiplicative_functions(n):
    assert arith.euler_phi(n) == int(sympy.totient(n))
    assert arith.mobius(n) == int(sympy.mobius(n))
    assert arith.num_divisors(n) == int(sympy.divisor_count(n))
    assert arith.divisors(n) == sympy.divisors(n)
    assert arith.sigma(1, n).real == int(sympy.divisor_sigma(n, 1))


def test_sigma_complex_power():
    s = 0.3 - 1.2j
    assert abs(arith.sigma(s, 12) - sum(d**s for d in (1, 2, 3, 4, 6, 12))) < 1e-12


@given(st.integers(-500, 500), st.integers(1, 500))
def test_kronecker_matches_sympy_for_odd_n(D, n):
    if n % 2:
        assert arith.kronecker(D, n) == sympy.jacobi_symbol(D % n, n)


def test_kronecker_at_two_and_small_primes():
    # (D/2) = +1 for D = 1 mod 8, -1 for D = 5 mod 8
    assert arith.kronecker(-7, 2) == 1
    assert arith.kronecker(-3, 2) == -1
    assert arith.kronecker(-4, 2) == 0
    for p in (5, 13, 17, 29):
        assert arith.kronecker(-4, p) == 1
    for p in (3, 7, 11, 19):
        assert arith.kronecker(-4, p) == -1


@pytest.mark.parametrize("D", [d for d in range(-100, 101) if d % 4 in (0, 1) and d != 0])
def test_kronecker_period_and_multiplicativity(D):
    M = abs(D)
    for n in range(1, 60):
        assert arith.kronecker(D, n) == arith.kronecker(D, n + M)
        for m in range(1, 12):
            assert arith.kronecker(D, n * m) == arith.kronecker(D, n) * arith.kronecker(D, m)


def test_mod_inverse():
    assert arith.mod_inverse(3, 7) == 5
    assert arith.mod_inverse(5, 1) == 0
    with pytest.raises(DomainError):
        arith.mod_inverse(2, 4)


def test_v_sharp():
    assert arith.v_sharp(2, 1) == 1
    assert arith.v_sharp(2, 5) == 0  # chi_{-4}(5) = 1
    assert arith.v_sharp(2, 3) == -2
    assert arith.v_sharp(3, 5) == -2
    assert arith.v_sharp(3, 7) == 0
    with pytest.raises(DomainError):
        arith.v_sharp(2, 9)
    with pytest.raises(DomainError):
        arith.v_sharp(5, 3)


def test_squarefree_helpers():
    assert list(arith.squarefree_up_to(1, 12)) == [1, 2, 3, 5, 6, 7, 10, 11]
    assert arith.is_square(49) and not arith.is_square(50) and not arith.is_square(-4)
