"""Independent newform dimensions for Gamma_0(M), trivial character.

Cusp-form dimensions come from the genus/Riemann-Roch formula (Cohen-Oesterle
for trivial character); the new part from
dim S_new(M) = sum_{d | M} beta(M/d) dim S(d), with beta multiplicative,
beta(p) = -2, beta(p^2) = 1, beta(p^e) = 0 for e >= 3.
"""

from fractions import Fraction
from math import gcd

from rootbias import arith


def _index(M):
    out = Fraction(M)
    for p in arith.prime_divisors(M):
        out *= Fraction(p + 1, p)
    return out


def _elliptic(M, D, sq):
    if M % sq == 0:
        return 0
    out = 1
    for p in arith.prime_divisors(M):
        out *= 1 + arith.kronecker(D, p)
    return out


def _cusps(M):
    return sum(arith.euler_phi(gcd(d, M // d)) for d in arith.divisors(M))


def dim_cusp(M, weight):
    """dim S_weight(Gamma_0(M)) for even weight >= 2."""
    if weight < 2 or weight % 2:
        raise ValueError("even weight >= 2 only")
    mu = _index(M)
    n2, n3, cusps = _elliptic(M, -4, 4), _elliptic(M, -3, 9), _cusps(M)
    if weight == 2:
        g = 1 + mu / 12 - Fraction(n2, 4) - Fraction(n3, 3) - Fraction(cusps, 2)
        return int(g)
    val = (
        Fraction(weight - 1, 12) * mu
        + (weight // 4 - Fraction(weight - 1, 4)) * n2
        + (weight // 3 - Fraction(weight - 1, 3)) * n3
        - Fraction(cusps, 2)
    )
    assert val.denominator == 1
    return int(val)


def _beta(n):
    out = 1
    for _, e in arith.factor(n).factors:
        out *= {1: -2, 2: 1}.get(e, 0)
    return out


def dim_new(M, weight):
    return sum(_beta(M // d) * dim_cusp(d, weight) for d in arith.divisors(M))
