"""Exact integer arithmetic: factorization, multiplicative functions, Kronecker symbol."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator

from .errors import DomainError


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise DomainError(f"non-canonical factorization {self.factors}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise DomainError(f"factors multiply to {prod}, not {self.value}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return sorted(divs)


@lru_cache(maxsize=65536)
def factor(n: int) -> Factorization:
    """Factor ``n`` by trial division."""
    if n < 1:
        raise DomainError(f"factor() needs n >= 1, got {n}")
    out = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


def divisors(n: int) -> list[int]:
    return factor(n).divisors()


def prime_divisors(n: int) -> list[int]:
    return factor(n).primes


def is_squarefree(n: int) -> bool:
    return n >= 1 and factor(n).is_squarefree()


def mobius(n: int) -> int:
    f = factor(n)
    if not f.is_squarefree():
        return 0
    return -1 if len(f.factors) % 2 else 1


def euler_phi(n: int) -> int:
    result = n
    for p in factor(n).primes:
        result -= result // p
    return result


def num_divisors(n: int) -> int:
    out = 1
    for _, e in factor(n).factors:
        out *= e + 1
    return out


def sigma(s, n: int) -> complex:
    """Divisor power sum ``sum_{d | n} d**s`` for complex ``s``."""
    if n < 1:
        raise DomainError(f"sigma() needs n >= 1, got {n}")
    s = complex(s)
    if s.imag == 0 and s.real == int(s.real) and s.real >= 0:
        return complex(sum(d ** int(s.real) for d in divisors(n)))
    return sum(cmath.exp(s * cmath.log(d)) for d in divisors(n))


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n)."""
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    # even part of n
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if D % 2 == 0:
            return 0
        if v % 2 and D % 8 in (3, 5):
            result = -result
    # n is now odd and positive: Jacobi symbol (D/n)
    return result * _jacobi(D, n)


def _jacobi(a: int, n: int) -> int:
    if n == 1:
        return 1
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def mod_inverse(a: int, c: int) -> int:
    if c < 1:
        raise DomainError(f"modulus must be positive, got {c}")
    if c == 1:
        return 0
    if gcd(a, c) != 1:
        raise DomainError(f"{a} is not invertible modulo {c}")
    return pow(a, -1, c)


def v_sharp(which: int, M: int) -> int:
    """Multiplicative function prod_{p | M} (chi(p) - 1) with chi = chi_{-4} or chi_{-3}."""
    if which not in (2, 3):
        raise DomainError(f"which must be 2 or 3, got {which}")
    if not is_squarefree(M):
        raise DomainError(f"M = {M} is not squarefree")
    D = -4 if which == 2 else -3
    out = 1
    for p in factor(M).primes:
        out *= kronecker(D, p) - 1
    return out


def squarefree_up_to(lo: int, hi: int) -> Iterator[int]:
    for n in range(max(lo, 1), hi + 1):
        if is_squarefree(n):
            yield n


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
