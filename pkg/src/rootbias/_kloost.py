"""Kloosterman sums at prime-power moduli, assembled multiplicatively.

For c = q r with gcd(q, r) = 1, S(m, n; c) = S(m rbar^2, n; q) S(m qbar^2, n; r),
and for a unit a modulo q, S(a, b; q) = S(1, a b; q).  So one table
S(1, j; q), 0 <= j < q, per prime power q serves every modulus c it divides.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from . import arith
from ._vec import inverse_table, primes_up_to

TWO_PI_I = 2j * math.pi


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    qs = arith.prime_divisors(p - 1)
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    return g


def _powers(g: int, p: int) -> np.ndarray:
    """g^t mod p for 0 <= t < p - 1, vectorised through a baby-step/giant-step split."""
    n = p - 1
    B = max(1, math.isqrt(n))
    small = np.empty(B, dtype=np.int64)
    x = 1
    for j in range(B):
        small[j] = x
        x = x * g % p
    n_big = -(-n // B)
    big = np.empty(n_big, dtype=np.int64)
    y = 1
    for i in range(n_big):
        big[i] = y
        y = y * x % p  # x = g^B
    return ((big[:, None] * small[None, :]) % p).ravel()[:n]


def unit_inverses(q: int) -> tuple[np.ndarray, np.ndarray]:
    """Units a modulo q and their inverses (both int64); fast path for odd primes."""
    if q <= 2:
        return np.ones(1, dtype=np.int64) % q, np.ones(1, dtype=np.int64) % q
    f = arith.factor(q)
    if f.factors[0] == (q, 1):
        pw = _powers(_primitive_root(q), q)
        n = q - 1
        return pw, pw[(-np.arange(n)) % n]
    return inverse_table(q, arith.euler_phi(q))


@lru_cache(maxsize=2048)
def _cached_units(q: int) -> tuple[np.ndarray, np.ndarray]:
    a, inv = unit_inverses(q)
    a.setflags(write=False)
    inv.setflags(write=False)
    return a, inv


def row_one(q: int) -> np.ndarray:
    """Real array K with K[j] = S(1, j; q)."""
    if q == 1:
        return np.ones(1)
    a, inv = unit_inverses(q)
    w = np.zeros(q, dtype=complex)
    w[inv] = np.exp(TWO_PI_I * a / q)
    return (q * np.fft.ifft(w)).real


def kloosterman_pp(m: int, n: int, q: int) -> float:
    """S(m, n; q) for a prime power q by direct summation."""
    if q == 1:
        return 1.0
    a, inv = _cached_units(q)
    phase = (a * (m % q) + inv * (n % q)) % q
    return float(np.cos(2 * math.pi * phase / q).sum())


def kloosterman_mult(m: int, n: int, c: int) -> float:
    """S(m, n; c) through its prime-power factors."""
    out = 1.0
    for p, e in arith.factor(c).factors:
        q = p**e
        rb = pow(c // q, -1, q)
        out *= kloosterman_pp(m * rb * rb % q, n, q)
        if out == 0.0:
            break
    return out


def prime_powers_up_to(C: int) -> list[tuple[int, int]]:
    """(p, q) pairs with q = p^e <= C, e >= 1, ordered by p then e."""
    out = []
    for p in primes_up_to(C).tolist():
        q = p
        while q <= C:
            out.append((p, q))
            q *= p
    return out
