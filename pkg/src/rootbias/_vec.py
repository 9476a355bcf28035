"""Vectorised integer helpers used by the heavy summation loops."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=8)
def primes_up_to(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


@lru_cache(maxsize=8)
def num_divisors_table(n: int) -> np.ndarray:
    """sigma_0(c) for 0 <= c <= n (entry 0 unused)."""
    d = np.zeros(n + 1, dtype=np.int64)
    for k in range(1, n + 1):
        d[k::k] += 1
    return d


@lru_cache(maxsize=8)
def totient_table(n: int) -> np.ndarray:
    phi = np.arange(n + 1, dtype=np.int64)
    for p in primes_up_to(n):
        phi[p::p] -= phi[p::p] // p
    return phi


def powmod(base, exp, mod) -> np.ndarray:
    """Elementwise ``base**exp % mod`` with broadcasting; operands stay below 3e9."""
    base, exp, mod = np.broadcast_arrays(
        np.asarray(base, dtype=np.int64), np.asarray(exp, dtype=np.int64), np.asarray(mod, dtype=np.int64)
    )
    base = base % mod
    exp = exp.copy()
    result = np.ones_like(base) % mod
    while np.any(exp > 0):
        odd = (exp & 1).astype(bool)
        result = np.where(odd, (result * base) % mod, result)
        base = (base * base) % mod
        exp >>= 1
    return result


def inverse_table(c: int, phi_c: int) -> tuple[np.ndarray, np.ndarray]:
    """Primitive residues a mod c and their inverses, both as int64 arrays."""
    if c == 1:
        return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64)
    a = np.arange(1, c, dtype=np.int64)
    a = a[np.gcd(a, c) == 1]
    return a, powmod(a, phi_c - 1, c)


def legendre_many(D: int, primes: np.ndarray) -> np.ndarray:
    """Kronecker symbol (D/p) for an array of odd primes."""
    r = np.asarray([D % int(p) for p in primes], dtype=np.int64) if D.bit_length() > 62 else np.mod(D, primes)
    v = powmod(r, (primes - 1) // 2, primes)
    out = np.where(v == 1, 1, np.where(v == 0, 0, -1))
    return out.astype(np.int64)


@lru_cache(maxsize=4)
def residue_symbol_table(P: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Legendre symbols (r/p) for all odd primes p <= P and 0 <= r < p, concatenated.

    Returns (odd_primes, offsets, flat) with (r/p) = flat[offsets[i] + r] for p = odd_primes[i].
    """
    odd = primes_up_to(P)[1:]
    offsets = np.zeros(odd.size, dtype=np.int64)
    if odd.size:
        offsets[1:] = np.cumsum(odd)[:-1]
    flat = np.full(int(odd.sum()), -1, dtype=np.int8)
    for i, p in enumerate(odd.tolist()):
        block = flat[offsets[i] : offsets[i] + p]
        r = np.arange(1, (p + 1) // 2, dtype=np.int64)
        block[(r * r) % p] = 1
        block[0] = 0
    for arr in (odd, offsets, flat):
        arr.setflags(write=False)
    return odd, offsets, flat
