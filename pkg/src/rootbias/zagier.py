"""Kloosterman sums, the square-root count rho(c, Delta) and Zagier's L(s, Delta)."""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from math import gcd

import numpy as np

from . import arith
from ._vec import inverse_table, primes_up_to
from .errors import DomainError
from .quadratic import (
    HURWITZ_MAX_ABS_D,
    decompose,
    decompose_many,
    dirichlet_L,
    dirichlet_L_euler_many,
)
from .specfun.zeta import partial_zeta

TWO_PI_I = 2j * math.pi


# Kloosterman sums ----------------------------------------------------------


@lru_cache(maxsize=4096)
def _inverses(c: int) -> tuple[np.ndarray, np.ndarray]:
    a, inv = inverse_table(c, arith.euler_phi(c))
    a.setflags(write=False)
    inv.setflags(write=False)
    return a, inv


def kloosterman(m: int, n: int, c: int) -> complex:
    """S(m, n; c) = sum over a mod c, gcd(a, c) = 1, of e((a m + abar n) / c)."""
    if c < 1:
        raise DomainError("modulus must be positive")
    if c == 1:
        return 1.0 + 0j
    a, inv = _inverses(c)
    phase = (a * (m % c) + inv * (n % c)) % c
    return complex(np.exp(TWO_PI_I * phase / c).sum())


def kloosterman_real(m: int, n: int, c: int) -> float:
    """S(m, n; c) as a real number, after checking the imaginary part cancels."""
    val = kloosterman(m, n, c)
    if abs(val.imag) > 1e-9 * c:
        raise ArithmeticError(f"S({m},{n};{c}) has imaginary part {val.imag}")
    return val.real


def kloosterman_row(m: int, c: int) -> np.ndarray:
    """Real array T with T[j] = S(m, j; c) for 0 <= j < c, via one FFT."""
    if c == 1:
        return np.ones(1)
    a, inv = _inverses(c)
    w = np.zeros(c, dtype=complex)
    w[inv] = np.exp(TWO_PI_I * ((a * (m % c)) % c) / c)
    return (c * np.fft.ifft(w)).real


def weil_bound(m: int, n: int, c: int) -> float:
    return math.sqrt(gcd(gcd(m, n), c)) * math.sqrt(c) * arith.num_divisors(c)


# rho(c, Delta) ---------------------------------------------------------------


def rho(c: int, delta: int) -> int:
    """#{a mod 2c : a^2 = delta mod 4c}, by brute force."""
    if c < 1:
        raise DomainError("c must be positive")
    if delta % 4 in (2, 3):
        return 0
    a = np.arange(2 * c, dtype=np.int64)
    return int(np.count_nonzero((a * a - delta) % (4 * c) == 0))


def rho_table(delta: int, c_max: int) -> np.ndarray:
    """rho(c, delta) for 0 <= c <= c_max (entry 0 unused), using multiplicativity in c.

    Odd primes p not dividing delta contribute 1 + (delta/p) at every power;
    powers of the remaining primes are counted directly.
    """
    out = np.ones(c_max + 1, dtype=np.int64)
    out[0] = 0
    if delta % 4 in (2, 3):
        out[1:] = 0
        return out
    for p in primes_up_to(c_max).tolist():
        if p != 2 and delta % p:
            out[p::p] *= 1 + arith.kronecker(delta, p)
            continue
        idx_len = c_max // p
        loc = np.full(idx_len, rho(p, delta), dtype=np.int64)
        pe = p * p
        step = p
        while pe <= c_max:
            loc[step - 1 :: step] = rho(pe, delta)
            pe *= p
            step *= p
        out[p::p] *= loc
    return out


# Zagier L-function -----------------------------------------------------------


def _conductor_factor(s: complex, D: int, q: int) -> complex:
    """sum_{d | q} mu(d) chi_D(d) sigma_{1-2s}(q/d) d^{-s}."""
    if q == 1:
        return 1.0 + 0j
    total = 0j
    for d in arith.divisors(q):
        mu = arith.mobius(d)
        if mu == 0:
            continue
        chi = arith.kronecker(D, d)
        if chi == 0:
            continue
        total += mu * chi * arith.sigma(1 - 2 * s, q // d) * cmath.exp(-s * math.log(d))
    return total


def _check_delta(delta: int):
    if delta == 0 or (delta > 0 and arith.is_square(delta)):
        raise DomainError(f"Delta = {delta} is zero or a square; only non-square Delta are supported")


def zagier_L(s, delta: int) -> complex:
    """L(s, Delta) through L(s, chi_D) and the conductor correction."""
    s = complex(s)
    delta = int(delta)
    _check_delta(delta)
    if delta % 4 in (2, 3):
        return 0j
    qd = decompose(delta)
    return dirichlet_L(s, qd.fundamental) * _conductor_factor(s, qd.fundamental, qd.conductor)


def check_restriction(delta: int, N: int) -> None:
    """Raise unless N | D and gcd(N, q) = 1, the case where L^(N)(s, Delta) = L(s, Delta)."""
    qd = decompose(delta)
    if qd.fundamental % N or gcd(N, qd.conductor) != 1:
        raise DomainError(f"Delta = {delta}: need N | D and gcd(N, q) = 1 for N = {N}, got D={qd.fundamental}, q={qd.conductor}")


def zagier_L_restricted(s, delta: int, N: int) -> complex:
    """L^(N)(s, Delta), available only when it coincides with L(s, Delta)."""
    check_restriction(delta, N)
    return zagier_L(s, delta)


def zagier_L_many(s, deltas: np.ndarray, N: int | None = None) -> tuple[np.ndarray, float]:
    """Vectorised ``zagier_L`` over an int64 array of non-square discriminants.

    Returns the values and a relative error bound (zero when every L(s, chi_D)
    came from the Hurwitz route).  If ``N`` is given, the restriction
    hypothesis of ``check_restriction`` is verified for every entry.
    """
    s = complex(s)
    deltas = np.asarray(deltas, dtype=np.int64)
    pos = deltas[deltas >= 0]
    if pos.size:
        r = np.rint(np.sqrt(pos.astype(float))).astype(np.int64)
        if np.any(r * r == pos):
            raise DomainError("zero or square Delta in input; only non-square Delta are supported")
    D, q = decompose_many(deltas)
    if N is not None:
        if np.any(D % N) or np.any(np.gcd(q, N) != 1):
            raise DomainError(f"restriction hypothesis N | D, gcd(N, q) = 1 fails for N = {N}")
    out = np.empty(deltas.shape, dtype=complex)
    big = np.abs(D) > HURWITZ_MAX_ABS_D
    rel = 0.0
    if big.any():
        if s.real <= 1:
            raise DomainError(f"|D| > {HURWITZ_MAX_ABS_D} needs Re(s) > 1 (Euler product)")
        vals, rel = dirichlet_L_euler_many(s, D[big])
        out[big] = vals
    small = np.nonzero(~big)[0]
    cache: dict[int, complex] = {}
    for i in small:
        Di = int(D[i])
        if Di not in cache:
            cache[Di] = dirichlet_L(s, Di, method="hurwitz")
        out[i] = cache[Di]
    for i in np.nonzero(q > 1)[0]:
        out[i] *= _conductor_factor(s, int(D[i]), int(q[i]))
    return out, rel


def zagier_L_series(s, delta: int, c_max: int, N: int = 1) -> complex:
    """zeta^(N)(2s)/zeta^(N)(s) * sum_{c <= c_max, (c, N) = 1} rho(c, Delta) c^{-s}."""
    s = complex(s)
    if s.real <= 1:
        raise DomainError("the rho-series needs Re(s) > 1")
    if c_max < 1000:
        raise DomainError("c_max must be at least 1000")
    if delta % 4 in (2, 3):
        return 0j
    r = rho_table(int(delta), c_max).astype(float)
    c = np.arange(c_max + 1)
    keep = (r != 0) & (np.gcd(c, N) == 1)
    keep[0] = False
    total = np.dot(r[keep], np.exp(-s * np.log(c[keep].astype(float))))
    return complex(partial_zeta(2 * s, N) / partial_zeta(s, N) * total)


def zagier_mean(s, N: int) -> complex:
    """Average of L(s, (n N^2/d)^2 - 4N) over n, for any d | N.

    Only primes p not dividing N contribute, each with the local factor
    (1 - p^{-1-s}) / (1 - p^{-2s}); hence zeta^(N)(2s) / zeta^(N)(1+s).
    """
    s = complex(s)
    return partial_zeta(2 * s, N) / partial_zeta(1 + s, N)


# Twisted sum of Kloosterman sums ----------------------------------------------


def kloosterman_square_sum(m: int, n: int, c: int) -> complex:
    """sum_{a mod c} S(m, a^2; c) e(a n / c), by direct double summation."""
    if c < 1:
        raise DomainError("c must be positive")
    if c == 1:
        return 1.0 + 0j
    b, inv = _inverses(c)
    a = np.arange(c, dtype=np.int64)
    phase = (b[None, :] * (m % c) + inv[None, :] * (a[:, None] ** 2 % c) + a[:, None] * (n % c)) % c
    return complex(np.exp(TWO_PI_I * phase / c).sum())


def kloosterman_square_sum_rho(m: int, n: int, c: int) -> int:
    """c * sum_{d | c} mu(d) rho(c/d, n^2 - 4m)."""
    return c * sum(arith.mobius(d) * rho(c // d, n * n - 4 * m) for d in arith.divisors(c))
