"""Hurwitz zeta by Euler-Maclaurin summation, plus the zeta variants built on it."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from ..arith import prime_divisors
from ..errors import ConvergenceError, DomainError
from .gamma import loggamma


def _bernoulli_even(n_max: int) -> list[float]:
    """B_2, B_4, ..., B_{n_max} divided by their factorials."""
    B = [Fraction(1)]
    for m in range(1, n_max + 1):
        B.append(-sum(math.comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return [float(B[2 * j] / math.factorial(2 * j)) for j in range(1, n_max // 2 + 1)]


# built once; immutable afterwards
_B2J_OVER_FACT = tuple(_bernoulli_even(30))


def _phi1(u):
    """(e^u - 1) / u, stable near 0."""
    u = np.asarray(u, dtype=complex)
    small = np.abs(u) < 1e-3
    safe = np.where(small, 1.0, u)
    series = 1 + u / 2 + u**2 / 6 + u**3 / 24 + u**4 / 120
    return np.where(small, series, (np.exp(safe) - 1) / safe)


def _cutoff(s: complex) -> int:
    if s.real >= 0:
        return int(50 + 2 * abs(s.imag))
    return int(14 + 0.6 * abs(s.imag) + abs(s.real))


def _hurwitz_em(s: complex, alpha: np.ndarray, regular: bool) -> np.ndarray:
    """Euler-Maclaurin evaluation; ``regular`` drops the 1/(s-1) pole part."""
    M = _cutoff(s)
    out = np.zeros(alpha.shape, dtype=complex)
    # chunk over alpha to bound memory
    chunk = max(1, 200000 // M)
    n = np.arange(M, dtype=float)[:, None]
    for i in range(0, alpha.size, chunk):
        a = alpha[i : i + chunk][None, :]
        out[i : i + chunk] = np.exp(-s * np.log(n + a)).sum(axis=0)
    a = M + alpha
    la = np.log(a)
    if regular:
        # ((M+a)^{1-s} - 1)/(s-1) = -log(M+a) * phi1((1-s) log(M+a))
        out += -la * _phi1((1 - s) * la)
    else:
        out += np.exp((1 - s) * la) / (s - 1)
    power = np.exp(-s * la)
    out += power / 2
    power = power / a
    poch = s
    for j, coef in enumerate(_B2J_OVER_FACT, start=1):
        out += coef * poch * power
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        power = power / (a * a)
    return out


def _periodic_terms(beta: np.ndarray, s: complex, tol: float) -> int:
    """Terms needed so the tail of sum e(n beta) n^{-s} is below tol.

    For beta off the integers, partial sums of e(n beta) are bounded by
    1/|sin(pi beta)|, so Abel summation bounds the tail after M terms by
    M^{-sigma} (1 + |s|/sigma) / |sin(pi beta)|; otherwise by M^{1-sigma}/(sigma-1).
    """
    sig = s.real
    plain = (tol * (sig - 1)) ** (-1.0 / (sig - 1))
    sin_min = float(np.min(np.abs(np.sin(np.pi * np.asarray(beta, dtype=float))))) if np.size(beta) else 1.0
    if sin_min > 1e-12:
        abel = (tol * sin_min / (1 + abs(s) / sig)) ** (-1.0 / sig)
        plain = min(plain, abel)
    return max(16, int(math.ceil(plain)))


def _periodic_zeta(beta: np.ndarray, s: complex, tol: float = 1e-17) -> np.ndarray:
    """sum_{n>=1} e(n beta) n^{-s} by direct summation (needs Re s > 1)."""
    if s.real <= 1:
        raise DomainError("periodic zeta series needs Re(s) > 1")
    beta = np.asarray(beta, dtype=float)
    terms = _periodic_terms(beta, s, tol)
    if terms > 20_000_000:
        raise ConvergenceError(f"periodic zeta at Re(s)={s.real} needs {terms} terms")
    out = np.zeros(beta.shape, dtype=complex)
    step = max(1, 4_000_000 // max(1, beta.size))
    for lo in range(1, terms + 1, step):
        n = np.arange(lo, min(terms, lo + step - 1) + 1, dtype=float)
        w = np.exp(-s * np.log(n))
        out += np.exp(2j * np.pi * np.outer(beta, n)) @ w
    return out


def hurwitz_zeta(s, alpha):
    """Hurwitz zeta zeta(s, alpha) for alpha > 0 (scalar or array), s != 1."""
    s = complex(s)
    if s == 1:
        raise DomainError("hurwitz zeta has a simple pole at s = 1")
    scalar = np.ndim(alpha) == 0
    a = np.atleast_1d(np.asarray(alpha, dtype=float))
    if np.any(a <= 0):
        raise DomainError("alpha must be positive")
    if s.real < -3 and np.all(a <= 1):
        out = _hurwitz_reflected(s, a)
    elif s.real < -3 and np.all(a <= 50):
        # zeta(s, a) = zeta(s, b) + sum_{0 <= j < m} (b + j)^{-s} with b = a - m in (0, 1]
        m = np.ceil(a) - 1
        b = a - m
        out = _hurwitz_reflected(s, b)
        for j in range(int(m.max())):
            out = out - np.where(j < m, np.exp(-s * np.log(b + j)), 0)
    else:
        out = _hurwitz_em(s, a, regular=False)
    return complex(out[0]) if scalar else out


def _hurwitz_reflected(s: complex, a: np.ndarray) -> np.ndarray:
    # Hurwitz's formula with 1 - s in place of s
    w = 1 - s
    pre = np.exp(loggamma(w) - w * math.log(2 * math.pi))
    q = np.exp(-0.5j * math.pi * w)
    return pre * (q * _periodic_zeta(a, w) + _periodic_zeta(-a, w) / q)


def hurwitz_zeta_regular(s, alpha):
    """zeta(s, alpha) - 1/(s - 1); finite at s = 1 where it equals -digamma(alpha)."""
    s = complex(s)
    scalar = np.ndim(alpha) == 0
    a = np.atleast_1d(np.asarray(alpha, dtype=float))
    if s.real < -3 and np.all(a <= 1):
        out = _hurwitz_reflected(s, a) - 1 / (s - 1)
    else:
        out = _hurwitz_em(s, a, regular=True)
    return complex(out[0]) if scalar else out


def riemann_zeta(s) -> complex:
    return hurwitz_zeta(s, 1.0)


def partial_zeta(s, N: int) -> complex:
    """zeta(s) with the Euler factors at primes dividing N removed."""
    s = complex(s)
    out = riemann_zeta(s)
    for p in prime_divisors(N):
        out *= 1 - cmath.exp(-s * math.log(p))
    return out


def f_series(beta: float, s, tol: float = 1e-12) -> complex:
    """F(beta, s) = sum_{n>=1} e(n beta) / n^s for Re(s) > 1."""
    s = complex(s)
    if s.real <= 1:
        raise DomainError("F(beta, s) needs Re(s) > 1")
    if float(beta) == round(float(beta)):
        return hurwitz_zeta(s, 1.0)
    return complex(_periodic_zeta(np.array([float(beta)]), s, tol=tol)[0])


def f_series_tail_bound(s, terms: int) -> float:
    """Bound on sum_{n > terms} n^{-Re s}."""
    sig = complex(s).real
    return terms ** (1 - sig) / (sig - 1)
