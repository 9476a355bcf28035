"""Geometric sides of the simple Petersson formulas at cubic level N^3.

Truncations carry rigorous tail bounds built from Weil's bound
|S(m, n; c)| <= gcd(m, n, c)^{1/2} c^{1/2} sigma_0(c) and |J_nu(x)| <= (x/2)^nu / nu!.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import arith
from ._kloost import kloosterman_mult, prime_powers_up_to, row_one
from .errors import DomainError
from .specfun.bessel import bessel_j
from .specfun.zeta import partial_zeta

DEFAULT_N_MAX = 1000
DEFAULT_C_RATIO = 60.0  # c_max = ratio * (2 pi / N^{3/2}) * n_max
C_FLOOR = 200
CHUNK = 1 << 21


@dataclass(frozen=True)
class PeterssonTruncation:
    """Modulus cutoff with the tail bound it certifies (filled in by the evaluators)."""

    c_max: int
    tail_bound: float = 0.0

    def __post_init__(self):
        if self.c_max < 1:
            raise DomainError("c_max must be positive")
        if not self.tail_bound >= 0:
            raise DomainError("tail_bound must be nonnegative")


def divisor_tail_sum(Y: float, beta: float) -> float:
    """Upper bound for sum_{c > Y} sigma_0(c) c^{-beta}, Y >= 1, beta > 1.

    Partial summation against sum_{c <= t} sigma_0(c) <= t (log t + 1).
    """
    if beta <= 1:
        raise DomainError("beta must exceed 1")
    Y = max(float(Y), 1.0)
    r = Y ** (1 - beta)
    return beta * (r * (math.log(Y) + 1) / (beta - 1) + r / (beta - 1) ** 2)


def _check(m: int, n: int, N: int, k: int):
    if k < 2:
        raise DomainError("k must be at least 2")
    if N < 2 or not arith.is_squarefree(N):
        raise DomainError(f"N = {N} must be squarefree and > 1")
    if m < 1 or n < 1:
        raise DomainError("m, n must be positive")
    if gcd(m * n, N) != 1:
        raise DomainError(f"need gcd(mn, N) = 1, got m={m}, n={n}, N={N}")


def _bessel_tail(nu: int, X: float, C: int) -> float:
    """sum_{c > C} sigma_0(c) c^{-1/2} (X / 2c)^nu / nu!."""
    return (X / 2) ** nu / math.factorial(nu) * divisor_tail_sum(C, nu + 0.5)


def delta_sharp(m: int, n: int, N: int, k: int, trunc: PeterssonTruncation) -> tuple[float, float]:
    """Truncated root-number weighted Petersson sum Delta^sharp(m, n) and its tail bound."""
    _check(m, n, N, k)
    nu = 2 * k - 1
    cs = np.array([c for c in range(1, trunc.c_max + 1) if gcd(c, N) == 1], dtype=np.int64)
    S = np.empty(cs.size)
    for i, c in enumerate(cs.tolist()):
        nb3 = pow(pow(N % c, -1, c), 3, c) if c > 1 else 0
        S[i] = kloosterman_mult(nb3 * m % c, n, c) if c > 1 else 1.0
    X = 4 * math.pi * math.sqrt(m * n) / N**1.5
    pref = nu * N**1.5 / math.pi
    value = pref * float(np.sum(S / cs * bessel_j(nu, X / cs)))
    tail = pref * math.sqrt(gcd(m, n)) * _bessel_tail(nu, X, trunc.c_max)
    return value, tail


def a_factor(N: int, c: int) -> int:
    """A_N(c) = prod_{p | N} A_p(c), A_p(c) = p - 1 if p | c else -1."""
    out = 1
    for p in arith.prime_divisors(N):
        out *= p - 1 if c % p == 0 else -1
    return out


def delta_star(m: int, n: int, N: int, k: int, trunc: PeterssonTruncation) -> tuple[float, float]:
    """Truncated Delta^star(m, n) (diagonal plus Kloosterman terms of modulus N^2 c)."""
    _check(m, n, N, k)
    nu = 2 * k - 1
    diag = nu * N * N * arith.euler_phi(N) / (2 * math.pi**2) if m == n else 0.0
    cs = np.arange(1, trunc.c_max + 1, dtype=np.int64)
    terms = np.array([a_factor(N, c) * kloosterman_mult(m, n, N * N * c) for c in cs.tolist()])
    X = 4 * math.pi * math.sqrt(m * n) / N**2
    sign = -1.0 if k % 2 else 1.0
    value = diag + sign * nu / math.pi * float(np.sum(terms / cs * bessel_j(nu, X / cs)))
    weil_const = math.sqrt(gcd(m, n)) * N * arith.num_divisors(N * N) * arith.euler_phi(N)
    tail = nu / math.pi * weil_const * _bessel_tail(nu, X, trunc.c_max)
    return value, tail


# The spectral mean assembled from Delta^sharp(1, n^2) ------------------------


@dataclass(frozen=True)
class SharpTable:
    """Delta^sharp(1, n^2) for the n <= n_max prime to N, with per-n c-tail bounds."""

    N: int
    k: int
    c_max: int
    n: np.ndarray
    values: np.ndarray
    c_tails: np.ndarray

    @property
    def n_max(self) -> int:
        return int(self.n[-1])

    def n_tail(self, sigma: float) -> float:
        """Bound for sum_{n > n_max} |Delta^sharp(1, n^2)| n^{-sigma}."""
        return sharp_n_tail(self.N, self.k, self.n_max, sigma)

    def m_sharp(self, s) -> tuple[complex, float]:
        s = complex(s)
        if s.real <= 1.5:
            raise DomainError("the Petersson route needs Re(s) > 3/2")
        z = partial_zeta(2 * s, self.N)
        w = np.exp(-s * np.log(self.n.astype(float)))
        value = z * complex(np.dot(self.values, w))
        bound = abs(z) * (float(np.dot(self.c_tails, np.abs(w))) + self.n_tail(s.real))
        return value, bound


def sharp_n_tail(N: int, k: int, X: int, sigma: float) -> float:
    """Tail over n > X of the absolute bound for Delta^sharp(1, n^2) n^{-sigma}.

    With A = 2 pi / N^{3/2}, split the c-sum at c = A n: terms below use
    |J| <= 1 and sum_{c <= Y} sigma_0(c) c^{-1/2} <= 2 sqrt(Y) log Y + 1, terms
    above use the power bound.  This gives
    |Delta^sharp(1, n^2)| <= P (sqrt(A n) (a log(A n) + b) + 1), then integrate.
    """
    if sigma <= 1.5:
        raise DomainError("sigma must exceed 3/2")
    nu = 2 * k - 1
    A = 2 * math.pi / N**1.5
    if A * X < 1:
        raise DomainError("n_max too small for the tail estimate (need A n_max >= 1)")
    beta = nu + 0.5
    f = beta / math.factorial(nu)
    a = 2 + f / (beta - 1)
    b = f * (1 / (beta - 1) + 1 / (beta - 1) ** 2)
    P = nu * N**1.5 / math.pi
    g = sigma - 1.5
    # integrals over (X, inf) of t^{1/2-sigma}, t^{1/2-sigma} log(A t) and t^{-sigma}
    int_sqrt = X ** (1.5 - sigma) / g
    int_sqrt_log = X ** (1.5 - sigma) * (math.log(A * X) / g + 1 / g**2)
    int_const = X ** (1 - sigma) / (sigma - 1)
    return P * (math.sqrt(A) * (a * int_sqrt_log + b * int_sqrt) + int_const)


def _c_cut(n: np.ndarray, c_max: int, n_max: int) -> np.ndarray:
    return np.maximum(min(C_FLOOR, c_max), np.ceil(c_max * n / n_max).astype(np.int64))


def default_c_max(N: int, n_max: int) -> int:
    return int(math.ceil(DEFAULT_C_RATIO * 2 * math.pi / N**1.5 * n_max))


class _Entries:
    """Flat list of (c, n) pairs with c <= c_cut(n), both prime to N."""

    def __init__(self, N: int, n_max: int, c_max: int):
        self.ns = np.array([n for n in range(1, n_max + 1) if gcd(n, N) == 1], dtype=np.int64)
        self.cut = _c_cut(self.ns, c_max, n_max)
        C = int(self.cut[-1])
        self.cs = np.array([c for c in range(1, C + 1) if gcd(c, N) == 1], dtype=np.int64)
        start = np.searchsorted(self.cut, self.cs, side="left")
        counts = self.ns.size - start
        keep = counts > 0
        self.cs, start, counts = self.cs[keep], start[keep], counts[keep]
        self.offsets = np.concatenate([[0], np.cumsum(counts)])
        E = int(self.offsets[-1])
        base = np.repeat(start - self.offsets[:-1], counts)
        self.n_idx = (np.arange(E, dtype=np.int64) + base).astype(np.int32)
        self.c_flat = np.repeat(self.cs, counts).astype(np.int64)
        self.pos = {int(c): i for i, c in enumerate(self.cs.tolist())}
        self.C = C

    def kloosterman(self, N: int) -> np.ndarray:
        """S(Nbar^3, n^2; c) for every entry."""
        prod = np.ones(self.n_idx.size)
        n2 = self.ns * self.ns
        N3 = N**3
        for p, q in prime_powers_up_to(self.C):
            if N % p == 0:
                continue
            K = row_one(q)
            for r in range(1, self.C // q + 1):
                if r % p == 0:
                    continue
                i = self.pos.get(q * r)
                if i is None:
                    continue
                lo, hi = self.offsets[i], self.offsets[i + 1]
                u = pow(N3 * r * r % q, -1, q)
                j = (u * (n2[self.n_idx[lo:hi]] % q)) % q
                prod[lo:hi] *= K[j]
        return prod


_cache_lock = threading.Lock()
_table_cache: dict[tuple[int, int, int, int], SharpTable] = {}
_kloost_cache: dict[tuple[int, int, int], tuple[_Entries, np.ndarray]] = {}


def _entries_for(N: int, n_max: int, c_max: int) -> tuple[_Entries, np.ndarray]:
    key = (N, n_max, c_max)
    with _cache_lock:
        hit = _kloost_cache.get(key)
    if hit is None:
        ent = _Entries(N, n_max, c_max)
        hit = (ent, ent.kloosterman(N))
        with _cache_lock:
            _kloost_cache.clear()  # keep at most one (large) level resident
            _kloost_cache[key] = hit
    return hit


def sharp_table(N: int, k: int, n_max: int = DEFAULT_N_MAX, c_max: int | None = None, threads: int = 1) -> SharpTable:
    """Delta^sharp(1, n^2) for n <= n_max, truncating c at c_max * n / n_max (>= C_FLOOR)."""
    _check(1, 1, N, k)
    if c_max is None:
        c_max = default_c_max(N, n_max)
    key = (N, k, n_max, c_max)
    with _cache_lock:
        if key in _table_cache:
            return _table_cache[key]
    ent, S = _entries_for(N, n_max, c_max)
    nu = 2 * k - 1
    A = 2 * math.pi / N**1.5
    nsz = ent.ns.size
    bounds = list(range(0, S.size, CHUNK)) + [S.size]

    def chunk(i: int) -> np.ndarray:
        lo, hi = bounds[i], bounds[i + 1]
        idx = ent.n_idx[lo:hi]
        c = ent.c_flat[lo:hi].astype(float)
        x = 2 * A * ent.ns[idx] / c
        return np.bincount(idx, weights=S[lo:hi] * bessel_j(nu, x) / c, minlength=nsz)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(chunk, range(len(bounds) - 1)))
    else:
        parts = [chunk(i) for i in range(len(bounds) - 1)]
    total = np.zeros(nsz)
    for part in parts:  # fixed order: reproducible regardless of thread count
        total += part
    pref = nu * N**1.5 / math.pi
    c_tails = np.array([pref * _bessel_tail(nu, 2 * A * n, int(cut)) for n, cut in zip(ent.ns.tolist(), ent.cut.tolist())])
    table = SharpTable(N, k, c_max, ent.ns, pref * total, c_tails)
    with _cache_lock:
        _table_cache[key] = table
    return table


def m_sharp_via_petersson(s, N: int, k: int, n_max: int = DEFAULT_N_MAX, trunc: PeterssonTruncation | None = None, threads: int = 1) -> tuple[complex, float]:
    """zeta^(N)(2s) sum_{(n, N) = 1} Delta^sharp(1, n^2) n^{-s}, truncated, with an error bound."""
    s = complex(s)
    if s.real <= 1.5:
        raise DomainError("the double series converges absolutely only for Re(s) > 3/2")
    c_max = trunc.c_max if trunc is not None else None
    return sharp_table(N, k, n_max, c_max, threads).m_sharp(s)
