"""Imaginary quadratic data: discriminant decomposition, class numbers, units, L(s, chi_D)."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from ._vec import legendre_many, primes_up_to, residue_symbol_table
from .arith import is_squarefree, kronecker
from .errors import DomainError
from .specfun.zeta import hurwitz_zeta_regular

# Above this |D| the Hurwitz combination (|D| zeta evaluations) gives way
# to a truncated Euler product when Re(s) > 1.
HURWITZ_MAX_ABS_D = 20000
EULER_PRIME_BOUND = 30000


@dataclass(frozen=True)
class QuadDiscriminant:
    delta: int
    fundamental: int
    conductor: int

    def __post_init__(self):
        if self.conductor < 1:
            raise DomainError("conductor must be positive")
        if self.fundamental * self.conductor**2 != self.delta:
            raise DomainError(f"{self.fundamental} * {self.conductor}^2 != {self.delta}")
        if not is_fundamental(self.fundamental):
            raise DomainError(f"{self.fundamental} is not a fundamental discriminant")


def is_fundamental(D: int) -> bool:
    if D == 1:
        return True
    if D % 4 == 1:
        return is_squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


def _icbrt(n: int) -> int:
    r = int(round(n ** (1 / 3)))
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def square_part(m: int) -> int:
    """Largest q0 with q0^2 | m (m >= 1).

    Only primes up to m^(1/3) are trial-divided: what remains has at most two
    prime factors, both larger, and carries a square exactly when it is one.
    """
    if m < 1:
        raise DomainError("square_part needs m >= 1")
    q0 = 1
    for p in primes_up_to(_icbrt(m) + 1).tolist():
        if p * p * p > m:
            break
        while m % (p * p) == 0:
            m //= p * p
            q0 *= p
        if m % p == 0:
            m //= p
    r = isqrt(m)
    if r * r == m:
        q0 *= r
    return q0


def _split(delta: int, q0: int) -> tuple[int, int]:
    m = delta // (q0 * q0)
    if m % 4 == 1:
        return m, q0
    return 4 * m, q0 // 2


def decompose(delta: int) -> QuadDiscriminant:
    """Write ``delta = D q^2`` with ``D`` fundamental."""
    delta = int(delta)
    if delta == 0 or delta % 4 in (2, 3):
        raise DomainError(f"{delta} is not a discriminant (need delta = 0, 1 mod 4, nonzero)")
    D, q = _split(delta, square_part(abs(delta)))
    return QuadDiscriminant(delta, D, q)


def decompose_many(deltas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``decompose`` for int64 arrays with |delta| < 2^52; returns (D, q)."""
    delta = np.asarray(deltas, dtype=np.int64)
    if delta.size == 0:
        return delta.copy(), delta.copy()
    if np.any(delta == 0) or np.any(np.mod(delta, 4) >= 2):
        raise DomainError("all entries must be nonzero discriminants")
    m = np.abs(delta)
    top = int(m.max())
    if top >= 2**52:
        raise DomainError("vectorised decomposition limited to |delta| < 2^52")
    q0 = np.ones_like(m)
    for p in primes_up_to(_icbrt(top) + 1).tolist():
        pp = p * p
        hit = m % pp == 0
        while hit.any():
            m = np.where(hit, m // pp, m)
            q0 = np.where(hit, q0 * p, q0)
            hit = m % pp == 0
        # strip a single remaining p so the cofactor test below stays exact
        m = np.where(m % p == 0, m // p, m)
    r = np.rint(np.sqrt(m.astype(float))).astype(np.int64)
    q0 = np.where(r * r == m, q0 * r, q0)
    core = delta // (q0 * q0)
    one = np.mod(core, 4) == 1
    D = np.where(one, core, 4 * core)
    q = np.where(one, q0, q0 // 2)
    return D, q


def _check_negative_fundamental(D: int):
    if D >= 0 or not is_fundamental(D):
        raise DomainError(f"{D} is not a negative fundamental discriminant")


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced primitive forms (a, b, c) of discriminant D < 0."""
    forms = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                forms.append((a, b, c))
        a += 1
    return forms


def class_number(D: int) -> int:
    _check_negative_fundamental(D)
    return len(reduced_forms(D))


def unit_count(D: int) -> int:
    _check_negative_fundamental(D)
    return {-3: 6, -4: 4}.get(D, 2)


def _check_L_args(D: int):
    if D == 1:
        raise DomainError("trivial character: L(s, chi_1) = zeta(s) is out of scope")
    if not is_fundamental(D):
        raise DomainError(f"{D} is not a fundamental discriminant")


def character_table(D: int) -> np.ndarray:
    n = abs(D)
    return np.array([kronecker(D, a) for a in range(1, n + 1)], dtype=float)


def _L_hurwitz(s: complex, D: int) -> complex:
    n = abs(D)
    chi = character_table(D)
    alpha = np.arange(1, n + 1, dtype=float) / n
    keep = chi != 0
    # sum chi(a) = 0, so the pole parts cancel and the regular parts suffice
    z = hurwitz_zeta_regular(s, alpha[keep])
    return complex(cmath.exp(-s * math.log(n)) * np.dot(chi[keep], z))


def euler_tail_bound(sigma: float, P: int) -> float:
    """Relative error bound for the Euler product over primes <= P (sigma > 1)."""
    t = P ** (1 - sigma) / (sigma - 1)
    return math.expm1(t)


def _chi_at_two(D: np.ndarray) -> np.ndarray:
    r = np.mod(D, 8)
    return np.where(r % 2 == 0, 0, np.where((r == 1) | (r == 7), 1, -1))


def euler_characters(D: np.ndarray, P: int = EULER_PRIME_BOUND) -> np.ndarray:
    """Matrix of chi_D(p) (float, rows = entries of D, columns = primes <= P)."""
    D = np.asarray(D, dtype=np.int64)
    odd, offsets, flat = residue_symbol_table(P)
    V = np.empty((D.size, odd.size + 1), dtype=float)
    V[:, 0] = _chi_at_two(D)
    block = max(1, 2_000_000 // max(1, odd.size))
    for i in range(0, D.size, block):
        res = np.mod(D[i : i + block, None], odd[None, :])
        V[i : i + block, 1:] = flat[offsets[None, :] + res]
    return V


def euler_product(s, V: np.ndarray, P: int = EULER_PRIME_BOUND) -> tuple[np.ndarray, float]:
    """prod_{p <= P} (1 - chi(p) p^{-s})^{-1} from a character matrix, with relative error bound."""
    s = complex(s)
    if s.real <= 1:
        raise DomainError("the Euler product needs Re(s) > 1")
    ps = np.exp(-s * np.log(primes_up_to(P).astype(float)))
    lp_plus, lp_minus = np.log1p(-ps), np.log1p(ps)
    # log(1 - chi x) = chi (l+ - l-)/2 + chi^2 (l+ + l-)/2 for chi in {-1, 0, 1}
    odd_part = (lp_plus - lp_minus) / 2
    even_part = (lp_plus + lp_minus) / 2
    W = np.abs(V)
    logs = V @ odd_part.real + W @ even_part.real + 1j * (V @ odd_part.imag + W @ even_part.imag)
    return np.exp(-logs), euler_tail_bound(s.real, P)


def dirichlet_L_euler_many(s, D: np.ndarray, P: int = EULER_PRIME_BOUND) -> tuple[np.ndarray, float]:
    """L(s, chi_D) for an array of discriminants by the Euler product over p <= P.

    Returns values and the relative error bound; needs Re(s) > 1.
    """
    if complex(s).real <= 1:
        raise DomainError("the Euler product needs Re(s) > 1")
    D = np.asarray(D, dtype=np.int64)
    out = np.empty(D.shape, dtype=complex)
    block = max(1, 4_000_000 // primes_up_to(P).size)
    rel = 0.0
    for i in range(0, D.size, block):
        out[i : i + block], rel = euler_product(s, euler_characters(D[i : i + block], P), P)
    return out, rel


def dirichlet_L(s, D: int, method: str = "auto") -> complex:
    """L(s, chi_D) for a fundamental discriminant D != 1.

    ``method`` is "hurwitz" (any s), "euler" (Re s > 1 only, truncated at
    primes <= EULER_PRIME_BOUND) or "auto", which uses Hurwitz unless |D| is
    large and Re(s) > 1.
    """
    s = complex(s)
    D = int(D)
    _check_L_args(D)
    if method == "auto":
        method = "euler" if abs(D) > HURWITZ_MAX_ABS_D and s.real > 1 else "hurwitz"
    if method == "hurwitz":
        return _L_hurwitz(s, D)
    if method == "euler":
        vals, _ = dirichlet_L_euler_many(s, np.array([D]))
        return complex(vals[0])
    raise DomainError(f"unknown method {method!r}")


__all__ = [
    "QuadDiscriminant",
    "class_number",
    "decompose",
    "decompose_many",
    "dirichlet_L",
    "dirichlet_L_euler_many",
    "euler_characters",
    "euler_product",
    "euler_tail_bound",
    "is_fundamental",
    "legendre_many",
    "reduced_forms",
    "square_part",
    "unit_count",
]
