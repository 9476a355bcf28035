"""Gauss hypergeometric series 2F1(a, b; c; z) inside the unit disc."""

from __future__ import annotations

import numpy as np

from ..errors import ConvergenceError, DomainError

Z_LIMIT = 1 - 1e-6
MAX_TERMS = 1_000_000


def _check_c(c: complex):
    if c.imag == 0 and c.real <= 0 and c.real == round(c.real):
        raise DomainError("c must not be a non-positive integer")


def gauss_2f1(a, b, c, z) -> complex:
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    _check_c(c)
    if abs(z) > Z_LIMIT:
        raise DomainError(f"|z| = {abs(z)} too close to 1; only the disc |z| <= 1 - 1e-6 is supported")
    total = 1.0 + 0j
    term = 1.0 + 0j
    quiet = 0
    for n in range(MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if term == 0:
            return total
        if abs(term) < 1e-16 * abs(total):
            quiet += 1
            if quiet >= 3:
                return total
        else:
            quiet = 0
    raise ConvergenceError("2F1 series hit the term cap", partial=total)


def gauss_2f1_array(a, b, c, z: np.ndarray) -> np.ndarray:
    """Vectorised over ``z`` (same parameters); meant for small |z|."""
    a, b, c = complex(a), complex(b), complex(c)
    _check_c(c)
    z = np.asarray(z, dtype=complex)
    if z.size and np.max(np.abs(z)) > Z_LIMIT:
        raise DomainError("|z| too close to 1")
    total = np.ones(z.shape, dtype=complex)
    term = np.ones(z.shape, dtype=complex)
    for n in range(MAX_TERMS):
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1))) * z
        total += term
        if not np.any(np.abs(term) >= 1e-17 * np.abs(total)):
            return total
    raise ConvergenceError("2F1 series hit the term cap", partial=total)


def gauss_2f1_abs_majorant(a, b, c, z: float) -> float:
    """sum |(a)_n (b)_n / ((c)_n n!)| |z|^n, an upper bound for |2F1| on |w| <= |z|."""
    a, b, c = complex(a), complex(b), complex(c)
    total = 1.0
    term = 1.0
    for n in range(MAX_TERMS):
        term *= abs((a + n) * (b + n) / ((c + n) * (n + 1))) * abs(z)
        total += term
        if term < 1e-17 * total:
            return total
    raise ConvergenceError("majorant series hit the term cap", partial=total)
