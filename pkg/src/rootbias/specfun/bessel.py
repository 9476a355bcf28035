"""Bessel J of non-negative integer order for real positive arguments.

Three regimes, all vectorised over ``x``:

* ascending series with Neumaier summation for x <= 8;
* Miller backward recurrence normalised by J_0 + 2 sum J_{2m} = 1 up to
  ``asymptotic_threshold(order)``;
* Hankel asymptotic expansion beyond.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError

SERIES_MAX = 8.0


def asymptotic_threshold(order: int) -> float:
    return max(300.0, 30.0 * order)


def _series(order: int, x: np.ndarray) -> np.ndarray:
    h2 = (x / 2.0) ** 2
    term = np.exp(order * np.log(x / 2.0) - math.lgamma(order + 1))
    total = term.copy()
    comp = np.zeros_like(x)
    n_terms = int(np.max(h2, initial=0.0) * 2.7) + 12 if x.size else 0
    for m in range(1, n_terms + 1):
        term = -term * h2 / (m * (m + order))
        t = total + term
        comp += np.where(np.abs(total) >= np.abs(term), (total - t) + term, (term - t) + total)
        total = t
        if not np.any(np.abs(term) > 1e-18 * np.abs(total)):
            break
    return total + comp


def _miller(order: int, x: np.ndarray) -> np.ndarray:
    xmax = float(np.max(x))
    start = int(max(xmax, order) + 30 + 10 * math.sqrt(max(xmax, order)))
    start += start % 2
    jp1 = np.zeros_like(x)
    j = np.full_like(x, 1e-300)
    norm = np.zeros_like(x)
    result = np.zeros_like(x)
    big = 1e250
    for m in range(start, 0, -1):
        jm1 = (2.0 * m / x) * j - jp1
        jp1, j = j, jm1
        if (m - 1) == order:
            result = j.copy()
        if (m - 1) % 2 == 0 and m - 1 > 0:
            norm += 2.0 * j
        over = np.abs(j) > big
        if np.any(over):
            scale = np.where(over, 1.0 / big, 1.0)
            j *= scale
            jp1 *= scale
            norm *= scale
            result *= scale
    norm += j
    return result / norm


def _hankel(order: int, x: np.ndarray) -> np.ndarray:
    mu = 4.0 * order * order
    chi = x - (0.5 * order + 0.25) * math.pi
    P = np.ones_like(x)
    Q = np.zeros_like(x)
    term = np.ones_like(x)
    for k in range(1, 60):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if k % 2 == 1:
            Q += (-1) ** ((k - 1) // 2) * term
        else:
            P += (-1) ** (k // 2) * term
        if np.all(np.abs(term) < 1e-17):
            break
    return np.sqrt(2.0 / (math.pi * x)) * (P * np.cos(chi) - Q * np.sin(chi))


def bessel_j(order: int, x):
    """J_order(x) for integer order >= 0 and x > 0 (scalar or array)."""
    if order < 0 or int(order) != order:
        raise DomainError("order must be a non-negative integer")
    order = int(order)
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa <= 0):
        raise DomainError("bessel_j needs x > 0")
    out = np.empty_like(xa)
    small = xa <= SERIES_MAX
    large = xa > asymptotic_threshold(order)
    mid = ~small & ~large
    if np.any(small):
        out[small] = _series(order, xa[small])
    if np.any(mid):
        idx = np.nonzero(mid)[0]
        # group by magnitude so one start order serves a group
        idx = idx[np.argsort(xa[idx])]
        xs = xa[idx]
        edges = np.searchsorted(xs, np.geomspace(SERIES_MAX, asymptotic_threshold(order), 12))
        for lo, hi in zip(np.r_[0, edges], np.r_[edges, len(xs)]):
            if hi > lo:
                out[idx[lo:hi]] = _miller(order, xs[lo:hi])
    if np.any(large):
        out[large] = _hankel(order, xa[large])
    return float(out[0]) if scalar else out


def bessel_envelope(order: int, x):
    """Classical bound |J_order(x)| <= min(1, (x/2)^order / order!)."""
    x = np.asarray(x, dtype=float)
    return np.minimum(1.0, np.exp(order * np.log(x / 2.0) - math.lgamma(order + 1)))
