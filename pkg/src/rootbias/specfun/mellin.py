"""Mellin-Barnes integrals: the Bessel representation and the kernel I_{k,s}(x).

The integrals are taken along ``w(t) = sigma + i t + direction * bend * (sqrt(1 + t^2) - 1)``,
a hyperbola that leaves the vertical line Re(w) = sigma and bends into the
half-plane where the integrand decays exponentially.  The region swept out
between the line and the hyperbola contains no poles (checked), so the value
is that of the vertical-line integral.  On the vertical line itself the
integrands only decay like a power of |t|, which caps trapezoid accuracy at
roughly t_max^(-1/2 - Re s).

The trapezoid rule on the smooth parametrisation converges geometrically in
the step.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from .gamma import gamma, log_sin, loggamma
from .hypergeometric import gauss_2f1

LOG_DROP = 40.0
T_CAP = 20000.0


@dataclass(frozen=True)
class ContourSpec:
    sigma: float
    t_max: float = 200.0
    step: float = 0.02
    bend: float = 1.0

    def __post_init__(self):
        if not self.t_max > 0:
            raise DomainError("t_max must be positive")
        if not self.step > 0:
            raise DomainError("step must be positive")
        if self.step > self.t_max / 100:
            raise DomainError("step must be at most t_max / 100")
        if self.bend < 0:
            raise DomainError("bend must be non-negative")


def _path(contour: ContourSpec, direction: int, t: np.ndarray):
    root = np.sqrt(1.0 + t * t)
    d = direction * contour.bend
    w = contour.sigma + 1j * t + d * (root - 1.0)
    dw = 1j + d * t / root
    return w, dw


def _trapezoid(log_integrand, contour: ContourSpec, direction: int) -> complex:
    n = int(round(contour.t_max / contour.step))
    t = np.linspace(-contour.t_max, contour.t_max, 2 * n + 1)
    w, dw = _path(contour, direction, t)
    vals = np.exp(log_integrand(w)) * dw
    h = t[1] - t[0]
    return complex(h * (vals.sum() - 0.5 * (vals[0] + vals[-1])))


def _auto_t_max(log_integrand, sigma: float, bend: float, direction: int, step: float) -> float:
    probe = ContourSpec(sigma=sigma, t_max=10.0, step=0.1, bend=bend)
    t0 = np.linspace(-10, 10, 201)
    w, dw = _path(probe, direction, t0)
    peak = float(np.max(np.real(log_integrand(w)) + np.log(np.abs(dw))))
    T = 10.0
    while T < T_CAP:
        t = np.array([-T, T])
        w, dw = _path(probe, direction, t)
        edge = float(np.max(np.real(log_integrand(w)) + np.log(np.abs(dw))))
        if edge < peak - LOG_DROP:
            break
        T *= 1.5
    return max(T, 100 * step)


# Bessel J_{2k-1} -----------------------------------------------------------


def _bessel_log_integrand(k: int, x: float):
    lx = math.log(x / 2)

    def f(w):
        return loggamma(k - 0.5 + w / 2) - loggamma(k + 0.5 - w / 2) - w * lx

    return f


def bessel_contour(k: int, x: float, sigma: float = -0.5, step: float = 0.02, bend: float = 1.0) -> ContourSpec:
    t_max = _auto_t_max(_bessel_log_integrand(k, x), sigma, bend, -1, step)
    return ContourSpec(sigma=sigma, t_max=t_max, step=step, bend=bend)


def bessel_j_mellin_barnes(k: int, x: float, contour: ContourSpec | None = None) -> float:
    """J_{2k-1}(x) from its Mellin-Barnes integral; an oracle for ``bessel_j``."""
    if k < 1:
        raise DomainError("k must be >= 1")
    if not x > 0:
        raise DomainError("x must be positive")
    if contour is None:
        contour = bessel_contour(k, x)
    if not (1 - 2 * k < contour.sigma < 0):
        raise DomainError(f"need 1 - 2k < sigma < 0, got sigma = {contour.sigma}")
    val = _trapezoid(_bessel_log_integrand(k, x), contour, -1)
    return (val / (4j * math.pi)).real


# I_{k,s}(x) ------------------------------------------------------------------


def _cos_half_pi(s: complex) -> complex:
    """cos(pi s / 2), exact at integers."""
    if s.imag == 0 and s.real == round(s.real):
        return complex((1, 0, -1, 0)[int(round(s.real)) % 4])
    return cmath.cos(math.pi * s / 2)


def _check_strip(k: int, s: complex):
    if not (0.5 < s.real < 2 * k):
        raise DomainError(f"need 1/2 < Re(s) < 2k, got s = {s}")


def i_ks(k: int, s, x: float) -> complex:
    """Closed form of I_{k,s}(x) through 2F1 in the three regimes x < 2, x = 2, x > 2."""
    s = complex(s)
    _check_strip(k, s)
    if not x > 0:
        raise DomainError("x must be positive")
    sign = -1.0 if k % 2 else 1.0
    if x > 2:
        return (
            2
            * sign
            * _cos_half_pi(s)
            * gamma(2 * k - s)
            / math.gamma(2 * k)
            * x ** (1 - 2 * k)
            * gauss_2f1(k - s / 2, k + 0.5 - s / 2, 2 * k, 4 / x**2)
        )
    if x == 2:
        return (
            sign
            * cmath.exp(s * math.log(2))
            / math.sqrt(math.pi)
            * _cos_half_pi(s)
            * gamma(2 * k - s)
            * gamma(s - 0.5)
            / gamma(2 * k + s - 1)
        )
    return (
        gamma(k - s / 2)
        / gamma(k + s / 2)
        * cmath.exp((1 - s) * math.log(x))
        * gauss_2f1(k - s / 2, 1 - k - s / 2, 0.5, x * x / 4)
    )


def _iks_log_integrand(k: int, s: complex, x: float):
    lx = math.log(x)

    def f(w):
        return (
            loggamma(k - 0.5 + w / 2)
            - loggamma(k + 0.5 - w / 2)
            + loggamma(1 - s - w)
            + log_sin(np.pi * (s + w) / 2)
            + w * lx
        )

    return f


def iks_contour(k: int, s, x: float, step: float = 0.02, bend: float = 1.0) -> ContourSpec:
    s = complex(s)
    sigma = 0.5 * ((1 - 2 * k) + (1 - s.real))
    if x == 2:
        return ContourSpec(sigma=sigma, t_max=T_CAP, step=step, bend=0.0)
    direction = 1 if x < 2 else -1
    t_max = _auto_t_max(_iks_log_integrand(k, s, x), sigma, bend, direction, step)
    return ContourSpec(sigma=sigma, t_max=t_max, step=step, bend=bend)


def i_ks_quadrature(k: int, s, x: float, contour: ContourSpec | None = None) -> complex:
    """I_{k,s}(x) by direct quadrature of its Mellin-Barnes integral."""
    s = complex(s)
    _check_strip(k, s)
    if not x > 0:
        raise DomainError("x must be positive")
    if contour is None:
        contour = iks_contour(k, s, x)
    if not (1 - 2 * k < contour.sigma < 1 - s.real):
        raise DomainError(f"need 1 - 2k < sigma < 1 - Re(s), got sigma = {contour.sigma}")
    direction = 1 if x < 2 else -1
    if contour.bend > 0 and direction > 0:
        # first pole of Gamma(1 - s - w) sits at w = 1 - s; it must stay right of the path
        t = -s.imag
        path_re = contour.sigma + contour.bend * (math.sqrt(1 + t * t) - 1)
        if not (1 - s.real) > path_re:
            raise DomainError("bent contour would enclose the pole at w = 1 - s; reduce bend")
    val = _trapezoid(_iks_log_integrand(k, s, x), contour, direction)
    return val / (2j * math.pi)
