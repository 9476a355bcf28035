"""Complex gamma function (Lanczos, g=7) with reflection, in log form so that
large imaginary parts neither overflow nor underflow."""

from __future__ import annotations

import numpy as np

from ..errors import DomainError

_G = 7.0
_LANCZOS = np.array(
    [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ]
)
_HALF_LOG_2PI = 0.5 * np.log(2 * np.pi)
_LOG_PI = np.log(np.pi)


def log_sin(z):
    """Principal-ish branch of log(sin z), accurate even when |Im z| is large."""
    z = np.asarray(z, dtype=complex)
    upper = z.imag >= 0
    # sin z = i e^{-iz} (1 - e^{2iz}) / 2 for Im z >= 0, mirrored below
    zu = np.where(upper, z, -z)
    with np.errstate(divide="ignore"):  # exact zeros of sin give -inf, which exp() maps to 0
        out = -1j * zu + np.log(0.5j * (1 - np.exp(2j * zu)))
    # sin(-z) = -sin z
    return np.where(upper, out, out + 1j * np.pi)


def _loggamma_right(z):
    zm = z - 1.0
    acc = np.full(zm.shape, _LANCZOS[0], dtype=complex)
    for i in range(1, len(_LANCZOS)):
        acc = acc + _LANCZOS[i] / (zm + i)
    t = zm + _G + 0.5
    return _HALF_LOG_2PI + (zm + 0.5) * np.log(t) - t + np.log(acc)


def _is_pole(z):
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def loggamma(z):
    """log Gamma(z) for complex z (array or scalar); any branch, exp() is exact."""
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(_is_pole(z)):
        raise DomainError("gamma has a pole at non-positive integers")
    left = z.real < 0.5
    out = np.empty(z.shape, dtype=complex)
    if np.any(~left):
        out[~left] = _loggamma_right(z[~left])
    if np.any(left):
        zl = z[left]
        out[left] = _LOG_PI - log_sin(np.pi * zl) - _loggamma_right(1.0 - zl)
    return out[0] if scalar else out


def gamma(z):
    """Complex gamma function."""
    out = np.exp(loggamma(z))
    if np.ndim(out) == 0:
        zc = complex(z)
        if zc.imag == 0:
            return complex(out.real, 0.0)
        return complex(out)
    return out


def rgamma_ratio(a, b):
    """Gamma(a) / Gamma(b) through logs."""
    return np.exp(loggamma(a) - loggamma(b))
