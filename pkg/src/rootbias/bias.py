"""Root-number bias at cubic level: closed forms, dimensions, and the exact formula for M#(s).

M#(s) = M0(s) + M1(s) + M2(s) is evaluated numerically; at s = 1 it equals
|H+| - |H-|, which the class-number closed form gives exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import arith
from .errors import ConvergenceError, DomainError
from .quadratic import class_number, decompose
from .specfun.gamma import gamma, loggamma
from .specfun.hypergeometric import gauss_2f1, gauss_2f1_abs_majorant, gauss_2f1_array
from .specfun.zeta import hurwitz_zeta
from .zagier import zagier_L, zagier_L_many, zagier_mean

M2_TOL = 1e-10
M2_START = 512
M2_MAX_TERMS = 1 << 14
TAIL_INFLATION = 10.0


@dataclass(frozen=True)
class Level:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n <= 1:
            raise DomainError(f"level must be an integer > 1, got {self.n!r}")
        if not arith.is_squarefree(int(self.n)):
            raise DomainError(f"level {self.n} is not squarefree")


@dataclass(frozen=True)
class Weight:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or self.k < 2:
            raise DomainError(f"weight parameter k must be an integer >= 2, got {self.k!r}")


def _N(N) -> int:
    return int(N.n) if isinstance(N, Level) else int(Level(int(N)).n)


def _k(k) -> int:
    return int(k.k) if isinstance(k, Weight) else int(Weight(int(k)).k)


# Closed forms and dimensions ---------------------------------------------------


def c_constant(N) -> Fraction:
    N = _N(N)
    if N <= 3:
        raise DomainError("c_N is defined for N > 3; N = 2, 3 have their own tables")
    if N % 4 in (1, 2):
        return Fraction(1, 2)
    return Fraction(1) if N % 8 == 7 else Fraction(2)


def d_minus_N(N) -> int:
    """Fundamental discriminant of Q(sqrt(-N))."""
    return decompose(-4 * _N(N)).fundamental


def bias_closed_form(N, k) -> int:
    N, k = _N(N), _k(k)
    if N == 2:
        return 0 if k % 4 in (0, 1) else 1
    if N == 3:
        return 1 if k % 3 in (0, 1) else 2
    val = c_constant(N) * arith.euler_phi(N) * class_number(d_minus_N(N))
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral bias {val} at N = {N}")
    return int(val)


def nu(N: int) -> Fraction:
    """N prod_{p | N} (1 + 1/p), the index of Gamma_0(N)."""
    out = Fraction(N)
    for p in arith.prime_divisors(N):
        out *= Fraction(p + 1, p)
    return out


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} evaluated to the non-integer {x}")
    return int(x)


def dim_star_cubic(N, k) -> int:
    N, k = _N(N), _k(k)
    phi = arith.euler_phi(N)
    val = Fraction(2 * k - 1, 12) * phi * phi * nu(N)
    if N == 2:
        val += Fraction(1, 4) + k // 2 - Fraction(k, 2)
    if N == 3:
        val += Fraction(1, 3) + (2 * k) // 3 - Fraction(2 * k, 3)
    return _as_int(val, f"dim H*_{2 * k}({N}^3)")


def dim_star_squarefree(M: int, k) -> int:
    k = _k(k)
    if M <= 1 or not arith.is_squarefree(M):
        raise DomainError(f"M = {M} must be squarefree and > 1")
    val = Fraction(2 * k - 1, 12) * arith.euler_phi(M)
    val += (Fraction(1, 4) + k // 2 - Fraction(k, 2)) * arith.v_sharp(2, M)
    val += (Fraction(1, 3) + (2 * k) // 3 - Fraction(2 * k, 3)) * arith.v_sharp(3, M)
    if k == 1:
        val += arith.mobius(M)
    return _as_int(val, f"dim H*_{2 * k}({M})")


def _signed_direct(N: int, k: int) -> tuple[Fraction, Fraction]:
    """The per-sign count formulas stated separately for N > 3, N = 2 and N = 3."""
    if N == 2:
        base = Fraction(k // 2, 2)
        shift = Fraction(0) if k % 4 in (0, 1) else Fraction(1, 2)
    elif N == 3:
        base = Fraction((8 * k) // 3, 2) - Fraction(1, 2)
        shift = Fraction(1, 2) if k % 3 in (0, 1) else Fraction(1)
    else:
        phi = arith.euler_phi(N)
        base = Fraction(2 * k - 1, 24) * phi * phi * nu(N)
        shift = c_constant(N) / 2 * phi * class_number(d_minus_N(N))
    return base + shift, base - shift


def signed_counts(N, k) -> tuple[int, int]:
    """(|H+|, |H-|) for weight 2k and level N^3."""
    N, k = _N(N), _k(k)
    dim, b = dim_star_cubic(N, k), bias_closed_form(N, k)
    if (dim + b) % 2:
        raise ArithmeticError(f"parity violation: dim {dim}, bias {b}")
    plus, minus = (dim + b) // 2, (dim - b) // 2
    if (Fraction(plus), Fraction(minus)) != _signed_direct(N, k):
        raise ArithmeticError(f"signed counts disagree with the direct formulas at N={N}, k={k}")
    if minus < 0:
        raise ArithmeticError(f"negative count at N={N}, k={k}")
    return plus, minus


def asymptotic_main_term(N, k) -> float:
    N, k = _N(N), _k(k)
    phi = arith.euler_phi(N)
    return float(Fraction(2 * k - 1, 24) * phi * phi * nu(N))


def l_minus_4N_closed(N) -> float:
    """L(1, -4N) through class numbers."""
    N = _N(N)
    if N == 3:
        return math.pi / (6 * math.sqrt(3)) * (3 - arith.kronecker(-3, 2))
    if N % 4 in (1, 2):
        return math.pi / (2 * math.sqrt(N)) * class_number(-4 * N)
    return math.pi / (2 * math.sqrt(N)) * class_number(-N) * (3 - arith.kronecker(-N, 2))


# The exact formula --------------------------------------------------------------


def _check_strip(s: complex, k: int, allow_edge: bool = True):
    lo, hi = 2 - 2 * k, 2 * k - 1
    if lo < s.real < hi:
        return
    if allow_edge and s == hi:
        return  # M2 extends continuously by 0 there; see m2
    raise DomainError(f"need {lo} < Re(s) < {hi}, got s = {s}")


def _gamma_ratio(k: int, s: complex) -> complex:
    return cmath.exp(complex(loggamma(k - s / 2)) - complex(loggamma(k + s / 2)))


def _cpow(x: float, z: complex) -> complex:
    return cmath.exp(z * math.log(x))


def m0(s, N, k) -> complex:
    s, N, k = complex(s), _N(N), _k(k)
    _check_strip(s, k)
    pre = (2 * k - 1) * math.sqrt(N) * arith.euler_phi(N) / (2 * math.pi)
    return pre * _gamma_ratio(k, s) * _cpow(N**1.5 / (2 * math.pi), 1 - s) * zagier_L(s, -4 * N)


def m1(s, N, k) -> complex:
    s, N, k = complex(s), _N(N), _k(k)
    _check_strip(s, k)
    total = 0j
    N3 = N**3
    for d in arith.divisors(N):
        n = 1
        while n * n * N3 < 4 * d * d:  # exact integer form of n < 2d / N^{3/2}
            delta = (n * N * N // d) ** 2 - 4 * N
            F = gauss_2f1(k - s / 2, 1 - k - s / 2, 0.5, n * n * N3 / (4 * d * d))
            total += arith.mobius(d) / d * zagier_L(s, delta) * F
            n += 1
    if total == 0:
        return 0j
    pre = (2 * k - 1) * N**1.5 / math.pi
    return pre * _gamma_ratio(k, s) * _cpow(N**1.5 / (2 * math.pi), 1 - s) * total


def _is_odd_integer(s: complex) -> bool:
    return s.imag == 0 and s.real == round(s.real) and int(round(s.real)) % 2 == 1


def m2_prefactor(s: complex, N: int, k: int) -> complex:
    sign = -1.0 if k % 2 else 1.0
    return (
        sign
        * _cpow(2 * math.pi, s)
        * cmath.cos(math.pi * s / 2)
        * gamma(2 * k - s)
        / (math.pi**2 * float(N) ** (3 * (k - 1)) * math.gamma(2 * k - 1))
    )


@dataclass
class _M2Divisor:
    d: int
    n0: int
    X: int = 0
    partial: complex = 0j
    drift: complex = 0j  # running sum of (L_n - mean)
    drift_max: float = 0.0
    euler_abs: float = 0.0  # sum |L_n a_n| * relative Euler error


def _m2_extend(st: _M2Divisor, s: complex, N: int, k: int, mean: complex, X_new: int):
    n = np.arange(max(st.n0, st.X + 1), X_new + 1, dtype=np.int64)
    if n.size == 0:
        st.X = X_new
        return
    h = N * N // st.d
    deltas = (n * h) ** 2 - 4 * N
    L, rel = zagier_L_many(s, deltas, N=N)
    z = 4.0 * st.d**2 / (n.astype(float) ** 2 * N**3)
    F = gauss_2f1_array(k - s / 2, k + 0.5 - s / 2, 2 * k, z)
    a = np.exp((s - 2 * k) * np.log(n.astype(float))) * F
    st.partial += complex(np.dot(L, a))
    cums = st.drift + np.cumsum(L - mean)
    st.drift = complex(cums[-1])
    st.drift_max = max(st.drift_max, float(np.max(np.abs(cums))))
    st.euler_abs += rel * float(np.dot(np.abs(L), np.abs(a)))
    st.X = X_new


def _m2_mean_tail(s: complex, N: int, k: int, d: int, X: int, mean: complex) -> complex:
    """mean * sum_{n > X} n^{s-2k} 2F1(...; 4d^2/(n^2 N^3)), by expanding 2F1 termwise."""
    a, b, c = k - s / 2, k + 0.5 - s / 2, 2 * k
    z0 = 4.0 * d * d / N**3
    total = 0j
    coef = 1.0 + 0j
    for j in range(200):
        term = coef * z0**j * hurwitz_zeta(2 * k - s + 2 * j, X + 1)
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-300):
            break
        coef *= (a + j) * (b + j) / ((c + j) * (j + 1))
    return mean * total


def _m2_tail_estimate(st: _M2Divisor, s: complex, N: int, k: int) -> float:
    """Abel-summation estimate of sum_{n > X} (L_n - mean) a_n.

    |sum_{n > X} b_n a_n| <= 2B (|a_{X+1}| + sum_{n > X} |a_{n+1} - a_n|) with B a bound
    for partial sums of b_n = L_n - mean.  B is taken as the largest partial sum seen
    up to X, inflated by TAIL_INFLATION; this part is an estimate, not a proof.
    """
    X = st.X
    sig = s.real
    a, b, c = k - s / 2, k + 0.5 - s / 2, 2 * k
    zX = 4.0 * st.d**2 / ((X + 1) ** 2 * N**3)
    Fm = gauss_2f1_abs_majorant(a, b, c, zX)
    dFm = abs(a * b / c) * gauss_2f1_abs_majorant(a + 1, b + 1, c + 1, zX)
    g = 2 * k - sig
    first = (X + 1) ** (-g) * Fm
    variation = abs(s - 2 * k) * Fm * X ** (-g) / g + dFm * 2 * zX * (X + 1) ** (-g) / (g + 2)
    B = TAIL_INFLATION * max(st.drift_max, 1e-16)
    return 2 * B * (first + variation)


def m2(s, N, k, tol: float = M2_TOL, max_terms: int = M2_MAX_TERMS) -> tuple[complex, float]:
    """M2(s) with an error estimate; exact 0 where cos(pi s / 2) vanishes.

    The n-series is summed directly up to X, and the rest is replaced by its
    mean-value approximation (the average of L over n is zeta^(N)(2s) /
    zeta^(N)(1+s)), leaving an oscillatory remainder that is estimated by
    Abel summation.  X doubles until the estimate drops below ``tol``; if it
    cannot (term cap reached, or the Euler-product truncation of L-values
    dominates), ConvergenceError carries (value, estimate).
    """
    s, N, k = complex(s), _N(N), _k(k)
    _check_strip(s, k)
    if _is_odd_integer(s):
        return 0j, 0.0
    if s.real <= 1:
        raise DomainError("M2 needs Re(s) > 1 away from odd integers (L-values of large discriminant)")
    if not tol > 0:
        raise DomainError("tol must be positive")
    # keep (n N^2/d)^2 within exact float/int64 range
    cap = min(max_terms, int(math.isqrt(2**52) // (N * N)))
    if cap < 16:
        raise DomainError(f"N = {N} too large for the M2 series")
    pre = m2_prefactor(s, N, k)
    mean = zagier_mean(s, N)
    N3 = N**3
    states = []
    for d in arith.divisors(N):
        n0 = 1
        while n0 * n0 * N3 <= 4 * d * d:
            n0 += 1
        states.append(_M2Divisor(d, n0))
    X = min(M2_START, cap)
    while True:
        value = 0j
        tail = 0.0
        euler = 0.0
        for st in states:
            _m2_extend(st, s, N, k, mean, X)
            w = arith.mobius(st.d) * _cpow(st.d, 2 * k - 1 - s)
            value += w * (st.partial + _m2_mean_tail(s, N, k, st.d, X, mean))
            tail += abs(w) * _m2_tail_estimate(st, s, N, k)
            euler += abs(w) * st.euler_abs
        value *= pre
        tail *= abs(pre)
        err = tail + abs(pre) * euler
        if err < tol:
            return value, err
        # more terms cannot beat the (X-independent) Euler-product truncation error
        if X >= cap or tail < abs(pre) * euler:
            raise ConvergenceError(f"M2 tail estimate {err:.3g} above tol {tol:.3g} at {X} terms", partial=(value, err))
        X = min(2 * X, cap)


def m_sharp_detailed(s, N, k, tol: float = M2_TOL) -> tuple[complex, float]:
    """(M#(s), error estimate); falls back to the best M2 partial value if tol is out of reach."""
    s = complex(s)
    try:
        v2, e2 = m2(s, N, k, tol)
    except ConvergenceError as exc:
        v2, e2 = exc.partial
    return m0(s, N, k) + m1(s, N, k) + v2, e2


def m_sharp(s, N, k) -> complex:
    return m_sharp_detailed(s, N, k)[0]


# Reports ----------------------------------------------------------------------------


@dataclass(frozen=True)
class BiasReport:
    level: int
    weight: int
    bias_closed: int
    bias_analytic: float
    dim_new: int
    h_plus: int
    h_minus: int
    agreement_abs: float
    tail_bound: float
    c_N: str
    class_number: int

    def __post_init__(self):
        if self.h_plus + self.h_minus != self.dim_new or self.h_plus - self.h_minus != self.bias_closed:
            raise ArithmeticError("inconsistent report counts")
        if self.h_plus < 0 or self.h_minus < 0:
            raise ArithmeticError("negative counts in report")

    def ok(self, tol: float) -> bool:
        return self.agreement_abs <= tol + self.tail_bound

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "BiasReport":
        return cls(**d)


def c_label(N: int) -> str:
    if N <= 3:
        return "-"
    return str(c_constant(N))


def bias_report(N, k) -> BiasReport:
    N, k = _N(N), _k(k)
    closed = bias_closed_form(N, k)
    value, tail = m_sharp_detailed(1, N, k)
    plus, minus = signed_counts(N, k)
    h = class_number(d_minus_N(N))
    return BiasReport(
        level=N,
        weight=k,
        bias_closed=closed,
        bias_analytic=value.real,
        dim_new=plus + minus,
        h_plus=plus,
        h_minus=minus,
        agreement_abs=abs(value - closed),
        tail_bound=tail,
        c_N=c_label(N),
        class_number=h,
    )
