"""Self-checks comparing each closed form with an independent numerical route.

Every suite returns a ``SuiteResult`` holding the largest observed error and
the tolerance it was judged against.  Suites are deterministic and take
their grid from ``SuiteOptions``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import arith
from .bias import bias_closed_form, m_sharp_detailed, signed_counts
from .errors import DomainError
from .petersson import DEFAULT_N_MAX, PeterssonTruncation, m_sharp_via_petersson
from .specfun import bessel_j, bessel_j_mellin_barnes, f_series, gamma, gauss_2f1, hurwitz_zeta, i_ks, i_ks_quadrature
from .specfun.mellin import bessel_contour
from .zagier import _inverses, kloosterman_square_sum, kloosterman_square_sum_rho, zagier_L, zagier_L_series

SUITES = (
    "weil",
    "lemma23",
    "zagier-oracle",
    "hurwitz-formula",
    "2f1-cosine",
    "iks-oracle",
    "bessel-oracle",
    "theorem31-at-1",
    "two-route",
    "dims-parity",
)

TWO_ROUTE_CELLS = ((5, 2), (5, 3), (6, 2), (7, 2), (10, 2))
TWO_ROUTE_S = (2.0, 2.5, 3.0)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    max_error: float
    tolerance: float
    checks: int
    detail: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SuiteOptions:
    """Grid overrides; ``None`` means the suite default."""

    c_max: int | None = None
    n_max: int | None = None
    levels: tuple[int, ...] | None = None
    weights: tuple[int, ...] | None = None
    s: complex | None = None
    tol: float | None = None
    threads: int = 1
    deltas: tuple[int, ...] | None = None


def _result(name: str, errors, tol: float, detail: str = "", extra_ok: bool = True) -> SuiteResult:
    errors = np.asarray(list(errors), dtype=float)
    worst = float(errors.max()) if errors.size else 0.0
    passed = bool(extra_ok and np.all(np.isfinite(errors)) and worst < tol)
    return SuiteResult(name, passed, worst, tol, int(errors.size), detail)


# Kloosterman identities --------------------------------------------------------


def suite_weil(opts: SuiteOptions) -> SuiteResult:
    """|S(m,n;c)| <= tau(c) gcd(m,n,c)^{1/2} c^{1/2} for m, n <= 20, plus symmetry and reality."""
    c_max = opts.c_max or 300
    mn = np.arange(1, 21, dtype=np.int64)
    worst_ratio = 0.0
    asym = 0.0
    checks = 0
    violations = 0
    for c in range(1, c_max + 1):
        if c == 1:
            S = np.ones((20, 20), dtype=complex)
        else:
            a, inv = _inverses(c)
            phase = ((mn[:, None, None] * a[None, None, :]) + mn[None, :, None] * inv[None, None, :]) % c
            S = np.exp(2j * math.pi * phase / c).sum(axis=2)
        g = np.gcd(np.gcd(mn[:, None], mn[None, :]), c)
        bound = np.sqrt(g * c) * arith.num_divisors(c)
        ratio = np.abs(S) / bound
        violations += int(np.sum(ratio > 1 + 1e-12))
        worst_ratio = max(worst_ratio, float(ratio.max()))
        asym = max(asym, float(np.abs(S - S.T).max()) / c, float(np.abs(S.imag).max()) / c)
        checks += S.size
    detail = f"max |S|/bound = {worst_ratio:.4f}; violations = {violations}; max asymmetry/imag per c = {asym:.2e}"
    passed = violations == 0 and asym < 1e-9
    return SuiteResult("weil", passed, asym, 1e-9, checks, detail)


def suite_square_sum_identity(opts: SuiteOptions) -> SuiteResult:
    """sum_a S(m, a^2; c) e(an/c) = c sum_{d|c} mu(d) rho(c/d, n^2 - 4m)."""
    c_max = opts.c_max or 100
    errs = []
    for c in range(1, c_max + 1):
        for m in range(1, 11):
            for n in range(1, 11):
                lhs = kloosterman_square_sum(m, n, c)
                rhs = kloosterman_square_sum_rho(m, n, c)
                errs.append(abs(lhs - rhs) / c)
    return _result("lemma23", errs, 1e-8, f"m, n <= 10, c <= {c_max}; error scaled by 1/c")


# Zagier L-function -------------------------------------------------------------


def default_deltas() -> tuple[int, ...]:
    """30 evenly spread discriminants Delta = 0, 1 (mod 4) in [-400, -4] (never squares)."""
    pool = [d for d in range(-400, -3) if d % 4 in (0, 1)]
    idx = np.linspace(0, len(pool) - 1, 30).round().astype(int)
    return tuple(pool[i] for i in idx)


def suite_zagier_oracle(opts: SuiteOptions) -> SuiteResult:
    s = opts.s if opts.s is not None else 2.5
    c_max = opts.c_max or 100_000
    deltas = opts.deltas or default_deltas()
    errs = [abs(zagier_L(s, d) - zagier_L_series(s, d, c_max)) for d in deltas]
    return _result("zagier-oracle", errs, opts.tol or 1e-3, f"{len(deltas)} discriminants, s = {s}, c_max = {c_max}")


# Special functions -------------------------------------------------------------


def suite_hurwitz_formula(opts: SuiteOptions) -> SuiteResult:
    """zeta(1-s, a) against Gamma(s)/(2 pi)^s (e(-s/4) F(a, s) + e(s/4) F(-a, s))."""
    errs = []
    for alpha in (1 / 3, 1 / 4, 2 / 5):
        for s in (2.0, 2.5, 3.0):
            q = complex(math.cos(math.pi * s / 2), math.sin(math.pi * s / 2))
            rhs = gamma(s) / (2 * math.pi) ** s * (f_series(alpha, s, 1e-12) / q + q * f_series(-alpha, s, 1e-12))
            errs.append(abs(hurwitz_zeta(1 - s, alpha) - rhs))
    return _result("hurwitz-formula", errs, 1e-8, "alpha in {1/3, 1/4, 2/5}, s in {2, 2.5, 3}")


def suite_2f1_cosine(opts: SuiteOptions) -> SuiteResult:
    errs = []
    for alpha in (1.0, 2.5, 7.0):
        for theta in (0.1, 0.7, 1.2):
            val = gauss_2f1(alpha / 2, -alpha / 2, 0.5, math.sin(theta) ** 2)
            errs.append(abs(val - math.cos(alpha * theta)))
    return _result("2f1-cosine", errs, 1e-10, "alpha in {1, 2.5, 7}, theta in {0.1, 0.7, 1.2}")


def suite_iks_oracle(opts: SuiteOptions) -> SuiteResult:
    errs = []
    for k in (2, 3, 5):
        for s in (1.0, 2.0, 2.5, 1 + 1j):
            for x in (0.5, 1.9, 2.1, 10.0):
                errs.append(abs(i_ks(k, s, x) - i_ks_quadrature(k, s, x)))
    return _result("iks-oracle", errs, 1e-5, "k in {2,3,5}, s in {1,2,2.5,1+i}, x in {0.5,1.9,2.1,10}")


def suite_bessel_oracle(opts: SuiteOptions) -> SuiteResult:
    errs = []
    for k in (2, 3, 5, 8):
        for x in (0.1, 1.0, 5.0, 10.0, 25.0):
            mb = bessel_j_mellin_barnes(k, x, bessel_contour(k, x))
            errs.append(abs(float(bessel_j(2 * k - 1, x)) - mb))
    return _result("bessel-oracle", errs, 1e-6, "k in {2,3,5,8}, x in {0.1,1,5,10,25}")


# Exact formula -----------------------------------------------------------------


def _squarefree_levels(opts: SuiteOptions, hi: int) -> list[int]:
    levels = opts.levels or tuple(range(2, hi + 1))
    return [N for N in levels if N > 1 and arith.is_squarefree(N)]


def suite_exact_formula_at_one(opts: SuiteOptions) -> SuiteResult:
    """M#(1) from the analytic formula against the class-number closed form."""
    errs = []
    worst = None
    for N in _squarefree_levels(opts, 50):
        for k in opts.weights or range(2, 9):
            value, _ = m_sharp_detailed(1, N, k)
            e = abs(value - bias_closed_form(N, k))
            if worst is None or e > worst[0]:
                worst = (e, N, k)
            errs.append(e)
    detail = f"worst at N={worst[1]}, k={worst[2]}" if worst else "empty grid"
    return _result("theorem31-at-1", errs, opts.tol or 1e-6, detail)


def suite_two_route(opts: SuiteOptions) -> SuiteResult:
    """Analytic M#(s) against the Petersson side, both truncated with error estimates.

    Each cell passes if the difference is below max(tol, combined bound); the
    reported max_error is the raw difference.
    """
    tol = opts.tol or 1e-4
    if opts.levels or opts.weights:
        cells = [(N, k) for N in _squarefree_levels(opts, 10) for k in (opts.weights or (2,))]
    else:
        cells = list(TWO_ROUTE_CELLS)
    svals = (opts.s,) if opts.s is not None else TWO_ROUTE_S
    trunc = PeterssonTruncation(opts.c_max) if opts.c_max else None
    n_max = opts.n_max or DEFAULT_N_MAX
    errs = []
    ok = True
    rows = []
    for N, k in cells:
        for s in svals:
            a_val, a_err = m_sharp_detailed(s, N, k)
            p_val, p_err = m_sharp_via_petersson(s, N, k, n_max=n_max, trunc=trunc, threads=opts.threads)
            diff = abs(a_val - p_val)
            allowed = max(tol, a_err + p_err)
            ok &= diff < allowed
            errs.append(diff)
            rows.append(f"(N={N},k={k},s={s}): diff {diff:.2e}, bound {a_err + p_err:.2e}")
    errs = np.asarray(errs)
    worst = float(errs.max()) if errs.size else 0.0
    return SuiteResult("two-route", bool(ok), worst, tol, int(errs.size), "; ".join(rows))


def suite_dims_parity(opts: SuiteOptions) -> SuiteResult:
    """Signed counts are nonnegative integers of the right parity; bias vanishes only at N=2, k=0,1 (4)."""
    bad = []
    checks = 0
    for N in _squarefree_levels(opts, 100):
        for k in opts.weights or range(2, 13):
            plus, minus = signed_counts(N, k)
            b = bias_closed_form(N, k)
            zero_expected = N == 2 and k % 4 in (0, 1)
            checks += 1
            if plus < 0 or minus < 0 or plus - minus != b or (plus + minus - b) % 2:
                bad.append((N, k, "counts"))
            if b < 0 or (b == 0) != zero_expected:
                bad.append((N, k, "bias"))
    detail = f"failures: {bad[:5]}" if bad else "all counts consistent"
    return SuiteResult("dims-parity", not bad, float(len(bad)), 1.0, checks, detail)


RUNNERS: dict[str, Callable[[SuiteOptions], SuiteResult]] = {
    "weil": suite_weil,
    "lemma23": suite_square_sum_identity,
    "zagier-oracle": suite_zagier_oracle,
    "hurwitz-formula": suite_hurwitz_formula,
    "2f1-cosine": suite_2f1_cosine,
    "iks-oracle": suite_iks_oracle,
    "bessel-oracle": suite_bessel_oracle,
    "theorem31-at-1": suite_exact_formula_at_one,
    "two-route": suite_two_route,
    "dims-parity": suite_dims_parity,
}


def run_suite(name: str, opts: SuiteOptions | None = None) -> SuiteResult:
    if name not in RUNNERS:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return RUNNERS[name](opts or SuiteOptions())


def run_all(names=SUITES, opts: SuiteOptions | None = None) -> list[SuiteResult]:
    return [run_suite(n, opts) for n in names]
