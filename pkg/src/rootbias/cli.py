"""Command-line interface: ``rootbias <command> [options]``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import __version__, arith
from .bias import BiasReport, bias_report, dim_star_cubic, signed_counts
from .errors import ConvergenceError, DomainError
from .verify import SUITES, SuiteOptions, SuiteResult, run_suite
from .zagier import zagier_L, zagier_L_series

COMMANDS = ("bias", "table", "verify", "zagier", "petersson-check", "dims")
CSV_HEADER = ["N", "k", "c_N", "h", "bias", "dim", "h_plus", "h_minus", "m_sharp_1", "delta_abs", "tail_bound"]
SCHEMA_VERSION = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
DEFAULT_TOL = 1e-6


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_range: tuple[int, int]
    k_range: tuple[int, int]
    s: complex | None
    format: str
    tolerance: float | None
    c_max: int | None
    n_max: int | None
    threads: int
    suites: tuple[str, ...]
    delta: int | None
    output: str | None

    @property
    def levels(self) -> list[int]:
        return list(range(self.n_range[0], self.n_range[1] + 1))

    @property
    def weights(self) -> list[int]:
        return list(range(self.k_range[0], self.k_range[1] + 1))


# Parsing ------------------------------------------------------------------------


def parse_range(text: str) -> tuple[int, int]:
    """``a..b`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use a..b or a single integer") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_complex(text: str) -> complex:
    """``re`` or ``re,im``."""
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad complex value {text!r}; use re or re,im") from None
    if len(parts) not in (1, 2) or not all(math.isfinite(p) for p in parts):
        raise argparse.ArgumentTypeError(f"bad complex value {text!r}; use re or re,im")
    return complex(parts[0], parts[1] if len(parts) == 2 else 0.0)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rootbias", description="Root-number bias for newforms of level N^3.")
    p.add_argument("--version", action="version", version=f"rootbias {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--N", dest="n_range", type=parse_range, default=(2, 10), help="level range a..b (default 2..10)")
    p.add_argument("--k", dest="k_range", type=parse_range, default=(2, 6), help="weight range a..b (default 2..6)")
    p.add_argument("--s", type=parse_complex, default=None, help="complex point re[,im]")
    p.add_argument("--format", choices=("human", "json", "csv"), default=None)
    p.add_argument("--tol", type=_positive_float, default=None, help=f"agreement tolerance (default {DEFAULT_TOL:g} for bias)")
    p.add_argument("--c-max", type=_positive_int, default=None)
    p.add_argument("--n-max", type=_positive_int, default=None)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--suite", action="append", default=None, help=f"verify only these suites ({', '.join(SUITES)})")
    p.add_argument("--delta", type=int, default=None, help="discriminant for the zagier command")
    p.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    return p


def make_config(args: argparse.Namespace) -> RunConfig:
    suites: tuple[str, ...] = ()
    if args.suite:
        names = [n for item in args.suite for n in item.split(",") if n]
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        suites = tuple(names)
    if args.k_range[0] < 2:
        raise UsageError("weights start at k = 2")
    if args.command == "zagier" and args.delta is None:
        raise UsageError("zagier needs --delta")
    fmt = args.format or ("csv" if args.command == "table" else "human")
    return RunConfig(
        command=args.command,
        n_range=args.n_range,
        k_range=args.k_range,
        s=args.s,
        format=fmt,
        tolerance=args.tol,
        c_max=args.c_max,
        n_max=args.n_max,
        threads=args.threads,
        suites=suites,
        delta=args.delta,
        output=args.output,
    )


# Formatting ---------------------------------------------------------------------


def fmt_number(x) -> str:
    if isinstance(x, (bool, str)):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".15g")


def _report_row(r: BiasReport) -> list:
    return [r.level, r.weight, r.c_N, r.class_number, r.bias_closed, r.dim_new, r.h_plus, r.h_minus,
            r.bias_analytic, r.agreement_abs, r.tail_bound]


def render_json(reports=(), suites=(), rows=None) -> str:
    doc = {"reports": [r.to_dict() for r in reports], "suites": [s.to_dict() for s in suites], "version": SCHEMA_VERSION}
    if rows is not None:
        doc["rows"] = rows
    return json.dumps(doc, indent=2) + "\n"


def render_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_number(x) for x in row])
    return buf.getvalue()


def render_human(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[fmt_number(x) if not isinstance(x, float) else f"{x:.6g}" for x in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    # the last column is free text (suite detail) or short; leave it unpadded
    lines = ["  ".join([c.rjust(w) for c, w in zip(r[:-1], widths)] + [r[-1]]) for r in cells]
    return "\n".join(lines) + "\n"


def _render_table(cfg: RunConfig, header: list[str], rows: list[list], reports=(), suites=(), extra_rows=None) -> str:
    if cfg.format == "json":
        return render_json(reports, suites, extra_rows)
    if cfg.format == "csv":
        return render_csv(header, rows)
    return render_human(header, rows)


def _suite_rows(results: list[SuiteResult]) -> list[list]:
    return [[r.name, "pass" if r.passed else "FAIL", r.max_error, r.tolerance, r.checks, r.detail] for r in results]


SUITE_HEADER = ["suite", "status", "max_error", "tolerance", "checks", "detail"]


# Commands -----------------------------------------------------------------------


def admitted_levels(cfg: RunConfig, err=sys.stderr) -> list[int]:
    out = []
    for N in cfg.levels:
        if N < 2 or not arith.is_squarefree(N):
            print(f"rootbias: skipping N={N}: only squarefree N > 1 are admitted", file=err)
            continue
        out.append(N)
    return out


def _cells(cfg: RunConfig, err) -> list[tuple[int, int]]:
    return [(N, k) for N in admitted_levels(cfg, err) for k in cfg.weights]


def _pool_map(fn, items, threads: int) -> list:
    if threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def cmd_bias(cfg: RunConfig, err=sys.stderr) -> tuple[str, int]:
    tol = cfg.tolerance if cfg.tolerance is not None else DEFAULT_TOL
    reports = _pool_map(lambda nk: bias_report(*nk), _cells(cfg, err), cfg.threads)
    code = EXIT_OK
    for r in reports:
        if not r.ok(tol):
            code = EXIT_FAIL
            print(f"rootbias: agreement failure at N={r.level}, k={r.weight}: |M#(1) - bias| = "
                  f"{r.agreement_abs:.3g} > {tol:g} + tail {r.tail_bound:.3g}", file=err)
    text = _render_table(cfg, CSV_HEADER, [_report_row(r) for r in reports], reports=reports)
    return text, code


def cmd_table(cfg: RunConfig, err=sys.stderr) -> tuple[str, int]:
    return cmd_bias(cfg, err)


def _suite_options(cfg: RunConfig, single: bool) -> SuiteOptions:
    if not single:
        return SuiteOptions(threads=cfg.threads)
    return SuiteOptions(
        c_max=cfg.c_max,
        n_max=cfg.n_max,
        levels=tuple(cfg.levels),
        weights=tuple(cfg.weights),
        s=cfg.s,
        tol=cfg.tolerance,
        threads=cfg.threads,
    )


def cmd_verify(cfg: RunConfig, err=sys.stderr) -> tuple[str, int]:
    """All suites at their defaults, or the ``--suite`` selection with the grid flags applied."""
    names = cfg.suites or SUITES
    opts = _suite_options(cfg, single=bool(cfg.suites))
    results = [run_suite(n, opts) for n in names]
    code = EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    return _render_table(cfg, SUITE_HEADER, _suite_rows(results), suites=results), code


def cmd_petersson_check(cfg: RunConfig, err=sys.stderr) -> tuple[str, int]:
    """Two-route comparison per (N, k) cell at the given s (default 2.5)."""
    s = cfg.s if cfg.s is not None else 2.5
    base = _suite_options(cfg, single=True)

    def one(nk):
        opts = SuiteOptions(c_max=base.c_max, n_max=base.n_max, levels=(nk[0],), weights=(nk[1],), s=s,
                            tol=base.tol, threads=1)
        r = run_suite("two-route", opts)
        return SuiteResult(f"two-route N={nk[0]} k={nk[1]}", r.passed, r.max_error, r.tolerance, r.checks, r.detail)

    results = _pool_map(one, _cells(cfg, err), cfg.threads)
    code = EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    return _render_table(cfg, SUITE_HEADER, _suite_rows(results), suites=results), code


def cmd_zagier(cfg: RunConfig, err=sys.stderr) -> tuple[str, int]:
    s = cfg.s if cfg.s is not None else complex(2.5)
    delta = cfg.delta
    closed = zagier_L(s, delta)
    row = {"delta": delta, "s_re": s.real, "s_im": s.imag, "closed_re": closed.real, "closed_im": closed.imag}
    if s.real > 1:
        c_max = cfg.c_max or 100_000
        series = zagier_L_series(s, delta, max(c_max, 1000))
        row.update(series_re=series.real, series_im=series.imag, c_max=max(c_max, 1000), diff=abs(series - closed))
    header = list(row)
    text = _render_table(cfg, header, [list(row.values())], extra_rows=[row])
    code = EXIT_OK
    if "diff" in row and cfg.tolerance is not None and row["diff"] > cfg.tolerance:
        code = EXIT_FAIL
    return text, code


def cmd_dims(cfg: RunConfig, err=sys.stderr) -> tuple[str, int]:
    rows = []
    for N, k in _cells(cfg, err):
        plus, minus = signed_counts(N, k)
        rows.append({"N": N, "k": k, "dim": dim_star_cubic(N, k), "h_plus": plus, "h_minus": minus, "bias": plus - minus})
    header = ["N", "k", "dim", "h_plus", "h_minus", "bias"]
    return _render_table(cfg, header, [list(r.values()) for r in rows], extra_rows=rows), EXIT_OK


HANDLERS = {
    "bias": cmd_bias,
    "table": cmd_table,
    "verify": cmd_verify,
    "zagier": cmd_zagier,
    "petersson-check": cmd_petersson_check,
    "dims": cmd_dims,
}


def run(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = make_config(args)
        text, code = HANDLERS[cfg.command](cfg, err)
    except (UsageError, DomainError) as e:
        print(f"rootbias: error: {e}", file=err)
        return EXIT_USAGE
    except ConvergenceError as e:
        print(f"rootbias: convergence failure: {e}", file=err)
        return EXIT_FAIL
    try:
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            out.write(text)
            out.flush()
    except OSError as e:
        print(f"rootbias: I/O error: {e}", file=err)
        return EXIT_IO
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
