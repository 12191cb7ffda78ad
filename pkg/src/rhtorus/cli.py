"""Command-line front end: one subcommand per evaluator, CSV or JSON reports.

Exit codes: 0 success, 1 some criterion or check failed, 2 usage error,
3 resource error (sieve cap exceeded, out of memory).

CSV goes to the output with a mandatory header row; the run metadata and
summary go to stderr as a single JSON line so the CSV body stays
byte-stable.  JSON output is one object with ``meta``, ``rows`` and
``summary``.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, is_dataclass
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import __version__
from .arithmetic import SIEVE_CAP_ENV, NeumaierSum, SieveLimitError, build_sieve, primes_up_to, sieve_cap
from .criteria import (
    DEFAULT_TOLERANCE,
    FAILS,
    HOLDS,
    INDETERMINATE,
    inequality_one_check,
    lagarias_check,
    littlewood_diagnostic,
    mertens_prefix,
    nicolas_check,
    prop1_sweep,
)
from .dirichlet import convolve, log_function, mangoldt_function, mobius_function, ones, totient_function
from .torus import (
    TruncatedTorusPoint,
    euler_product_partial,
    smooth_number_sum,
    torus_integral_mangoldt,
    torus_integral_mu,
    torus_integral_phi,
)

__all__ = ["CheckRecord", "Report", "main", "run", "build_parser", "format_float"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass(frozen=True)
class CheckRecord:
    """One identity check: computed vs expected value."""

    check_id: str
    index: int
    computed: float | int | str
    expected: float | int | str
    abs_error: float
    verdict: str


@dataclass
class Report:
    meta: dict
    rows: list[dict]

    @property
    def summary(self) -> dict:
        counts = {"rows": len(self.rows), HOLDS: 0, FAILS: 0, INDETERMINATE: 0, "no_verdict": 0}
        for r in self.rows:
            v = r.get("verdict")
            counts[v if v in counts else "no_verdict"] += 1
        return counts

    def to_json(self) -> str:
        body = {"meta": self.meta, "rows": [_json_row(r) for r in self.rows], "summary": self.summary}
        return json.dumps(body, ensure_ascii=False, allow_nan=False, indent=1) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        header = list(self.rows[0]) if self.rows else []
        w.writerow(header)
        for r in self.rows:
            w.writerow([_csv_cell(r[h]) for h in header])
        return buf.getvalue()


def format_float(x: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def _json_row(r: dict) -> dict:
    out = {}
    for k, v in r.items():
        if isinstance(v, float) and not math.isfinite(v):
            v = None
        out[k] = v
    return out


def _row(obj) -> dict:
    d = asdict(obj) if is_dataclass(obj) else dict(obj)
    for k, v in d.items():
        if isinstance(v, Fraction):
            d[k] = str(v)
        elif isinstance(v, np.generic):
            d[k] = v.item()
    return d


def _check(check_id, index, computed, expected, tol) -> CheckRecord:
    err = abs(computed - expected)
    ok = err == 0 if tol == 0 else err <= tol
    c = computed if not isinstance(computed, Fraction) else str(computed)
    e = expected if not isinstance(expected, Fraction) else str(expected)
    return CheckRecord(check_id, index, c, e, float(err), HOLDS if ok else FAILS)


# ---------------------------------------------------------------------------
# subcommands


def _sieve(args, limit):
    return build_sieve(max(limit, 2), cap=args.sieve_cap)


def cmd_mertens(args):
    s = _sieve(args, args.x_max)
    m = mertens_prefix(s, args.x_max)
    return [{"x": x, "mertens": int(m[x])} for x in range(1, args.x_max + 1)]


def cmd_psi(args):
    s = _sieve(args, args.x_max)
    lam = s.mangoldt_array()
    acc = NeumaierSum()
    rows = []
    for x in range(1, args.x_max + 1):
        acc.add(lam[x])
        rows.append({"x": x, "psi": acc.value})
    return rows


def cmd_nicolas(args):
    return [_row(r) for r in nicolas_check(args.k_max, args.k_min, args.tolerance, args.jobs)]


def cmd_ineq1(args):
    rows = inequality_one_check(args.k_max, args.beta, args.k_min, args.tolerance, args.jobs)
    return [_row(r) for r in rows]


def cmd_lagarias(args):
    s = _sieve(args, args.n_max)
    return [_row(r) for r in lagarias_check(args.n_max, s, args.tolerance)]


def cmd_littlewood(args):
    s = _sieve(args, args.x_max)
    return littlewood_diagnostic(args.x_max, args.eps, args.A, s, args.points_per_decade).rows()


def cmd_prop1(args):
    s = _sieve(args, args.x_max)
    return [_row(_check("prop1", x, total, m, 0)) for x, m, total in prop1_sweep(args.x_max, args.beta, s)]


def cmd_verify_torus(args):
    s = _sieve(args, args.a_max)
    rows = []
    for a in range(1, args.a_max + 1):
        r = torus_integral_mu(a, args.beta, sieve=s)
        rows.append(_row(_check("torus_mu", a, r.reconstructed, int(s.mobius[a]), 0)))
        if args.beta > 2:
            r = torus_integral_phi(a, args.beta, sieve=s)
            rows.append(_row(_check("torus_phi", a, r.reconstructed, int(s.totient[a]), 0)))
        r = torus_integral_mangoldt(a, args.beta, sieve=s)
        rows.append(_row(_check("torus_mangoldt", a, float(r.reconstructed), s.mangoldt(a), args.tolerance_abs)))
    return rows


def cmd_verify_algebra(args):
    n = args.n_max
    s = _sieve(args, n)
    one = ones(n, "int")
    mu1 = convolve(mobius_function(n, "int", s), one, n)
    phi1 = convolve(totient_function(n, "int", s), one, n)
    lam1 = convolve(mangoldt_function(n, s), ones(n, "real"), n)
    logs = log_function(n)
    rows = []
    for k in range(1, n + 1):
        rows.append(_row(_check("mu_star_one", k, int(mu1[k]), int(k == 1), 0)))
    for k in range(1, n + 1):
        rows.append(_row(_check("phi_star_one", k, int(phi1[k]), k, 0)))
    for k in range(1, n + 1):
        rows.append(_row(_check("mangoldt_star_one", k, float(lam1[k]), float(logs[k]), args.tolerance_abs)))
    return rows


def cmd_euler_product(args):
    primes = primes_up_to(args.p_max)
    k = len(primes)
    rng = np.random.default_rng(args.seed)
    points = [TruncatedTorusPoint.ones(k)] + [TruncatedTorusPoint.random(k, rng) for _ in range(args.points)]
    rows = []
    for i, t in enumerate(points):
        prod = euler_product_partial(args.beta, t, k)
        oracle = smooth_number_sum(args.beta, t, args.p_max, tail_target=args.tail_target)
        err = abs(prod - oracle.value)
        bound = oracle.tail_bound + args.tolerance_abs
        rows.append(
            {
                "index": i,
                "product_re": prod.real,
                "product_im": prod.imag,
                "oracle_re": oracle.value.real,
                "oracle_im": oracle.value.imag,
                "oracle_tail_bound": oracle.tail_bound,
                "abs_error": err,
                "verdict": HOLDS if err <= bound else FAILS,
            }
        )
    return rows


# ---------------------------------------------------------------------------
# parsing


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _nonneg_float(text: str) -> float:
    v = float(text)
    if v < 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
    common.add_argument("--jobs", "-j", type=_positive_int, default=1, help="worker processes")
    common.add_argument("--tolerance", type=_nonneg_float, default=DEFAULT_TOLERANCE,
                        help="indeterminate band for criterion margins")
    common.add_argument("--tolerance-abs", type=_nonneg_float, default=1e-12,
                        help="absolute tolerance for floating identity checks")
    common.add_argument("--sieve-cap", type=_positive_int, default=None,
                        help=f"sieve size cap (default ${SIEVE_CAP_ENV} or 10^8)")

    p = argparse.ArgumentParser(prog="rhtorus", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("mertens", cmd_mertens, "Mertens function M(x) for x = 1..x-max")
    sp.add_argument("--x-max", type=_positive_int, required=True)

    sp = add("psi", cmd_psi, "Chebyshev psi(x) for x = 1..x-max")
    sp.add_argument("--x-max", type=_positive_int, required=True)

    sp = add("nicolas", cmd_nicolas, "Nicolas primorial inequality for k-min..k-max")
    sp.add_argument("--k-max", type=_positive_int, required=True)
    sp.add_argument("--k-min", type=_positive_int, default=2)

    sp = add("ineq1", cmd_ineq1, "torus-integral form of the Nicolas inequality")
    sp.add_argument("--k-max", type=_positive_int, required=True)
    sp.add_argument("--k-min", type=_positive_int, default=2)
    sp.add_argument("--beta", type=int, default=3)

    sp = add("littlewood", cmd_littlewood, "growth ratios of the Mertens function (diagnostic)")
    sp.add_argument("--x-max", type=_positive_int, required=True)
    sp.add_argument("--eps", type=_positive_float, default=0.01)
    sp.add_argument("--A", type=_positive_float, default=1.0)
    sp.add_argument("--points-per-decade", type=_positive_int, default=20)

    sp = add("lagarias", cmd_lagarias, "Lagarias divisor-sum bound for n = 1..n-max")
    sp.add_argument("--n-max", type=_positive_int, required=True)

    sp = add("prop1", cmd_prop1, "exact torus-integral form of the Mertens sum")
    sp.add_argument("--x-max", type=_positive_int, required=True)
    sp.add_argument("--beta", type=int, default=2)

    sp = add("verify-torus", cmd_verify_torus, "reconstruct mu, phi, Lambda from torus integrals")
    sp.add_argument("--a-max", type=_positive_int, required=True)
    sp.add_argument("--beta", type=int, default=3)

    sp = add("verify-algebra", cmd_verify_algebra, "convolution identities mu*1, phi*1, Lambda*1")
    sp.add_argument("--n-max", type=_positive_int, required=True)

    sp = add("euler-product", cmd_euler_product, "truncated Euler product vs smooth-number sum")
    sp.add_argument("--beta", type=_positive_float, default=2.0)
    sp.add_argument("--p-max", type=_positive_int, default=97)
    sp.add_argument("--points", type=int, default=16, help="random torus points besides t = 1")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tail-target", type=_positive_float, default=1e-11)
    return p


def _validate(p: argparse.ArgumentParser, args) -> None:
    cmd = args.command
    if cmd in ("nicolas", "ineq1") and args.k_min > args.k_max:
        p.error("--k-min must not exceed --k-max")
    if cmd == "ineq1" and args.beta <= 2:
        p.error("--beta must be an integer > 2")
    if cmd == "prop1" and args.beta < 2:
        p.error("--beta must be an integer >= 2")
    if cmd == "verify-torus" and args.beta < 2:
        p.error("--beta must be an integer >= 2")
    if cmd == "euler-product" and (args.beta <= 1 or args.points < 0):
        p.error("--beta must exceed 1 and --points must be >= 0")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    p = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = p.parse_args(argv)
            _validate(p, args)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    if args.sieve_cap is None:
        args.sieve_cap = sieve_cap()

    started = time.perf_counter()
    try:
        rows = args.func(args)
    except (SieveLimitError, MemoryError) as e:
        print(f"rhtorus: resource error: {e}", file=stderr)
        return EXIT_RESOURCE

    config = {k: v for k, v in vars(args).items() if k not in ("func", "output")}
    meta = {
        "tool": "rhtorus",
        "version": __version__,
        "config": config,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "wall_time_s": round(time.perf_counter() - started, 6),
    }
    report = Report(meta, rows)
    text = report.to_json() if args.format == "json" else report.to_csv()
    if args.output == "-":
        stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    if args.format == "csv":
        print(json.dumps({"meta": meta, "summary": report.summary}), file=stderr)
    return EXIT_FAIL if report.summary[FAILS] else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
