"""Finite-range evaluators for statements equivalent to the Riemann hypothesis.

Each evaluator emits :class:`CriterionRecord` rows whose ``margin`` is
oriented so that a positive value is consistent with RH.  Growth
statements about the Mertens function cannot be decided from finite data;
they are reported as :class:`GrowthDiagnostic` tables without verdicts.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain

import numpy as np

from .arithmetic import SieveTable, build_sieve, first_primes, harmonic_numbers, mertens
from .torus import torus_integral_mu

__all__ = [
    "EULER_GAMMA_DIGITS",
    "EULER_GAMMA",
    "DEFAULT_TOLERANCE",
    "HOLDS",
    "FAILS",
    "INDETERMINATE",
    "CRITERION_IDS",
    "ConsistencyError",
    "CriterionRecord",
    "GrowthDiagnostic",
    "verdict_for",
    "nicolas_check",
    "inequality_one_check",
    "littlewood_diagnostic",
    "prop1_sweep",
    "prop1_consistency",
    "mertens_prefix",
    "sqrt_bound_violations",
    "lagarias_check",
]

EULER_GAMMA_DIGITS = "0.577215664901532860606512090082"
EULER_GAMMA = float(EULER_GAMMA_DIGITS)

DEFAULT_TOLERANCE = 1e-9

HOLDS = "holds"
FAILS = "fails"
INDETERMINATE = "numerically-indeterminate"

CRITERION_IDS = ("nicolas", "inequality_one", "littlewood_eps", "littlewood_exp", "lagarias")


class ConsistencyError(RuntimeError):
    """Two encodings of the same inequality disagreed."""


@dataclass(frozen=True)
class CriterionRecord:
    criterion_id: str
    index: int
    lhs: float
    rhs: float
    margin: float
    verdict: str


def verdict_for(margin: float, tolerance: float = DEFAULT_TOLERANCE) -> str:
    if not math.isfinite(margin) or abs(margin) <= tolerance:
        return INDETERMINATE
    return HOLDS if margin > tolerance else FAILS


# ---------------------------------------------------------------------------
# Nicolas inequality and its torus-integral form


def _prefix_tables(k_max: int):
    primes = first_primes(k_max).tolist()
    logp = [math.log(p) for p in primes]
    # log(p/(p-1)) = -log1p(-1/p)
    ratio = [-math.log1p(-1.0 / p) for p in primes]
    logpm1 = [math.log(p - 1) for p in primes]
    return primes, logp, ratio, logpm1


def _nicolas_row(k, logp, ratio, tolerance):
    theta = math.fsum(logp[:k])
    lhs = math.fsum(ratio[:k])
    if k == 1:
        # log log 2 < 0: the fraction form flips orientation
        return CriterionRecord("nicolas", 1, lhs, math.nan, math.nan, INDETERMINATE)
    rhs = EULER_GAMMA + math.log(math.log(theta))
    margin = lhs - rhs
    return CriterionRecord("nicolas", k, lhs, rhs, margin, verdict_for(margin, tolerance))


def _ineq_row(k, beta, logp, logpm1, tolerance):
    theta = math.fsum(logp[:k])
    if k == 1:
        lhs = logpm1[0] - beta * logp[0]
        return CriterionRecord("inequality_one", 1, lhs, math.nan, math.nan, INDETERMINATE)
    scaled = [beta * x for x in logp[:k]]
    lhs = math.fsum(chain(logpm1[:k], (-x for x in scaled)))
    llt = math.log(math.log(theta))
    rhs = -EULER_GAMMA - (beta - 1) * theta - llt
    # the large terms cancel; sum them exactly before the single rounding
    margin = math.fsum(
        chain(
            (-EULER_GAMMA, -llt),
            (-(beta - 1) * x for x in logp[:k]),
            (-x for x in logpm1[:k]),
            scaled,
        )
    )
    return CriterionRecord("inequality_one", k, lhs, rhs, margin, verdict_for(margin, tolerance))


def _nicolas_chunk(args):
    ks, logp, ratio, tolerance = args
    return [_nicolas_row(k, logp, ratio, tolerance) for k in ks]


def _ineq_chunk(args):
    ks, beta, logp, logpm1, tolerance = args
    return [_ineq_row(k, beta, logp, logpm1, tolerance) for k in ks]


def _run_chunks(fn, payloads, jobs):
    if jobs <= 1 or len(payloads) <= 1:
        return [r for p in payloads for r in fn(p)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return [r for part in ex.map(fn, payloads) for r in part]


def _chunks(k_min, k_max, jobs):
    ks = list(range(k_min, k_max + 1))
    n = max(1, jobs * 4)
    size = max(1, -(-len(ks) // n))
    return [ks[i : i + size] for i in range(0, len(ks), size)]


def nicolas_check(
    k_max: int, k_min: int = 2, tolerance: float = DEFAULT_TOLERANCE, jobs: int = 1
) -> list[CriterionRecord]:
    """Nicolas' primorial inequality ``N_k/phi(N_k) > e**gamma log log N_k`` in log space.

    ``lhs = sum_j log(p_j/(p_j-1))``, ``rhs = gamma + log log theta(p_k)``,
    ``margin = lhs - rhs``.  Every row is a correctly rounded function of
    ``k`` alone, so the output does not depend on ``jobs``.  ``k = 1`` is
    reported as indeterminate by convention.
    """
    if k_max < 1 or k_min < 1 or k_min > k_max:
        raise ValueError("need 1 <= k_min <= k_max")
    _, logp, ratio, _ = _prefix_tables(k_max)
    payloads = [(ks, logp, ratio, tolerance) for ks in _chunks(k_min, k_max, jobs)]
    return _run_chunks(_nicolas_chunk, payloads, jobs)


def inequality_one_check(
    k_max: int,
    beta: int = 3,
    k_min: int = 2,
    tolerance: float = DEFAULT_TOLERANCE,
    jobs: int = 1,
    cross_check: bool = True,
) -> list[CriterionRecord]:
    """Torus-integral form of the Nicolas inequality for ``N_k`` and weight ``beta``.

    The left side is ``phi(N_k) / N_k**beta`` (the torus integral of the
    totient kernel at ``N_k``), compared with
    ``1 / (e**gamma N_k**(beta-1) log log N_k)``, both in log space.  With
    ``cross_check`` the verdict of every row is compared with
    :func:`nicolas_check` and a mismatch raises :class:`ConsistencyError`.
    """
    if int(beta) != beta or beta <= 2:
        raise ValueError("beta must be an integer > 2")
    if k_max < 1 or k_min < 1 or k_min > k_max:
        raise ValueError("need 1 <= k_min <= k_max")
    beta = int(beta)
    _, logp, _, logpm1 = _prefix_tables(k_max)
    payloads = [(ks, beta, logp, logpm1, tolerance) for ks in _chunks(k_min, k_max, jobs)]
    rows = _run_chunks(_ineq_chunk, payloads, jobs)
    if cross_check:
        for r, n in zip(rows, nicolas_check(k_max, k_min, tolerance, jobs)):
            if r.verdict != n.verdict:
                raise ConsistencyError(
                    f"k={r.index}: inequality_one margin {r.margin!r} vs nicolas margin {n.margin!r}"
                )
    return rows


# ---------------------------------------------------------------------------
# Littlewood diagnostic


@dataclass(frozen=True, eq=False)
class GrowthDiagnostic:
    x_grid: np.ndarray
    mertens: np.ndarray
    ratio_sqrt: np.ndarray
    ratio_eps: np.ndarray
    ratio_exp: np.ndarray
    eps: float
    A: float

    def rows(self) -> list[dict]:
        return [
            {
                "x": int(x),
                "mertens": int(m),
                "ratio_sqrt": float(a),
                "ratio_eps": float(b),
                "ratio_exp": float(c),
            }
            for x, m, a, b, c in zip(self.x_grid, self.mertens, self.ratio_sqrt, self.ratio_eps, self.ratio_exp)
        ]


def _growth_ratios(x: np.ndarray, m: np.ndarray, eps: float, A: float):
    xf = x.astype(np.float64)
    am = np.abs(m).astype(np.float64)
    sq = np.sqrt(xf)
    r_sqrt = am / sq
    r_eps = am / xf ** (0.5 + eps)
    lx = np.log(xf)
    with np.errstate(divide="ignore", invalid="ignore"):
        llx = np.log(lx)
        expo = np.where(xf > math.e, A * lx / llx, np.nan)
    # log log x <= 0 for x <= e: the exp-form bound is undefined there
    r_exp = am / (sq * np.exp(expo))
    return r_sqrt, r_eps, r_exp


def mertens_prefix(sieve: SieveTable, x_max: int | None = None) -> np.ndarray:
    """``M(0..x_max)`` as one cumulative sum of the sieve's Moebius row."""
    x_max = sieve.limit if x_max is None else x_max
    out = np.zeros(x_max + 1, dtype=np.int64)
    np.cumsum(sieve.mobius[1 : x_max + 1], dtype=np.int64, out=out[1:])
    return out


def littlewood_diagnostic(
    x_max: int,
    eps: float = 0.01,
    A: float = 1.0,
    sieve: SieveTable | None = None,
    points_per_decade: int = 20,
    grid: np.ndarray | None = None,
) -> GrowthDiagnostic:
    """Growth ratios of the Mertens function on a log grid plus all ``|M|`` records.

    Ratios are ``|M(x)|/sqrt(x)``, ``|M(x)|/x**(1/2+eps)`` and
    ``|M(x)|/(sqrt(x) exp(A log x / log log x))``; the last is NaN for
    ``x <= e``.  Pass ``grid`` to sample at chosen points instead.
    """
    if eps <= 0 or A <= 0:
        raise ValueError("eps and A must be positive")
    if sieve is None or sieve.limit < x_max:
        sieve = build_sieve(x_max)
    m = mertens_prefix(sieve, x_max)
    if grid is None:
        decades = math.log10(x_max) if x_max > 1 else 0.0
        logs = np.linspace(0.0, decades, max(2, int(math.ceil(decades * points_per_decade)) + 1))
        g = np.unique(np.rint(10.0**logs).astype(np.int64).clip(1, x_max))
        absm = np.abs(m[1:])
        running = np.maximum.accumulate(absm)
        rec = np.flatnonzero(np.concatenate([[True], running[1:] > running[:-1]])) + 1
        g = np.union1d(np.union1d(g, rec), [x_max])
    else:
        g = np.unique(np.asarray(grid, dtype=np.int64))
        if g.size and (g[0] < 1 or g[-1] > x_max):
            raise ValueError("grid points must lie in 1..x_max")
    mm = m[g]
    r_sqrt, r_eps, r_exp = _growth_ratios(g, mm, eps, A)
    return GrowthDiagnostic(g, mm, r_sqrt, r_eps, r_exp, eps, A)


def sqrt_bound_violations(x_max: int, sieve: SieveTable | None = None, x_min: int = 2) -> np.ndarray:
    """Every ``x`` in ``x_min..x_max`` with ``|M(x)| > sqrt(x)``, tested exactly as ``M**2 > x``."""
    if sieve is None or sieve.limit < x_max:
        sieve = build_sieve(x_max)
    m = mertens_prefix(sieve, x_max)
    x = np.arange(x_max + 1, dtype=np.int64)
    bad = m[x_min:] ** 2 > x[x_min:]
    return np.flatnonzero(bad) + x_min


# ---------------------------------------------------------------------------
# integral form of the Mertens sum


def prop1_sweep(x_max: int, beta: int = 2, sieve: SieveTable | None = None) -> list[tuple[int, int, Fraction]]:
    """Running ``(x, M(x), sum_{a<=x} a**beta I(a))`` for ``x = 1..x_max``, exact.

    ``I(a)`` is the torus integral from :func:`torus_integral_mu`, built from
    closed-form circle factors.
    """
    if int(beta) != beta or beta < 2:
        raise ValueError("exact mode needs an integer beta >= 2")
    if x_max < 1:
        raise ValueError("x must be >= 1")
    if sieve is None or sieve.limit < x_max:
        sieve = build_sieve(max(x_max, 2))
    b = int(beta)
    total = Fraction(0)
    m = 0
    out = []
    for a in range(1, x_max + 1):
        res = torus_integral_mu(a, b, sieve=sieve)
        total += Fraction(a**b) * res.value
        m += int(sieve.mobius[a])
        out.append((a, m, total))
    return out


def prop1_consistency(x: int, beta: int = 2, sieve: SieveTable | None = None) -> Fraction:
    """``|sum_{a<=x} a**beta I(a) - M(x)|`` in exact rationals; zero when the identity holds."""
    _, _, total = prop1_sweep(x, beta, sieve)[-1]
    if sieve is None or sieve.limit < x:
        sieve = build_sieve(max(x, 2))
    return abs(total - mertens(x, sieve))


# ---------------------------------------------------------------------------
# Lagarias


def lagarias_check(
    n_max: int, sieve: SieveTable | None = None, tolerance: float = DEFAULT_TOLERANCE, n_min: int = 1
) -> list[CriterionRecord]:
    """Lagarias' bound ``sigma(n) <= H_n + exp(H_n) log H_n`` for ``n_min..n_max``.

    ``margin = rhs - sigma(n)``.  At ``n = 1`` both sides equal 1, which
    lands in the indeterminate band; that is the expected boundary case.
    """
    if n_max < 1 or n_min < 1 or n_min > n_max:
        raise ValueError("need 1 <= n_min <= n_max")
    if sieve is None or sieve.limit < n_max:
        sieve = build_sieve(n_max)
    h = harmonic_numbers(n_max)
    rows = []
    for n in range(n_min, n_max + 1):
        hn = float(h[n])
        s = int(sieve.sigma[n])
        rhs = hn + math.exp(hn) * math.log(hn)
        margin = rhs - s
        rows.append(CriterionRecord("lagarias", n, float(s), rhs, margin, verdict_for(margin, tolerance)))
    return rows
