"""Laplace transforms on the naturals and integrals over the infinite torus.

A bounded semicharacter of the multiplicative semigroup of naturals is a
point ``z`` of the closed polydisc, acting by ``a -> z**alpha(a)``.  With
the weight ``rho(a) = a**-beta`` the relevant points are
``z_j = t_j / p_j**beta`` with ``t`` on the torus.

Integrals over the infinite torus factor into one-dimensional circle
averages, one per prime.  Every prime not dividing the target contributes
exactly 1, so the torus is truncated to the primes of the target and no
multi-dimensional quadrature is ever done.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arithmetic import ExponentVector, SieveTable, exponent_vector, first_primes, primes_up_to
from .dirichlet import ArithmeticFunction, Weight, as_weight, convolve

__all__ = [
    "FACTOR_KINDS",
    "TruncatedTorusPoint",
    "CircleFactor",
    "TorusIntegralResult",
    "LaplaceValue",
    "HomomorphismCheck",
    "SmoothSum",
    "polydisc_point",
    "laplace_partial",
    "euler_product_partial",
    "smooth_number_sum",
    "default_node_count",
    "circle_factor_closed",
    "circle_factor_quadrature",
    "torus_integral_mu",
    "torus_integral_phi",
    "torus_integral_mangoldt",
    "transform_homomorphism_check",
]

FACTOR_KINDS = ("mu", "phi", "mangoldt")

_UNIT_TOL = 1e-14
_DOMAIN_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class TruncatedTorusPoint:
    """Point ``(t_1, ..., t_K)`` of the torus, one coordinate per prime."""

    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=np.complex128).reshape(-1)
        if c.size and np.max(np.abs(np.abs(c) - 1.0)) > _UNIT_TOL:
            raise ValueError("torus coordinates must have unit modulus")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    def __len__(self) -> int:
        return len(self.coords)

    @classmethod
    def ones(cls, k: int) -> TruncatedTorusPoint:
        return cls(np.ones(k, dtype=np.complex128))

    @classmethod
    def from_angles(cls, theta) -> TruncatedTorusPoint:
        return cls(np.exp(1j * np.asarray(theta, dtype=np.float64)))

    @classmethod
    def random(cls, k: int, rng: np.random.Generator | int | None = None) -> TruncatedTorusPoint:
        rng = np.random.default_rng(rng)
        return cls.from_angles(rng.uniform(0.0, 2 * np.pi, size=k))


def polydisc_point(t: TruncatedTorusPoint, beta: Weight | float) -> np.ndarray:
    """``z_j = t_j * p_j**-beta``: the semicharacter ``rho * chi`` as a polydisc point."""
    w = as_weight(beta)
    p = first_primes(len(t)).astype(np.float64)
    return t.coords * p ** -float(w.beta)


# ---------------------------------------------------------------------------
# Laplace transform


@dataclass(frozen=True)
class LaplaceValue:
    value: complex | np.ndarray
    tail: float


def _monomials(z: np.ndarray, n_max: int) -> np.ndarray:
    """``w[a, i] = z[i]**alpha(a)`` for ``a <= n_max`` (rows 0 unused)."""
    primes = primes_up_to(n_max)
    w = np.ones((n_max + 1, z.shape[0]), dtype=np.complex128)
    w[0] = 0
    for j, p in enumerate(primes.tolist()):
        zj = z[:, j]
        pk = p
        while pk <= n_max:
            w[pk::pk] *= zj
            pk *= p
    return w


def _float_values(f: ArithmeticFunction) -> np.ndarray:
    if f.kind == "real":
        return np.asarray(f.values, dtype=np.float64)
    return np.array([float(x) for x in f.values], dtype=np.float64)


def laplace_partial(
    f: ArithmeticFunction,
    z,
    n_max: int | None = None,
    beta: Weight | float = 2,
) -> LaplaceValue:
    """Truncated Laplace transform ``sum_{a <= n_max} f(a) z**alpha(a)``.

    ``z`` holds one coordinate per prime (in order 2, 3, 5, ...), at least
    as many as there are primes up to ``n_max``; a 2-D array evaluates a
    batch of points at once, one per row.  ``tail`` bounds the omitted
    part ``sum_{n_max < a} |f(a)| a**-beta`` over the stored support.

    Raises:
        ValueError: a coordinate lies outside ``|z_j| <= p_j**-beta``.
    """
    w = as_weight(beta)
    n_max = f.support_limit if n_max is None else int(n_max)
    if not 1 <= n_max <= f.support_limit:
        raise ValueError(f"n_max {n_max} outside 1..{f.support_limit}")
    zz = np.asarray(z, dtype=np.complex128)
    single = zz.ndim == 1
    zz = np.atleast_2d(zz)
    primes = primes_up_to(n_max)
    if zz.shape[1] < len(primes):
        raise ValueError(f"need {len(primes)} coordinates for n_max={n_max}, got {zz.shape[1]}")
    k = zz.shape[1]
    radius = first_primes(k).astype(np.float64) ** -float(w.beta)
    if np.any(np.abs(zz) > radius * (1 + _DOMAIN_SLACK)):
        raise ValueError("point outside the polydisc |z_j| <= p_j**-beta")

    fv = _float_values(f)
    mono = _monomials(zz, n_max)
    value = fv[1 : n_max + 1] @ mono[1:]

    tail = 0.0
    if f.support_limit > n_max:
        a = np.arange(n_max + 1, f.support_limit + 1, dtype=np.float64)
        tail = math.fsum((np.abs(fv[n_max + 1 :]) * a ** -float(w.beta)).tolist())
    return LaplaceValue(complex(value[0]) if single else value, tail)


@dataclass(frozen=True)
class HomomorphismCheck:
    max_deviation: float
    tail_bound: float
    deviations: np.ndarray = field(repr=False)

    @property
    def within_bound(self) -> bool:
        return self.max_deviation <= self.tail_bound


def transform_homomorphism_check(
    f: ArithmeticFunction,
    g: ArithmeticFunction,
    sample_points: Sequence[TruncatedTorusPoint] | np.ndarray,
    beta: Weight | float,
    n_max: int | None = None,
) -> HomomorphismCheck:
    """Compare the transform of ``f*g`` with the product of transforms.

    All three transforms are truncated at ``n_max``.  The product of the
    truncated transforms of ``f`` and ``g`` carries the extra terms
    ``f(a) g(b)`` with ``ab > n_max``; ``tail_bound`` is their total weight
    ``sum |f(a)||g(b)| (ab)**-beta`` plus a floating-point allowance for the
    three length-``n_max`` dot products.
    """
    w = as_weight(beta)
    n_max = min(f.support_limit, g.support_limit) if n_max is None else int(n_max)
    f = f.truncate(n_max)
    g = g.truncate(n_max)
    fg = convolve(f, g, n_max)

    if isinstance(sample_points, np.ndarray):
        t = np.atleast_2d(sample_points)
    else:
        t = np.vstack([np.asarray(pt.coords) for pt in sample_points])
    p = first_primes(t.shape[1]).astype(np.float64)
    z = t * p ** -float(w.beta)

    lf = laplace_partial(f, z, n_max, w).value
    lg = laplace_partial(g, z, n_max, w).value
    lfg = laplace_partial(fg, z, n_max, w).value
    dev = np.abs(lfg - lf * lg)

    n = np.arange(1, n_max + 1, dtype=np.float64)
    wt = n ** -float(w.beta)
    af = np.abs(_float_values(f)[1:]) * wt
    ag = np.abs(_float_values(g)[1:]) * wt
    # suffix[b] = sum_{b' >= b} |g(b')| b'**-beta, b = 1..n_max+1
    suffix = np.concatenate([np.cumsum(ag[::-1])[::-1], [0.0]])
    first_b = n_max // np.arange(1, n_max + 1) + 1
    cross = math.fsum((af * suffix[first_b - 1]).tolist())

    norm_f, norm_g = math.fsum(af.tolist()), math.fsum(ag.tolist())
    norm_fg = math.fsum((np.abs(_float_values(fg)[1:]) * wt).tolist())
    u = np.finfo(np.float64).eps / 2
    gam = 2 * n_max * u / (1 - 2 * n_max * u)
    rounding = gam * (norm_fg + 2 * norm_f * norm_g) + gam * cross
    return HomomorphismCheck(float(dev.max()), cross + rounding, dev)


# ---------------------------------------------------------------------------
# Euler product


def euler_product_partial(beta: Weight | float, t: TruncatedTorusPoint, k: int | None = None) -> complex:
    """``prod_{j <= K} 1 / (1 - t_j p_j**-beta)``."""
    w = as_weight(beta)
    k = len(t) if k is None else int(k)
    if k < 0 or k > len(t):
        raise ValueError(f"K={k} outside 0..{len(t)}")
    if k == 0:
        return 1.0 + 0.0j
    p = first_primes(k).astype(np.float64)
    terms = 1.0 / (1.0 - t.coords[:k] * p ** -float(w.beta))
    out = 1.0 + 0.0j
    for x in terms:
        out *= x
    return complex(out)


@dataclass(frozen=True)
class SmoothSum:
    value: complex
    bound: float
    tail_bound: float
    count: int


def _rankin_tail(primes: np.ndarray, beta: float, bound: float) -> float:
    # sum_{smooth n > B} n^-beta <= B^-d * sum_{smooth} n^-(beta-d), 0 < d < beta
    best = math.inf
    logp = np.log(primes.astype(np.float64))
    for d in np.linspace(0.05, beta - 0.05, 200):
        s = beta - d
        log_total = -float(np.sum(np.log1p(-np.exp(-s * logp))))
        best = min(best, math.exp(-d * math.log(bound) + log_total))
    return best


def smooth_number_sum(
    beta: float,
    t: TruncatedTorusPoint,
    p_max: int,
    tail_target: float = 1e-11,
    max_terms: int = 20_000_000,
) -> SmoothSum:
    """Independent oracle for the truncated Euler product.

    Enumerates every ``p_max``-smooth integer ``n <= B`` and sums
    ``t**alpha(n) n**-beta`` directly.  ``B`` is grown until a Rankin-type
    bound on the omitted smooth integers drops below ``tail_target``.
    """
    primes = primes_up_to(p_max)
    if len(t) < len(primes):
        raise ValueError(f"need {len(primes)} torus coordinates, got {len(t)}")
    beta = float(beta)
    log_b = math.log(10) * 4
    while _rankin_tail(primes, beta, math.exp(log_b)) > tail_target:
        log_b += math.log(10) / 4
    bound = math.exp(log_b)

    nums = np.array([1.0])
    vals = np.array([1.0 + 0.0j])
    for j, p in enumerate(primes.tolist()):
        step = t.coords[j] * float(p) ** -beta
        new_n, new_v = [nums], [vals]
        cur_n, cur_v = nums, vals
        while True:
            cur_n = cur_n * p
            keep = cur_n <= bound
            if not keep.any():
                break
            cur_n = cur_n[keep]
            cur_v = cur_v[keep] * step
            new_n.append(cur_n)
            new_v.append(cur_v)
        nums = np.concatenate(new_n)
        vals = np.concatenate(new_v)
        if len(nums) > max_terms:
            raise MemoryError("smooth-number enumeration exceeds max_terms")
    order = np.argsort(nums)[::-1]  # add small terms first
    v = vals[order]
    value = complex(math.fsum(v.real.tolist()), math.fsum(v.imag.tolist()))
    return SmoothSum(value, bound, _rankin_tail(primes, beta, bound), len(nums))


# ---------------------------------------------------------------------------
# circle factors


@dataclass(frozen=True)
class CircleFactor:
    """One per-prime circle integral of a torus integrand."""

    kind: str
    prime: int
    beta: Weight
    alpha: int
    value: Fraction | float | complex


def _check_kind(kind: str) -> None:
    if kind not in FACTOR_KINDS:
        raise ValueError(f"unknown factor kind {kind!r}")


def _closed_value(kind: str, p: int, w: Weight, alpha: int):
    exact = w.exact_mode
    b = int(w.beta) if exact else float(w.beta)
    if kind == "mu":
        if alpha == 0:
            return Fraction(1) if exact else 1.0
        if alpha == 1:
            return Fraction(-1, p**b) if exact else -(float(p) ** -b)
        return Fraction(0) if exact else 0.0
    if kind == "phi":
        if alpha == 0:
            return Fraction(1) if exact else 1.0
        if exact:
            return Fraction(p - 1, p ** ((b - 1) * alpha + 1))
        return (p - 1) * float(p) ** -((b - 1) * alpha + 1)
    # mangoldt: log p is irrational, so the value is always a float
    if alpha == 0:
        return 0.0
    return math.log(p) * float(p) ** -(b * alpha)


def circle_factor_closed(kind: str, p: int, beta: Weight | float, alpha: int) -> CircleFactor:
    """Closed-form value of one circle factor.

    ``mu``:       mean of ``(1 - t/p**beta) t**-alpha``
    ``phi``:      mean of ``(1 - t/p**beta) / (1 - t/p**(beta-1)) t**-alpha``
    ``mangoldt``: mean of ``log p (t/p**beta) / (1 - t/p**beta) t**-alpha``
    """
    _check_kind(kind)
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    w = as_weight(beta)
    return CircleFactor(kind, int(p), w, int(alpha), _closed_value(kind, int(p), w, int(alpha)))


def default_node_count(p: int, beta: float, alpha: int, tol: float = 1e-15) -> int:
    """Node count for which the aliasing error of the uniform rule is below ``tol``."""
    decay = (float(beta) - 1.0) * math.log(p)
    return max(alpha + 2, math.ceil(math.log(tol) / -decay) + alpha + 1)


def _integrand(kind: str, p: int, beta: float, t: np.ndarray) -> np.ndarray:
    x = t * float(p) ** -beta
    if kind == "mu":
        return 1.0 - x
    if kind == "phi":
        return (1.0 - x) / (1.0 - t * float(p) ** -(beta - 1.0))
    return math.log(p) * x / (1.0 - x)


def circle_factor_quadrature(
    kind: str, p: int, beta: Weight | float, alpha: int, nodes: int | None = None
) -> complex:
    """Uniform ``M``-node average of the circle integrand over the unit circle.

    The ``mu`` integrand is a trigonometric polynomial of degree ``alpha+1``
    and is integrated exactly once ``M >= alpha + 2``; the other two are
    geometric series whose aliasing error is ``O(p**-((beta-1) M))``.
    """
    _check_kind(kind)
    w = as_weight(beta)
    b = float(w.beta)
    if kind == "phi" and b <= 2:
        raise ValueError("phi factors need beta > 2")
    m = default_node_count(p, b, alpha) if nodes is None else int(nodes)
    if m < alpha + 2:
        raise ValueError(f"need at least alpha+2={alpha + 2} nodes, got {m}")
    k = np.arange(m)
    t = np.exp(2j * np.pi * k / m)
    # t**-alpha evaluated on the index grid to avoid powering roundoff
    shift = np.exp(-2j * np.pi * ((alpha * k) % m) / m)
    return complex(np.mean(_integrand(kind, p, b, t) * shift))


# ---------------------------------------------------------------------------
# torus integrals


@dataclass(frozen=True)
class TorusIntegralResult:
    """Torus integral ``value`` and the recovered arithmetic value ``a**beta * value``."""

    target: int
    beta: Weight
    kind: str
    value: Fraction | float | complex
    reconstructed: Fraction | float | complex
    factors: tuple[CircleFactor, ...] = ()


def _factors_of(a: int, sieve: SieveTable | None) -> ExponentVector:
    if a < 1:
        raise ValueError("target must be >= 1")
    return exponent_vector(a, sieve)


def _scale(a: int, w: Weight):
    return Fraction(a ** int(w.beta)) if w.exact_mode else float(a) ** float(w.beta)


def _product_integral(kind: str, a: int, w: Weight, method: str, nodes: int | None, sieve) -> TorusIntegralResult:
    vec = _factors_of(a, sieve)
    factors = []
    value = Fraction(1) if (w.exact_mode and method == "closed") else 1.0
    for p, e in vec.items():
        if method == "closed":
            cf = circle_factor_closed(kind, p, w, e)
        elif method == "quadrature":
            q = circle_factor_quadrature(kind, p, w, e, nodes)
            cf = CircleFactor(kind, p, w, e, q)
        else:
            raise ValueError(f"unknown method {method!r}")
        factors.append(cf)
        value = value * cf.value
    scale = _scale(a, w) if method == "closed" else float(a) ** float(w.beta)
    return TorusIntegralResult(a, w, kind, value, scale * value, tuple(factors))


def torus_integral_mu(
    a: int, beta: Weight | float, method: str = "closed", nodes: int | None = None, sieve: SieveTable | None = None
) -> TorusIntegralResult:
    """Integral of ``t**-alpha(a)`` against the reciprocal of the twisted zeta series.

    ``reconstructed`` equals the Moebius function of ``a``; exact in exact mode.
    """
    return _product_integral("mu", int(a), as_weight(beta), method, nodes, sieve)


def torus_integral_phi(
    a: int, beta: Weight | float, method: str = "closed", nodes: int | None = None, sieve: SieveTable | None = None
) -> TorusIntegralResult:
    """Integral whose ``a**beta`` multiple is Euler's totient of ``a`` (needs ``beta > 2``)."""
    w = as_weight(beta)
    if not w.beta > 2:
        raise ValueError("the totient representation needs beta > 2")
    return _product_integral("phi", int(a), w, method, nodes, sieve)


def torus_integral_mangoldt(
    n: int, beta: Weight | float, method: str = "closed", nodes: int | None = None, sieve: SieveTable | None = None
) -> TorusIntegralResult:
    """Integral whose ``n**beta`` multiple is the von Mangoldt function of ``n``.

    The integrand is the logarithmic derivative of the twisted Euler
    product, which splits into a sum over primes of one-variable terms
    ``log p_j * (t_j/p_j**beta) / (1 - t_j/p_j**beta)``.  Each summand's
    torus integral is its own circle factor times the circle means of
    ``t_i**-alpha_i`` for the other primes, and those vanish unless
    ``alpha_i = 0``.  So only prime powers survive, with value
    ``log p * p**(-beta m)``.
    """
    w = as_weight(beta)
    n = int(n)
    vec = _factors_of(n, sieve)
    pairs = list(vec.items())
    factors = []
    value: float | complex = 0.0
    for j, (p, e) in enumerate(pairs):
        if method == "closed":
            cf = circle_factor_closed("mangoldt", p, w, e)
            others = 1.0 if len(pairs) == 1 else 0.0
        elif method == "quadrature":
            cf = CircleFactor("mangoldt", p, w, e, circle_factor_quadrature("mangoldt", p, w, e, nodes))
            others = 1.0
            for i, (q, ei) in enumerate(pairs):
                if i != j:
                    others *= _circle_mean_monomial(ei, nodes if nodes else ei + 2)
        else:
            raise ValueError(f"unknown method {method!r}")
        factors.append(cf)
        value = value + cf.value * others
    if method == "closed":
        if len(pairs) == 1:
            p, e = pairs[0]
            coeff = Fraction(n ** int(w.beta), p ** (int(w.beta) * e)) if w.exact_mode else 1.0
            reconstructed = float(coeff) * math.log(p)
        else:
            reconstructed = 0.0
    else:
        reconstructed = float(n) ** float(w.beta) * value
    return TorusIntegralResult(n, w, "mangoldt", value, reconstructed, tuple(factors))


def _circle_mean_monomial(alpha: int, nodes: int) -> complex:
    k = np.arange(nodes)
    return complex(np.mean(np.exp(-2j * np.pi * ((alpha * k) % nodes) / nodes)))
