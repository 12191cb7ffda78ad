"""Dirichlet convolution algebra on finitely supported arithmetic functions.

Values live in a numpy array indexed ``0..support_limit`` with slot 0
unused.  Three value kinds are supported and never mixed implicitly:

``"int"``       exact integers (object dtype, Python ints)
``"rational"``  exact :class:`fractions.Fraction` values (object dtype)
``"real"``      float64
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .arithmetic import SieveTable, build_sieve

__all__ = [
    "KINDS",
    "ArithmeticFunction",
    "Weight",
    "as_weight",
    "convolve",
    "weighted_norm",
    "mobius_invert",
    "unit",
    "ones",
    "identity",
    "log_function",
    "mobius_function",
    "totient_function",
    "mangoldt_function",
]

KINDS = ("int", "rational", "real")


@dataclass(frozen=True, eq=False)
class ArithmeticFunction:
    values: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown value kind {self.kind!r}")
        v = self.values
        if v.ndim != 1 or len(v) < 2:
            raise ValueError("values must be 1-D with at least one entry past index 0")
        if self.kind == "real":
            v = np.array(v, dtype=np.float64)
        elif self.kind == "rational":
            v = np.array([Fraction(x) for x in v.tolist()], dtype=object)
        else:
            v = np.array([_exact_int(x) for x in v.tolist()], dtype=object)
        v[0] = 0.0 if self.kind == "real" else 0
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, fn: Callable[[int], object], limit: int, kind: str):
        vals = [0] + [fn(n) for n in range(1, limit + 1)]
        if kind == "real":
            return cls(np.asarray(vals, dtype=np.float64), kind)
        return cls(np.asarray(vals, dtype=object), kind)

    @property
    def support_limit(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int):
        if not 1 <= n <= self.support_limit:
            raise IndexError(f"{n} outside 1..{self.support_limit}")
        return self.values[n]

    def __eq__(self, other):
        if not isinstance(other, ArithmeticFunction):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.support_limit == other.support_limit
            and bool(np.all(self.values == other.values))
        )

    __hash__ = None  # type: ignore[assignment]

    def truncate(self, limit: int) -> ArithmeticFunction:
        if not 1 <= limit <= self.support_limit:
            raise ValueError(f"cannot truncate to {limit}")
        return ArithmeticFunction(self.values[: limit + 1].copy(), self.kind)

    def as_kind(self, kind: str) -> ArithmeticFunction:
        """Explicit kind conversion; exact -> real rounds, real -> exact is refused."""
        if kind == self.kind:
            return self
        if self.kind == "real":
            raise ValueError("cannot convert real values to an exact kind")
        if kind == "real":
            return ArithmeticFunction(np.array([float(x) for x in self.values]), "real")
        if kind == "rational":
            return ArithmeticFunction(self.values.copy(), "rational")
        if any(Fraction(x).denominator != 1 for x in self.values):
            raise ValueError("non-integral rational values")
        return ArithmeticFunction(self.values.copy(), "int")

    def abs(self) -> ArithmeticFunction:
        return ArithmeticFunction(np.abs(self.values), self.kind)


def _exact_int(x) -> int:
    i = int(x)
    if i != x:
        raise ValueError(f"non-integral value {x!r} in an int-kind function")
    return i


@dataclass(frozen=True)
class Weight:
    """Polynomial weight ``rho(a) = a**-beta`` on the naturals."""

    beta: float
    exact_mode: bool = False

    def __post_init__(self):
        if not self.beta > 1:
            raise ValueError(f"beta must exceed 1, got {self.beta}")
        if self.exact_mode and (int(self.beta) != self.beta or self.beta < 2):
            raise ValueError("exact mode needs an integer beta >= 2")

    @property
    def is_integral(self) -> bool:
        return int(self.beta) == self.beta

    def rho(self, a: int):
        if self.exact_mode:
            return Fraction(1, a ** int(self.beta))
        return float(a) ** -self.beta


def as_weight(beta: Weight | float) -> Weight:
    """Coerce a bare exponent into a :class:`Weight`; integer exponents get exact mode."""
    if isinstance(beta, Weight):
        return beta
    if int(beta) == beta and beta >= 2:
        return Weight(int(beta), exact_mode=True)
    return Weight(float(beta))


def convolve(f: ArithmeticFunction, g: ArithmeticFunction, limit: int | None = None) -> ArithmeticFunction:
    """Dirichlet convolution ``(f*g)(a) = sum_{d|a} f(d) g(a/d)`` for ``a <= limit``.

    Only divisors of ``a`` enter, so truncating both operands at ``limit``
    loses nothing.
    """
    if f.kind != g.kind:
        raise TypeError(f"mixed value kinds: {f.kind} and {g.kind}")
    top = min(f.support_limit, g.support_limit)
    limit = top if limit is None else int(limit)
    if not 1 <= limit <= top:
        raise ValueError(f"limit {limit} outside 1..{top}")
    fv, gv = f.values, g.values
    if f.kind == "real":
        out = np.zeros(limit + 1, dtype=np.float64)
    else:
        out = np.zeros(limit + 1, dtype=object)
        out[:] = 0
    for d in range(1, limit + 1):
        fd = fv[d]
        if fd == 0:
            continue
        m = limit // d
        out[d : d * m + 1 : d] += fd * gv[1 : m + 1]
    return ArithmeticFunction(out, f.kind)


def weighted_norm(f: ArithmeticFunction, w: Weight | float) -> float:
    """``sum |f(n)| n**-beta`` over the support, correctly rounded."""
    w = as_weight(w)
    n = np.arange(1, f.support_limit + 1, dtype=np.float64)
    if f.kind == "real":
        mag = np.abs(f.values[1:])
    else:
        mag = np.array([abs(float(x)) for x in f.values[1:]], dtype=np.float64)
    return math.fsum((mag * n ** -float(w.beta)).tolist())


def mobius_invert(g: ArithmeticFunction, limit: int | None = None, sieve: SieveTable | None = None) -> ArithmeticFunction:
    """Return ``f = g * mu``, the unique ``f`` with ``f * 1 = g`` on ``1..limit``."""
    limit = g.support_limit if limit is None else int(limit)
    mu = mobius_function(limit, g.kind, sieve)
    return convolve(g, mu, limit)


# ---------------------------------------------------------------------------
# standard functions


def _sieve_for(limit: int, sieve: SieveTable | None) -> SieveTable:
    if sieve is not None and sieve.limit >= limit:
        return sieve
    return build_sieve(limit)


def _from_ints(arr: np.ndarray, limit: int, kind: str) -> ArithmeticFunction:
    vals = np.asarray(arr[: limit + 1])
    if kind == "real":
        return ArithmeticFunction(vals.astype(np.float64), "real")
    obj = np.array(vals.tolist(), dtype=object)
    if kind == "rational":
        obj = np.array([Fraction(x) for x in obj], dtype=object)
    return ArithmeticFunction(obj, kind)


def unit(limit: int, kind: str = "int") -> ArithmeticFunction:
    """Indicator of ``{1}``, the convolution identity."""
    v = np.zeros(limit + 1, dtype=np.int64)
    v[1] = 1
    return _from_ints(v, limit, kind)


def ones(limit: int, kind: str = "int") -> ArithmeticFunction:
    return _from_ints(np.ones(limit + 1, dtype=np.int64), limit, kind)


def identity(limit: int, kind: str = "int") -> ArithmeticFunction:
    return _from_ints(np.arange(limit + 1, dtype=np.int64), limit, kind)


def log_function(limit: int) -> ArithmeticFunction:
    v = np.zeros(limit + 1, dtype=np.float64)
    v[1:] = np.log(np.arange(1, limit + 1, dtype=np.float64))
    return ArithmeticFunction(v, "real")


def mobius_function(limit: int, kind: str = "int", sieve: SieveTable | None = None) -> ArithmeticFunction:
    s = _sieve_for(limit, sieve)
    return _from_ints(s.mobius.astype(np.int64), limit, kind)


def totient_function(limit: int, kind: str = "int", sieve: SieveTable | None = None) -> ArithmeticFunction:
    s = _sieve_for(limit, sieve)
    return _from_ints(s.totient, limit, kind)


def mangoldt_function(limit: int, sieve: SieveTable | None = None) -> ArithmeticFunction:
    s = _sieve_for(limit, sieve)
    return ArithmeticFunction(s.mangoldt_array()[: limit + 1].copy(), "real")
