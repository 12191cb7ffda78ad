"""Integer-level arithmetic functions backed by a smallest-prime-factor sieve.

The :class:`SieveTable` holds the Moebius function, Euler's totient, the
divisor sum and a prime-power base table (from which the von Mangoldt
function is produced on demand).  Everything above the sieve is pure.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "DEFAULT_SIEVE_CAP",
    "SIEVE_CAP_ENV",
    "SieveLimitError",
    "ExponentVector",
    "SieveTable",
    "PrimorialRecord",
    "NeumaierSum",
    "primes_up_to",
    "first_primes",
    "prime_index",
    "exponent_vector",
    "from_exponent_vector",
    "build_sieve",
    "sieve_cap",
    "mangoldt",
    "mertens",
    "chebyshev_psi",
    "primorials",
    "harmonic_number",
    "harmonic_numbers",
]

DEFAULT_SIEVE_CAP = 10**8
SIEVE_CAP_ENV = "RHTORUS_SIEVE_CAP"


class SieveLimitError(MemoryError):
    """Requested sieve size exceeds the configured cap."""


def sieve_cap() -> int:
    """Current sieve cap, honouring the ``RHTORUS_SIEVE_CAP`` override."""
    raw = os.environ.get(SIEVE_CAP_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_SIEVE_CAP
    return int(raw.strip())


# ---------------------------------------------------------------------------
# compensated summation


class NeumaierSum:
    """Running compensated sum (Neumaier's variant of Kahan summation).

    ``math.fsum`` is preferred whenever all terms are available at once;
    this accumulator exists for prefix sweeps where every partial sum is
    needed.
    """

    __slots__ = ("_s", "_c")

    def __init__(self, value: float = 0.0):
        self._s = float(value)
        self._c = 0.0

    def add(self, x: float) -> None:
        x = float(x)
        t = self._s + x
        if abs(self._s) >= abs(x):
            self._c += (self._s - t) + x
        else:
            self._c += (x - t) + self._s
        self._s = t

    @property
    def value(self) -> float:
        return self._s + self._c


# ---------------------------------------------------------------------------
# primes and factorization


def primes_up_to(n: int) -> np.ndarray:
    """All primes ``<= n`` as an int64 array."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    is_prime[4::2] = False
    for i in range(3, math.isqrt(n) + 1, 2):
        if is_prime[i]:
            is_prime[i * i :: 2 * i] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def first_primes(k: int) -> np.ndarray:
    """The first ``k`` primes."""
    if k <= 0:
        return np.zeros(0, dtype=np.int64)
    if k < 6:
        bound = 15
    else:
        # Rosser: p_k < k (log k + log log k) for k >= 6
        bound = int(k * (math.log(k) + math.log(math.log(k)))) + 1
    return primes_up_to(bound)[:k]


_prime_cache = primes_up_to(1 << 16)


def prime_index(p: int) -> int:
    """1-based index of the prime ``p`` (2 -> 1, 3 -> 2, ...).

    Backed by a prime table that grows by doubling; primes beyond the sieve
    cap are refused rather than counted.
    """
    global _prime_cache
    p = int(p)
    if p > int(_prime_cache[-1]):
        if p > sieve_cap():
            raise SieveLimitError(f"prime {p} beyond the sieve cap")
        top = int(_prime_cache[-1])
        while top < p:
            top *= 2
        _prime_cache = primes_up_to(min(top, sieve_cap()))
    i = int(np.searchsorted(_prime_cache, p))
    if i < len(_prime_cache) and _prime_cache[i] == p:
        return i + 1
    raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class ExponentVector:
    """Prime-exponent sequence of a natural number.

    ``entries`` holds ``(prime_index, exponent)`` pairs sorted by the 1-based
    prime index, zero exponents omitted; ``primes`` carries the matching
    primes so callers do not have to re-derive them.
    """

    entries: tuple[tuple[int, int], ...]
    primes: tuple[int, ...]

    def __post_init__(self):
        idx = [i for i, _ in self.entries]
        if idx != sorted(set(idx)):
            raise ValueError("prime indices must be strictly increasing")
        if any(e <= 0 for _, e in self.entries):
            raise ValueError("exponents must be positive")
        if len(self.primes) != len(self.entries):
            raise ValueError("primes and entries differ in length")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.entries)

    def items(self) -> Iterator[tuple[int, int]]:
        """``(prime, exponent)`` pairs."""
        return zip(self.primes, (e for _, e in self.entries))

    @property
    def value(self) -> int:
        return from_exponent_vector(self)


def _factor(n: int, spf: np.ndarray | None = None) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    if spf is not None and n < len(spf):
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 5
    step = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


def exponent_vector(n: int, sieve: SieveTable | None = None) -> ExponentVector:
    """Canonical factorization of ``n`` as an :class:`ExponentVector`.

    Uses the sieve's smallest-prime-factor table when ``n`` is in range,
    trial division otherwise.
    """
    if isinstance(n, bool) or int(n) != n:
        raise TypeError("n must be an integer")
    n = int(n)
    if n < 1:
        raise ValueError("exponent_vector needs n >= 1")
    spf = sieve.smallest_prime_factor if sieve is not None else None
    pairs = _factor(n, spf)
    entries = tuple((prime_index(p), e) for p, e in pairs)
    return ExponentVector(entries, tuple(p for p, _ in pairs))


def from_exponent_vector(vec: ExponentVector | Iterable[tuple[int, int]]) -> int:
    """Rebuild ``n`` from ``(prime_index, exponent)`` pairs."""
    entries = vec.entries if isinstance(vec, ExponentVector) else tuple(vec)
    if not entries:
        return 1
    kmax = max(i for i, _ in entries)
    primes = first_primes(kmax)
    n = 1
    for i, e in entries:
        n *= int(primes[i - 1]) ** e
    return n


# ---------------------------------------------------------------------------
# sieve


@dataclass(frozen=True, eq=False)
class SieveTable:
    """Arithmetic-function tables on ``1..limit`` (index 0 is padding).

    Arrays are read-only once built.  ``prime_power_base[n]`` is ``p`` when
    ``n = p**m`` and 0 otherwise; the von Mangoldt value is its log.
    """

    limit: int
    primes: np.ndarray
    smallest_prime_factor: np.ndarray
    mobius: np.ndarray
    totient: np.ndarray
    sigma: np.ndarray
    prime_power_base: np.ndarray

    def mangoldt(self, n: int) -> float:
        self._check(n)
        b = int(self.prime_power_base[n])
        return math.log(b) if b else 0.0

    def mangoldt_array(self) -> np.ndarray:
        """Dense float array of the von Mangoldt function (index 0 is 0)."""
        base = self.prime_power_base
        out = np.zeros(self.limit + 1, dtype=np.float64)
        mask = base > 0
        out[mask] = np.log(base[mask].astype(np.float64))
        return out

    def is_prime(self, n: int) -> bool:
        self._check(n)
        return n >= 2 and int(self.smallest_prime_factor[n]) == n

    def _check(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise ValueError(f"{n} outside sieve range 1..{self.limit}")


def build_sieve(limit: int, cap: int | None = None) -> SieveTable:
    """Sieve mu, phi, sigma, smallest prime factors and prime powers up to ``limit``.

    Raises:
        ValueError: ``limit < 1``.
        SieveLimitError: ``limit`` exceeds ``cap`` (default from
            :func:`sieve_cap`).
    """
    limit = int(limit)
    if limit < 1:
        raise ValueError("sieve limit must be >= 1")
    cap = sieve_cap() if cap is None else int(cap)
    if limit > cap:
        raise SieveLimitError(f"sieve limit {limit} exceeds cap {cap}")

    n = limit
    idx_dtype = np.int32 if n < 2**31 - 1 else np.int64

    spf = np.zeros(n + 1, dtype=idx_dtype)
    spf[2::2] = 2
    for p in range(3, math.isqrt(n) + 1, 2):
        if spf[p] == 0:
            s = spf[p * p :: 2 * p]
            s[s == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest.astype(idx_dtype)
    spf[0] = 0
    spf[1] = 1
    primes = np.flatnonzero(spf[2:] == np.arange(2, n + 1)) + 2
    primes = primes.astype(np.int64)

    mobius = np.ones(n + 1, dtype=np.int8)
    totient = np.arange(n + 1, dtype=np.int64)
    sigma = np.ones(n + 1, dtype=np.int64)
    base = np.zeros(n + 1, dtype=idx_dtype)
    mobius[0] = 0
    sigma[0] = 0
    for p in primes.tolist():
        mobius[p::p] *= -1
        totient[p::p] -= totient[p::p] // p
        pk = p
        prev, cur = 1, 1 + p
        while pk <= n:
            base[pk] = p
            sl = sigma[pk::pk]
            sl //= prev
            sl *= cur
            if pk > n // p:
                break
            pk *= p
            prev, cur = cur, cur * p + 1
        if p <= n // p:
            mobius[p * p :: p * p] = 0

    for arr in (primes, spf, mobius, totient, sigma, base):
        arr.setflags(write=False)
    return SieveTable(n, primes, spf, mobius, totient, sigma, base)


# ---------------------------------------------------------------------------
# pointwise functions and partial sums


def mangoldt(n: int) -> float:
    """von Mangoldt function: ``log p`` when ``n`` is a power of ``p``, else 0."""
    if n < 1:
        raise ValueError("mangoldt needs n >= 1")
    if n == 1:
        return 0.0
    pairs = _factor(int(n))
    return math.log(pairs[0][0]) if len(pairs) == 1 else 0.0


def mertens(x: int, sieve: SieveTable) -> int:
    """Exact Mertens function ``sum(mu(n) for n <= x)``."""
    if not 0 <= x <= sieve.limit:
        raise ValueError(f"x={x} outside sieve range 0..{sieve.limit}")
    return int(sieve.mobius[1 : x + 1].sum(dtype=np.int64))


def chebyshev_psi(x: int, sieve: SieveTable) -> float:
    """Chebyshev's psi(x), correctly rounded via ``math.fsum``."""
    if not 0 <= x <= sieve.limit:
        raise ValueError(f"x={x} outside sieve range 0..{sieve.limit}")
    base = sieve.prime_power_base[1 : x + 1]
    b = base[base > 0]
    # group equal logs: psi = sum_p m_p log p
    ps, counts = np.unique(b, return_counts=True)
    return math.fsum(c * math.log(p) for p, c in zip(ps.tolist(), counts.tolist()))


@dataclass(frozen=True)
class PrimorialRecord:
    k: int
    prime: int
    primorial: int | None
    log_primorial: float
    totient_of_primorial: int | None


def primorials(k_max: int, exact: bool = True) -> list[PrimorialRecord]:
    """Primorials ``N_1..N_kmax`` with their logs and totients.

    ``log_primorial`` is the correctly rounded sum of ``log p_j``.  With
    ``exact=False`` the big integers are skipped (``None``), which is what
    large-k sweeps want.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    primes = first_primes(k_max).tolist()
    logs = [math.log(p) for p in primes]
    out = []
    acc: list[float] = []
    big_n, big_phi = 1, 1
    for k, p in enumerate(primes, start=1):
        acc.append(logs[k - 1])
        if exact:
            big_n *= p
            big_phi *= p - 1
        out.append(
            PrimorialRecord(
                k=k,
                prime=p,
                primorial=big_n if exact else None,
                log_primorial=math.fsum(acc),
                totient_of_primorial=big_phi if exact else None,
            )
        )
    return out


def harmonic_number(n: int) -> float:
    """``H_n = 1 + 1/2 + ... + 1/n``, correctly rounded."""
    if n < 1:
        raise ValueError("harmonic_number needs n >= 1")
    return math.fsum(1.0 / k for k in range(1, n + 1))


def harmonic_numbers(n_max: int) -> np.ndarray:
    """``H_1..H_nmax`` from a single compensated running sum (index 0 is 0)."""
    out = np.zeros(n_max + 1, dtype=np.float64)
    acc = NeumaierSum()
    for k in range(1, n_max + 1):
        acc.add(1.0 / k)
        out[k] = acc.value
    return out


def harmonic_number_exact(n: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))
