import math

import pytest

from rhtorus.arithmetic import build_sieve


def brute_factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def brute_mobius(n):
    f = brute_factor(n)
    if any(e > 1 for e in f.values()):
        return 0
    return (-1) ** len(f)


def brute_totient(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def brute_sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def brute_mangoldt(n):
    f = brute_factor(n)
    return math.log(next(iter(f))) if len(f) == 1 else 0.0


def is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


@pytest.fixture(scope="session")
def sieve_1e4():
    return build_sieve(10**4)


@pytest.fixture(scope="session")
def sieve_1e5():
    return build_sieve(10**5)


@pytest.fixture(scope="session")
def sieve_1e6():
    return build_sieve(10**6)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
