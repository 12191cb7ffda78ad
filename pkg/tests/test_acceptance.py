"""Exit criteria.  Each test records one PASS/FAIL line, printed in the terminal summary."""

import io
import math
import time

import numpy as np
import pytest

from rhtorus.arithmetic import build_sieve, primes_up_to
from rhtorus.cli import run
from rhtorus.criteria import (
    HOLDS,
    inequality_one_check,
    lagarias_check,
    mertens_prefix,
    nicolas_check,
    prop1_sweep,
    sqrt_bound_violations,
)
from rhtorus.dirichlet import (
    convolve,
    log_function,
    mangoldt_function,
    mobius_function,
    ones,
    totient_function,
)
from rhtorus.torus import (
    TruncatedTorusPoint,
    circle_factor_closed,
    circle_factor_quadrature,
    euler_product_partial,
    smooth_number_sum,
    torus_integral_mangoldt,
    torus_integral_mu,
    torus_integral_phi,
    transform_homomorphism_check,
)

RESULTS: list[str] = []


def record(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def sieve():
    return build_sieve(10**6)


def test_c01_convolution_identities(sieve):
    n = 10**5
    t0 = time.perf_counter()
    mu1 = convolve(mobius_function(n, "int", sieve), ones(n, "int"))
    phi1 = convolve(totient_function(n, "int", sieve), ones(n, "int"))
    lam1 = convolve(mangoldt_function(n, sieve), ones(n, "real"))
    elapsed = time.perf_counter() - t0
    mu_ok = mu1[1] == 1 and all(v == 0 for v in mu1.values[2:])
    phi_ok = all(int(phi1[k]) == k for k in range(1, n + 1))
    lam_err = float(np.max(np.abs(lam1.values[1:] - log_function(n).values[1:])))
    ok = mu_ok and phi_ok and lam_err <= 1e-12 and elapsed < 10
    record("C1 mu*1=unit, phi*1=id, Lambda*1=log (n<=1e5)", ok,
           f"mu {mu_ok}, phi {phi_ok}, max|Lambda*1-log|={lam_err:.2e}, {elapsed:.2f}s")


def test_c02_mu_reconstruction(sieve):
    t0 = time.perf_counter()
    bad = [a for a in range(1, 10**4 + 1) if torus_integral_mu(a, 3, sieve=sieve).reconstructed != int(sieve.mobius[a])]
    elapsed = time.perf_counter() - t0
    record("C2 mu(a) from torus integral, beta=3, a<=1e4", not bad and elapsed < 5,
           f"{len(bad)} mismatches, {elapsed:.2f}s")


@pytest.mark.parametrize("beta", [3, 4])
def test_c03_phi_reconstruction(sieve, beta):
    bad = [a for a in range(1, 10**4 + 1)
           if torus_integral_phi(a, beta, sieve=sieve).reconstructed != int(sieve.totient[a])]
    record(f"C3 phi(a) from torus integral, beta={beta}, a<=1e4", not bad, f"{len(bad)} mismatches")


def test_c04_mangoldt(sieve):
    err = max(abs(torus_integral_mangoldt(n, 3, sieve=sieve).reconstructed - sieve.mangoldt(n))
              for n in range(1, 10**4 + 1))
    qerr = 0.0
    for p in (2, 3, 5, 7, 11, 13):
        for m in range(1, 5):
            closed = torus_integral_mangoldt(p**m, 3).value
            quad = torus_integral_mangoldt(p**m, 3, method="quadrature").value
            qerr = max(qerr, abs(quad - closed))
    record("C4 Lambda(n) from torus integral, beta=3", err <= 1e-12 and qerr <= 1e-12,
           f"max reconstruction error {err:.2e}, closed vs quadrature {qerr:.2e}")


def test_c05_circle_quadrature():
    worst, cases = 0.0, 0
    for kind in ("mu", "phi", "mangoldt"):
        for p in primes_up_to(29).tolist():
            for beta in (3, 4):
                for alpha in range(4):
                    q = circle_factor_quadrature(kind, p, beta, alpha, 64)
                    c = float(circle_factor_closed(kind, p, beta, alpha).value)
                    worst = max(worst, abs(q - c))
                    cases += 1
    record("C5 circle quadrature (M=64) vs closed form", worst <= 1e-12 and cases >= 192,
           f"{cases} cases, max error {worst:.2e}")


def test_c06_euler_product():
    k = len(primes_up_to(97))
    rng = np.random.default_rng(20240601)
    points = [TruncatedTorusPoint.ones(k)] + [TruncatedTorusPoint.random(k, rng) for _ in range(16)]
    worst = 0.0
    for t in points:
        oracle = smooth_number_sum(2.0, t, 97)
        assert oracle.tail_bound < 1e-10
        worst = max(worst, abs(euler_product_partial(2, t, k) - oracle.value))
    record("C6 Euler product over p<=97, beta=2 vs smooth-number sum", worst <= 1e-10,
           f"17 points, max error {worst:.2e}")


@pytest.fixture(scope="module")
def homomorphism_points():
    k = len(primes_up_to(10**5))
    rng = np.random.default_rng(7)
    return np.vstack([TruncatedTorusPoint.random(k, rng).coords for _ in range(32)])


@pytest.mark.parametrize("name, beta", [("mu", 3), ("mu", 4), ("phi", 3), ("phi", 4)])
def test_c07_homomorphism(sieve, homomorphism_points, name, beta):
    n = 10**5
    f = mobius_function(n, "real", sieve) if name == "mu" else totient_function(n, "real", sieve)
    r = transform_homomorphism_check(f, ones(n, "real"), homomorphism_points, beta)
    ok = r.within_bound and r.max_deviation <= 1e-9
    record(f"C7 ({name}*1)~ = {name}~ * 1~, beta={beta}, N=1e5, 32 points", ok,
           f"deviation {r.max_deviation:.2e}, reported bound {r.tail_bound:.2e}, cap 1e-9")


@pytest.mark.parametrize("beta", [2, 3])
def test_c08_prop1(sieve, beta):
    m = mertens_prefix(sieve, 1000)
    bad = [x for x, mx, total in prop1_sweep(1000, beta, sieve) if total != mx or mx != m[x]]
    record(f"C8 sum a^beta I(a) = M(x) exactly, beta={beta}, x<=1e3", not bad, f"{len(bad)} mismatches")


def test_c09_nicolas_and_inequality_one():
    t0 = time.perf_counter()
    a = nicolas_check(5000)
    b = inequality_one_check(5000, 3)
    elapsed = time.perf_counter() - t0
    pos = all(r.margin > 0 for r in a) and all(r.margin > 0 for r in b)
    same = [r.verdict for r in a] == [r.verdict for r in b]
    allholds = all(r.verdict == HOLDS for r in a)
    ok = pos and same and allholds and elapsed < 60 and len(a) == 4999
    record("C9 Nicolas and its torus-integral form, 2<=k<=5000", ok,
           f"min margin {min(r.margin for r in a):.3e}, verdicts identical {same}, {elapsed:.1f}s")


def test_c10_mertens_sqrt_bound(sieve):
    bad = sqrt_bound_violations(10**6, sieve, x_min=2)
    m = mertens_prefix(sieve)
    x = np.arange(2, 10**6 + 1)
    peak = float(np.max(np.abs(m[2:]) / np.sqrt(x)))
    record("C10 |M(x)| <= sqrt(x), 2<=x<=1e6", bad.size == 0,
           f"{bad.size} violations, max |M(x)|/sqrt(x) = {peak:.4f}")


def test_c11_lagarias(sieve):
    rows = lagarias_check(10**5, sieve)
    strict = all(r.margin > 0 for r in rows[1:])
    boundary = abs(rows[0].margin) <= 1e-12
    record("C11 Lagarias sigma(n) <= H_n + exp(H_n) log H_n, n<=1e5", strict and boundary,
           f"strict for n>=2: {strict}, margin at n=1: {rows[0].margin}, "
           f"min margin n>=2: {min(r.margin for r in rows[1:]):.4f}")


def test_c12_cli_determinism():
    outs = []
    for jobs in ("1", "8"):
        buf, err = io.StringIO(), io.StringIO()
        code = run(["nicolas", "--k-max", "1000", "--jobs", jobs], stdout=buf, stderr=err)
        assert code == 0
        outs.append(buf.getvalue().encode())
    record("C12 nicolas --k-max 1000 CSV identical at jobs 1 and 8", outs[0] == outs[1],
           f"{len(outs[0])} bytes each")
