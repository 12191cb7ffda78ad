import math
from fractions import Fraction

import numpy as np
import pytest

from rhtorus.arithmetic import first_primes, primes_up_to
from rhtorus.dirichlet import ArithmeticFunction, Weight, identity, mobius_function, ones, totient_function, unit
from rhtorus.torus import (
    CircleFactor,
    TruncatedTorusPoint,
    circle_factor_closed,
    circle_factor_quadrature,
    default_node_count,
    euler_product_partial,
    laplace_partial,
    polydisc_point,
    smooth_number_sum,
    torus_integral_mangoldt,
    torus_integral_mu,
    torus_integral_phi,
    transform_homomorphism_check,
)

from conftest import brute_factor, brute_mangoldt

APERY = 1.2020569031595942853997  # zeta(3)


def test_torus_point_validation():
    TruncatedTorusPoint(np.exp(1j * np.arange(5)))
    with pytest.raises(ValueError):
        TruncatedTorusPoint([1.0, 1.001])
    t = TruncatedTorusPoint.random(10, 1)
    assert np.allclose(np.abs(t.coords), 1.0, atol=1e-14, rtol=0)
    assert len(TruncatedTorusPoint.ones(0)) == 0


def test_polydisc_point():
    z = polydisc_point(TruncatedTorusPoint.ones(3), 2)
    assert np.allclose(z, [1 / 4, 1 / 9, 1 / 25])


# ---------------------------------------------------------------------------
# Laplace transform


def test_laplace_of_unit_is_one():
    t = TruncatedTorusPoint.random(30, 4)
    lv = laplace_partial(unit(100), polydisc_point(t, 2.5), 100, 2.5)
    assert lv.value == pytest.approx(1.0, abs=1e-15)
    assert lv.tail == 0.0


def test_laplace_all_ones_gives_zeta_partial_sum():
    n = 10**6
    z = polydisc_point(TruncatedTorusPoint.ones(len(primes_up_to(n))), 2)
    lv = laplace_partial(ones(n), z, n, 2)
    oracle = math.fsum(1.0 / k**2 for k in range(1, n + 1))
    assert abs(lv.value - oracle) <= 1e-12
    assert math.pi**2 / 6 - abs(lv.value) == pytest.approx(1 / n, rel=1e-5)


def test_laplace_mobius_reciprocal_zeta3():
    n = 10**4
    k = len(primes_up_to(n))
    z = polydisc_point(TruncatedTorusPoint.ones(k), 3)
    lmu = laplace_partial(mobius_function(n), z, n, 3).value
    zeta_partial = math.fsum(1.0 / m**3 for m in range(1, n + 1))
    # |mu~ * 1~ - 1| is bounded by sum_{ab > n} (ab)^-3 <= sum_{c > n} d(c) c^-3
    assert abs(lmu * zeta_partial - 1) <= 2 * math.log(n) / n**2
    assert abs(lmu - 1 / APERY) <= 1e-7


def test_laplace_batch_matches_single():
    f = totient_function(500)
    k = len(primes_up_to(500))
    rng = np.random.default_rng(9)
    pts = [TruncatedTorusPoint.random(k, rng) for _ in range(4)]
    zs = np.vstack([polydisc_point(t, 3) for t in pts])
    batch = laplace_partial(f, zs, 500, 3).value
    for i, t in enumerate(pts):
        assert batch[i] == pytest.approx(laplace_partial(f, polydisc_point(t, 3), 500, 3).value, abs=1e-14)


def test_laplace_brute_force():
    n = 200
    rng = np.random.default_rng(2)
    fv = rng.normal(size=n + 1)
    f = ArithmeticFunction(fv, "real")
    k = len(primes_up_to(n))
    z = polydisc_point(TruncatedTorusPoint.random(k, rng), 2)
    primes = first_primes(k).tolist()
    direct = 0j
    for a in range(1, n + 1):
        term = fv[a]
        for p, e in brute_factor(a).items():
            term *= z[primes.index(p)] ** e
        direct += term
    assert laplace_partial(f, z, n, 2).value == pytest.approx(direct, abs=1e-14)


def test_laplace_tail_and_domain():
    f = ones(1000)
    k = len(primes_up_to(1000))
    z = polydisc_point(TruncatedTorusPoint.ones(k), 2)
    lv = laplace_partial(f, z, 100, 2)
    assert lv.tail == pytest.approx(math.fsum(1 / a**2 for a in range(101, 1001)), rel=1e-14)
    bad = z.copy()
    bad[3] *= 1.01
    with pytest.raises(ValueError):
        laplace_partial(f, bad, 100, 2)
    with pytest.raises(ValueError):
        laplace_partial(f, z[:5], 100, 2)


# ---------------------------------------------------------------------------
# Euler product


def test_euler_product_empty():
    assert euler_product_partial(2, TruncatedTorusPoint.ones(5), 0) == 1


def test_euler_product_beta3_monotone():
    t = TruncatedTorusPoint.ones(25)
    vals = [euler_product_partial(3, t, k).real for k in range(1, 26)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert 1 < vals[-1] < APERY


@pytest.mark.parametrize("p_max, beta", [(29, 2), (29, 3), (97, 3)])
def test_euler_product_matches_smooth_sum(p_max, beta):
    k = len(primes_up_to(p_max))
    rng = np.random.default_rng(p_max * 10 + beta)
    points = [TruncatedTorusPoint.ones(k)] + [TruncatedTorusPoint.random(k, rng) for _ in range(16)]
    for t in points:
        oracle = smooth_number_sum(beta, t, p_max)
        assert oracle.tail_bound < 1e-10
        assert abs(euler_product_partial(beta, t, k) - oracle.value) <= oracle.tail_bound + 1e-13


def test_smooth_sum_small_enumeration():
    t = TruncatedTorusPoint.ones(2)
    s = smooth_number_sum(2, t, 3, tail_target=1e-6)
    direct = math.fsum(1 / n**2 for n in range(1, int(s.bound) + 1) if set(brute_factor(n)) <= {2, 3})
    assert s.value.real == pytest.approx(direct, abs=1e-15)


# ---------------------------------------------------------------------------
# circle factors


def test_circle_factor_closed_examples():
    assert circle_factor_closed("mu", 2, 3, 1).value == Fraction(-1, 8)
    assert circle_factor_closed("mu", 3, 3, 2).value == 0
    assert circle_factor_closed("phi", 2, 3, 2).value == Fraction(1, 32)
    assert circle_factor_closed("mu", 5, 3, 0).value == 1
    assert circle_factor_closed("phi", 5, 3, 0).value == 1
    assert circle_factor_closed("mangoldt", 2, 3, 3).value == pytest.approx(math.log(2) / 2**9, rel=1e-15)
    assert circle_factor_closed("mangoldt", 2, 3, 0).value == 0
    cf = circle_factor_closed("mu", 2, 2.5, 1)
    assert isinstance(cf, CircleFactor) and cf.value == pytest.approx(-(2**-2.5))


def test_circle_factor_quadrature_examples():
    assert abs(circle_factor_quadrature("mu", 2, 3, 1, 64) - (-0.125)) <= 1e-15
    assert abs(circle_factor_quadrature("phi", 2, 3, 1, 64) - 0.125) <= 1e-15
    # mu: constant 1 minus a zero-mean term, exact at M=4
    assert abs(circle_factor_quadrature("mu", 7, 3, 0, 4) - 1) <= 1e-15
    # phi: geometric series, aliasing error (p-1)/p * p^-((beta-1) M) / (1 - p^-((beta-1) M))
    q = 7.0 ** -8
    assert abs(circle_factor_quadrature("phi", 7, 3, 0, 4) - 1) <= 6 / 7 * q / (1 - q) * (1 + 1e-9)


def test_quadrature_node_rules():
    with pytest.raises(ValueError):
        circle_factor_quadrature("mu", 2, 3, 3, 4)
    with pytest.raises(ValueError):
        circle_factor_quadrature("phi", 2, 2, 1, 64)
    with pytest.raises(ValueError):
        circle_factor_quadrature("nope", 2, 3, 1, 64)
    assert default_node_count(2, 3, 0) >= 2
    # aliasing error p^-((beta-1) M) below 1e-15 at the default
    m = default_node_count(2, 3, 1)
    assert 2.0 ** (-2 * (m - 2)) < 1e-15


def test_quadrature_mu_exact_at_minimum_nodes():
    # mu integrand is a trigonometric polynomial of degree alpha+1
    for alpha in range(5):
        q = circle_factor_quadrature("mu", 3, 4, alpha, alpha + 2)
        assert abs(q - float(circle_factor_closed("mu", 3, 4, alpha).value)) <= 1e-15


@pytest.mark.parametrize("kind", ["mu", "phi", "mangoldt"])
def test_quadrature_default_nodes(kind):
    for p in (2, 3, 11):
        for alpha in range(4):
            q = circle_factor_quadrature(kind, p, 3.5, alpha)
            closed = float(circle_factor_closed(kind, p, 3.5, alpha).value)
            assert abs(q - closed) <= 1e-14


# ---------------------------------------------------------------------------
# torus integrals


def test_torus_mu_examples():
    r = torus_integral_mu(1, 3)
    assert r.value == 1 and r.reconstructed == 1
    r = torus_integral_mu(6, 3)
    assert r.value == Fraction(1, 216) and r.reconstructed == 1
    assert torus_integral_mu(4, 3).value == 0
    assert torus_integral_mu(4, 2.5).value == 0.0


def test_torus_phi_examples():
    assert torus_integral_phi(1, 3).reconstructed == 1
    r = torus_integral_phi(2, 3)
    assert r.value == Fraction(1, 8) and r.reconstructed == 1
    r = torus_integral_phi(12, 3)
    assert r.value == Fraction(1, 432) and r.reconstructed == 4
    with pytest.raises(ValueError):
        torus_integral_phi(12, 2)


def test_torus_mangoldt_examples():
    assert torus_integral_mangoldt(1, 3).reconstructed == 0
    r = torus_integral_mangoldt(8, 3)
    assert abs(r.reconstructed - math.log(2)) <= 1e-12
    assert r.value == pytest.approx(math.log(2) / 8**3, rel=1e-15)
    assert torus_integral_mangoldt(6, 3).reconstructed == 0
    q = torus_integral_mangoldt(6, 3, method="quadrature")
    assert abs(q.reconstructed) <= 1e-12
    q = torus_integral_mangoldt(8, 3, method="quadrature")
    assert abs(q.reconstructed - math.log(2)) <= 1e-9


def test_torus_mu_exact_reconstruction(sieve_1e4):
    s = sieve_1e4
    for a in range(1, 2001):
        assert torus_integral_mu(a, 2, sieve=s).reconstructed == int(s.mobius[a])
        assert torus_integral_phi(a, 3, sieve=s).reconstructed == int(s.totient[a])


def test_squarefree_factorized_identity():
    rng = np.random.default_rng(0)
    primes = first_primes(30).tolist()
    for _ in range(50):
        k = int(rng.integers(1, 6))
        ps = sorted(rng.choice(primes, size=k, replace=False).tolist())
        a = math.prod(ps)
        for beta in (2, 3, 4):
            assert torus_integral_mu(a, beta).value == Fraction((-1) ** k, a**beta)


def test_mangoldt_support_and_values():
    for n in range(1, 3000):
        r = torus_integral_mangoldt(n, 3)
        if len(brute_factor(n)) >= 2:
            assert r.reconstructed == 0
        assert abs(r.reconstructed - brute_mangoldt(n)) <= 1e-12


def test_quadrature_method_agrees_for_small_targets():
    for a in range(1, 200):
        closed = torus_integral_mu(a, 3)
        quad = torus_integral_mu(a, 3, method="quadrature")
        assert abs(quad.value - float(closed.value)) <= 1e-15
        closed = torus_integral_phi(a, 4)
        quad = torus_integral_phi(a, 4, method="quadrature")
        assert abs(quad.value - float(closed.value)) <= 1e-15


def test_float_beta_falls_back():
    r = torus_integral_phi(12, 3.5)
    assert isinstance(r.value, float)
    assert r.reconstructed == pytest.approx(4, rel=1e-13)
    assert not Weight(3.5).exact_mode


# ---------------------------------------------------------------------------
# homomorphism


def test_homomorphism_unit():
    t = [TruncatedTorusPoint.random(30, s) for s in range(3)]
    r = transform_homomorphism_check(unit(100), unit(100), t, 3)
    assert r.max_deviation == 0.0


def test_homomorphism_mu_small(sieve_1e4):
    n = 10**4
    k = len(primes_up_to(n))
    rng = np.random.default_rng(17)
    pts = [TruncatedTorusPoint.random(k, rng) for _ in range(8)]
    r = transform_homomorphism_check(mobius_function(n, sieve=sieve_1e4), ones(n), pts, 3)
    assert r.within_bound and r.tail_bound < 1e-7


def test_homomorphism_phi_matches_identity(sieve_1e4):
    n = 10**4
    k = len(primes_up_to(n))
    rng = np.random.default_rng(23)
    pts = np.vstack([TruncatedTorusPoint.random(k, rng).coords for _ in range(4)])
    phi = totient_function(n, sieve=sieve_1e4)
    r = transform_homomorphism_check(phi, ones(n), pts, 4)
    assert r.within_bound
    z = pts * first_primes(k).astype(float) ** -4.0
    lid = laplace_partial(identity(n), z, n, 4).value
    lphi = laplace_partial(phi, z, n, 4).value
    lone = laplace_partial(ones(n), z, n, 4).value
    assert np.max(np.abs(lid - lphi * lone)) <= r.tail_bound
