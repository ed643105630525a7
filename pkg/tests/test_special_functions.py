import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

import oracles
from itespec import special_functions as sf
from itespec.errors import DomainError, NumericalError


def test_origin_values():
    assert sf.bessel_j(0, 0.0) == 1.0
    assert sf.bessel_j(2.5, 0.0) == 0.0


def test_half_order_closed_form():
    x = np.linspace(0.1, 40, 400)
    closed = np.sqrt(2 / (np.pi * x)) * np.sin(x)
    np.testing.assert_allclose(sf.bessel_j(0.5, x), closed, rtol=1e-13, atol=1e-15)
    assert abs(sf.bessel_j(0.5, math.pi)) < 1e-15


def test_first_zero_of_j0(frozen):
    assert abs(sf.bessel_j(0, frozen["j0_first_zero"])) < 1e-11
    assert abs(sf.bessel_j(0, 2.404825557695773)) < 1e-11


def test_frozen_series_values_reproduce(frozen):
    assert oracles.first_zero_j0() == pytest.approx(frozen["j0_first_zero"], abs=1e-15)
    assert float(oracles.j0_series(1)) == frozen["j0_at_1"]


def test_prime_matches_identities(frozen):
    x = np.linspace(0.2, 60, 300)
    np.testing.assert_allclose(sf.bessel_j_prime(0, x), -special.jv(1, x), atol=1e-15)
    assert sf.bessel_j_prime(0.5, math.pi / 2) == pytest.approx(frozen["jprime_half_at_pi_over_2"], rel=1e-13)


@settings(max_examples=200, deadline=None)
@given(st.floats(1.0, 60.0), st.floats(0.5, 300.0))
def test_prime_recurrence(nu, x):
    lhs = sf.bessel_j_prime(nu, x)
    rhs = 0.5 * (special.jv(nu - 1, x) - special.jv(nu + 1, x))
    env = abs(special.jv(nu - 1, x)) + abs(special.jv(nu + 1, x)) + 1e-300
    assert abs(lhs - rhs) <= 1e-12 * env


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 40.0), st.floats(0.5, 100.0))
def test_prime_finite_difference(nu, x):
    h = 1e-5
    fd = (sf.bessel_j(nu, x + h) - sf.bessel_j(nu, x - h)) / (2 * h)
    assert abs(sf.bessel_j_prime(nu, x) - fd) <= 1e-8


def test_hankel_half_order_closed_form():
    x = np.linspace(0.3, 50, 200)
    closed = -1j * np.sqrt(2 / (np.pi * x)) * np.exp(1j * x)
    np.testing.assert_allclose(sf.hankel1(0.5, x), closed, rtol=1e-12)


def test_hankel_real_part_is_j():
    rng = np.random.default_rng(3)
    nu = rng.uniform(0, 40, 100)
    x = rng.uniform(0.1, 200, 100)
    np.testing.assert_allclose(sf.hankel1(nu, x).real, special.jv(nu, x), rtol=0, atol=1e-15)


def test_hankel_at_one_matches_series(frozen):
    h = sf.hankel1(0, 1.0)
    assert abs(h.real - frozen["j0_at_1"]) < 1e-10
    assert abs(h.imag - frozen["y0_at_1"]) < 1e-10


def test_hankel_imaginary_part_matches_mpmath():
    rng = np.random.default_rng(11)
    for nu, x in zip(rng.uniform(0, 20, 50), rng.uniform(0.5, 80, 50)):
        ref = float(mpmath.bessely(nu, x))
        assert sf.hankel1(nu, x).imag == pytest.approx(ref, rel=1e-9, abs=1e-12)


def test_hankel_prime_consistent():
    x, h = 7.3, 1e-5
    fd = (sf.hankel1(2.5, x + h) - sf.hankel1(2.5, x - h)) / (2 * h)
    assert abs(sf.hankel1_prime(2.5, x) - fd) < 1e-8


def test_hankel_rejects_nonpositive():
    with pytest.raises(DomainError):
        sf.hankel1(1, 0.0)
    with pytest.raises(DomainError):
        sf.hankel1(1, -2.0)


@pytest.mark.parametrize("bad", [-1.0, float("nan"), float("inf")])
def test_order_domain(bad):
    with pytest.raises(DomainError):
        sf.bessel_j(bad, 1.0)


def test_argument_domain():
    with pytest.raises(DomainError):
        sf.bessel_j(1.0, -0.5)
    with pytest.raises(DomainError):
        sf.bessel_j(1.0, float("nan"))


def test_ode_residual():
    rng = np.random.default_rng(0)
    nu = rng.uniform(0, 50, 1000)
    x = rng.uniform(1.0, 500, 1000)
    j = sf.bessel_j(nu, x)
    jp = sf.bessel_j_prime(nu, x)
    jpp = sf.bessel_j_second(nu, x)
    h = 1e-4 * np.maximum(1, x / 50)
    jpp_fd = (sf.bessel_j_prime(nu, x + h) - sf.bessel_j_prime(nu, x - h)) / (2 * h)
    env = np.abs(j) + np.abs(jp) + 1e-3 * np.sqrt(2 / (np.pi * x))
    assert np.max(np.abs(jpp - jpp_fd) / env) < 1e-6
    residual = x**2 * jpp + x * jp + (x**2 - nu**2) * j
    assert np.max(np.abs(residual) / (x**2 * env)) < 1e-9


def test_recurrence_consistency():
    rng = np.random.default_rng(1)
    nu = rng.uniform(1, 50, 1000)
    x = rng.uniform(0.5, 500, 1000)
    lhs = special.jv(nu - 1, x) + special.jv(nu + 1, x)
    rhs = 2 * nu / x * sf.bessel_j(nu, x)
    env = np.abs(special.jv(nu - 1, x)) + np.abs(special.jv(nu + 1, x))
    assert np.max(np.abs(lhs - rhs) / env) < 1e-10


def test_zero_table_half_order():
    table = sf.bessel_zeros(0.5, 10)
    np.testing.assert_allclose(table.zeros, [math.pi, 2 * math.pi, 3 * math.pi], rtol=1e-15)


def test_zero_table_first_zero(frozen):
    table = sf.bessel_zeros(0, 3)
    assert len(table) == 1
    assert table[0] == pytest.approx(frozen["j0_first_zero"], abs=1e-10)


def test_zero_table_is_immutable():
    table = sf.bessel_zeros(1, 30)
    with pytest.raises(ValueError):
        table.zeros[0] = 1.0


def test_zero_table_count_and_domain():
    table = sf.bessel_zeros(0.5, 10)
    assert table.count(7) == 2
    with pytest.raises(DomainError):
        table.count(11)
    assert len(sf.bessel_zeros(20, 15)) == 0


@pytest.mark.parametrize("nu", [0, 0.5, 1, 2.5, 7, 11.5, 30, 75.5, 150])
def test_zero_table_completeness(nu):
    upper = 400.0
    table = sf.bessel_zeros(nu, upper)
    ref = oracles.bessel_zero_scan(nu, upper)
    assert len(table) == len(ref)
    np.testing.assert_allclose(table.zeros, ref, rtol=0, atol=1e-10)
    tol = sf.ZERO_TOL * (1 + np.abs(table.zeros * special.jvp(nu, table.zeros)))
    assert np.all(np.abs(special.jv(nu, table.zeros)) <= tol)
    assert np.all(np.diff(table.zeros) > 0)


@pytest.mark.parametrize("nu", [0, 1.5, 4, 10.5, 25])
def test_interlacing(nu):
    a = sf.bessel_zeros(nu, 300).zeros
    b = sf.bessel_zeros(nu + 1, 300).zeros
    k = min(len(a) - 1, len(b))
    assert np.all(a[:k] < b[:k])
    assert np.all(b[:k] < a[1:k + 1])


def test_zero_gaps_tend_to_pi():
    z = sf.bessel_zeros(3, 2000).zeros
    assert abs(np.diff(z)[-1] - math.pi) < 1e-4


def test_mcmahon_remainder_order_one_over_k():
    # the remainder behaves like (4 nu^2 - 1) / (8 beta); for nu = 11/2 it
    # is about 0.091 at k = 50 and drops under 0.05 near k = 91
    nu = 5.5
    z = sf.bessel_zeros(nu, 1000).zeros
    k = np.arange(1, len(z) + 1)
    beta = sf.mcmahon_guess(nu, k)
    remainder = z - beta
    predicted = -(4 * nu**2 - 1) / (8 * beta)
    assert abs(remainder[49] - predicted[49]) < 1e-3
    assert abs(remainder[49]) < 0.1
    assert np.all(np.abs(remainder[100:]) <= 0.05)
    scaled = remainder * k
    assert np.ptp(scaled[150:]) < 0.05


def test_reduced_forms():
    lam = np.linspace(0.2, 30, 150)
    np.testing.assert_allclose(sf.reduced_j(2, 3, lam), special.jv(3, lam), rtol=1e-15)
    np.testing.assert_allclose(sf.reduced_j(3, 0, lam), np.sqrt(2 / np.pi) * np.sin(lam) / lam, rtol=1e-12)
    h = 1e-6
    fd = (sf.reduced_j(3, 2, lam + h) - sf.reduced_j(3, 2, lam - h)) / (2 * h)
    np.testing.assert_allclose(sf.reduced_j_prime(3, 2, lam), fd, atol=1e-8)
    j, jp = sf.reduced_j_pair(5, 4, lam)
    np.testing.assert_allclose(j, sf.reduced_j(5, 4, lam), rtol=1e-14)
    np.testing.assert_allclose(jp, sf.reduced_j_prime(5, 4, lam), rtol=1e-9, atol=1e-14)


def test_reduced_bounded_near_origin():
    small = np.array([1e-8, 1e-6, 1e-4])
    for n in (3, 4, 6):
        assert np.all(np.isfinite(sf.reduced_j(n, 0, small)))
        assert np.all(np.abs(sf.reduced_j(n, 0, small)) < 1)


def test_reduced_zeros_coincide():
    z = sf.bessel_zeros(sf.bessel_order(4, 2), 40).zeros
    assert np.all(np.abs(sf.reduced_j(4, 2, z)) < 1e-12)


def test_reduced_rejects_nonpositive():
    with pytest.raises(DomainError):
        sf.reduced_j(3, 1, 0.0)


def test_newton_failure_is_reported(monkeypatch):
    monkeypatch.setattr(sf, "ZERO_TOL", 0.0)
    with pytest.raises(NumericalError) as info:
        sf.bessel_zeros(0.3, 50)
    assert "nu" in str(info.value)
