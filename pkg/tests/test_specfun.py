import math

import mpmath
import numpy as np
import pytest
from scipy import special

from darboux_dirac import ConvergenceError, DomainError, LaguerreIndex, kummer_m, laguerre, x1_laguerre
from darboux_dirac.numerics import fd_derivative
from darboux_dirac.specfun import kummer_series


@pytest.mark.parametrize(
    "a,b,x,expected",
    [(0.25, 1.5, 0.0, 1.0), (0.0, 2.0, 5.0, 1.0), (1.0, 1.0, 1.0, math.e)],
)
def test_kummer_examples(a, b, x, expected):
    assert float(kummer_m(a, b, x)[0]) == pytest.approx(expected, rel=1e-15, abs=1e-15)


@pytest.mark.parametrize("a", [-2.0, -0.5, 0.25, 1.0])
@pytest.mark.parametrize("b", [1.5, 2.5])
@pytest.mark.parametrize("x", [0.1, 1.0, 5.0, 20.0])
def test_kummer_contiguous_lattice(a, b, x):
    d = float(kummer_m(a, b, x, 1)[1])
    ref = a / b * float(kummer_m(a + 1, b + 1, x)[0])
    assert d == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_kummer_against_scipy():
    x = np.linspace(0.0, 50.0, 101)
    for a, b in [(-1.75, 2.5), (0.25, 1.5), (3.3, 1.2), (-0.5, 3.5)]:
        np.testing.assert_allclose(kummer_m(a, b, x)[0], special.hyp1f1(a, b, x), rtol=1e-13)


def test_kummer_errors():
    with pytest.raises(DomainError):
        kummer_m(1.0, -2.0, 1.0)
    with pytest.raises(DomainError):
        kummer_m(1.0, 1.5, -0.1)
    with pytest.raises(DomainError):
        kummer_m(1.0, 1.5, 1.0, order=9)
    with pytest.raises(ConvergenceError):
        kummer_series(0.5, 1.5, 2000.0)


@pytest.mark.parametrize(
    "nu,alpha,x,expected",
    [(0, 0.5, 3.7, 1.0), (-1, 0.5, 2.0, 0.0), (1, 0.5, 1.0, 0.5)],
)
def test_laguerre_examples(nu, alpha, x, expected):
    assert float(laguerre(LaguerreIndex(nu, alpha), x)[0]) == pytest.approx(expected, abs=1e-15)


def _three_term(n, alpha, x):
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


@pytest.mark.parametrize("nu", range(7))
@pytest.mark.parametrize("alpha", [0.5, 1.5, 2.5])
def test_laguerre_matches_recurrence(nu, alpha):
    x = np.linspace(0.05, 30.0, 300)
    ours = laguerre(LaguerreIndex(nu, alpha), x)[0]
    np.testing.assert_allclose(ours, _three_term(nu, alpha, x), rtol=1e-12)
    exact = np.array([float(mpmath.laguerre(nu, alpha, v)) for v in x])
    np.testing.assert_allclose(ours, exact, rtol=1e-12)


@pytest.mark.parametrize("nu", range(5))
def test_integer_laguerre_derivatives_follow_kummer(nu):
    x = np.linspace(0.1, 6.0, 40)
    idx = LaguerreIndex(nu, 1.5)
    poly = laguerre(idx, x, 3)
    pref = special.binom(nu + 1.5, nu)
    series = kummer_m(-nu, 2.5, x, 3) * pref
    scale = np.max(np.abs(poly.coeffs))
    assert np.max(np.abs(poly.coeffs - series.coeffs)) < 1e-12 * scale


@pytest.mark.parametrize("nu", [-0.25, 0.25, -1.75, 1.3])
def test_laguerre_real_index_against_mpmath(nu):
    for x in [0.1, 1.0, 4.0, 18.0]:
        ref = float(mpmath.laguerre(nu, 1.5, x))
        assert float(laguerre(LaguerreIndex(nu, 1.5), x)[0]) == pytest.approx(ref, rel=1e-12)


def test_laguerre_prefactor_pole():
    with pytest.raises(DomainError):
        laguerre(LaguerreIndex(-1.5, 0.5), 1.0)
    with pytest.raises(DomainError):
        LaguerreIndex(0.0, -1.0)


def test_x1_examples():
    assert float(x1_laguerre(LaguerreIndex(1, 1.5), 2.0)[0]) == pytest.approx(-4.5, abs=1e-14)
    assert float(x1_laguerre(LaguerreIndex(2, 1.5), 1.0)[0]) == pytest.approx(-4.25, abs=1e-14)
    idx = LaguerreIndex(-0.25, 1.5)
    d = float(x1_laguerre(idx, 0.5, 1)[1])
    fd = fd_derivative(lambda t: float(x1_laguerre(idx, t)[0]), 0.5, 1)
    assert abs(d - fd) < 1e-7


@pytest.mark.parametrize("nu", range(1, 7))
def test_x1_integer_index_is_polynomial(nu):
    x = np.linspace(0.1, 10.0, 25)
    j = x1_laguerre(LaguerreIndex(nu, 1.5), x, order=nu + 1)
    scale = np.max(np.abs(j.coeffs[: nu + 1]))
    assert np.max(np.abs(j[nu + 1])) <= 1e-9 * scale
