import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from fockbench import special


def gamma_by_quadrature(N, x):
    val, _ = integrate.quad(lambda t: t ** (N - 1) * math.exp(-t), 0.0, x, epsabs=1e-14, epsrel=1e-13)
    return val


def laguerre_series(N, x):
    # exact rationals: the alternating sum cancels badly in floats for x > 0
    xf = Fraction(float(x))
    return float(sum(Fraction(math.comb(N, k)) * (-xf) ** k / math.factorial(k) for k in range(N + 1)))


# expected values frozen from gamma_by_quadrature
@pytest.mark.parametrize(
    "N, x, expected",
    [(1, 0.0, 0.0), (1, 1.0, 0.6321205588285577), (3, 2.0, 0.6466471676338731)],
)
def test_lower_incomplete_gamma_examples(N, x, expected):
    assert special.lower_incomplete_gamma(N, x) == pytest.approx(expected, rel=1e-12, abs=1e-15)


def test_frozen_values_match_quadrature():
    assert gamma_by_quadrature(1, 1.0) == pytest.approx(0.6321205588285577, rel=1e-12)
    assert gamma_by_quadrature(3, 2.0) == pytest.approx(2 * (1 - 5 * math.exp(-2)), rel=1e-12)


@pytest.mark.parametrize("N", [1, 2, 5, 12])
@pytest.mark.parametrize("x", [0.3, 4.0, 17.5])
def test_gamma_against_quadrature(N, x):
    assert special.lower_incomplete_gamma(N, x) == pytest.approx(gamma_by_quadrature(N, x), rel=1e-10)


def test_gamma_recurrence_grid():
    for N in range(1, 51):
        for x in np.linspace(0.0, 100.0, 41):
            lhs = special.lower_incomplete_gamma(N + 1, x)
            rhs = N * special.lower_incomplete_gamma(N, x) - x**N * math.exp(-x)
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-300), (N, x)


def test_gamma_regularized_bounds_and_limit():
    for N in (1, 4, 30):
        for x in (0.0, 0.5, 10.0, 80.0, 750.0, 5000.0):
            p = special.lower_incomplete_gamma(N, x) / math.factorial(N - 1)
            assert 0.0 <= p <= 1.0 + 1e-13
    assert special.lower_incomplete_gamma(6, 1e4) == pytest.approx(120.0, rel=1e-15)


def test_gamma_monotone_in_x():
    xs = np.linspace(0, 60, 200)
    vals = [special.lower_incomplete_gamma(7, x) for x in xs]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_log_gamma_tail_finite():
    # gamma(40, 1e-3) underflows nothing but is ~1e-122; log form must agree
    direct = special.lower_incomplete_gamma(40, 1e-3)
    assert math.log(direct) == pytest.approx(special.log_lower_incomplete_gamma(40, 1e-3), rel=1e-12)
    assert math.isfinite(special.log_lower_incomplete_gamma(200, 1e-2))


@pytest.mark.parametrize("N, x", [(0, 1.0), (-2, 1.0), (2, -0.1), (1.5, 1.0)])
def test_gamma_domain_errors(N, x):
    with pytest.raises(ValueError):
        special.lower_incomplete_gamma(N, x)


@pytest.mark.parametrize("N, x, expected", [(0, 7.3, 1.0), (1, -1.0, 2.0), (2, -1.0, 3.5)])
def test_laguerre_examples(N, x, expected):
    assert special.laguerre(N, x) == pytest.approx(expected, rel=1e-14)


def test_laguerre_matches_series():
    for N in range(0, 31):
        for x in np.linspace(-50, 50, 21):
            ref = laguerre_series(N, x)
            assert special.laguerre(N, x) == pytest.approx(ref, rel=1e-10, abs=1e-10 * max(1.0, abs(ref))), (N, x)


def test_laguerre_positive_on_negative_axis():
    for N in range(0, 40):
        for x in (0.01, 1.0, 10.0, 16.0):
            assert special.laguerre(N, -x) > 0


def test_log_factorial():
    assert special.log_factorial(0) == 0.0
    assert special.log_factorial(5) == pytest.approx(math.log(120), rel=1e-15)
    oracle = math.fsum(math.log(k) for k in range(1, 171))
    assert special.log_factorial(170) == pytest.approx(oracle, rel=1e-14)
    assert special.log_factorial(170) == pytest.approx(706.573062, abs=1e-6)
    arr = special.log_factorial(np.arange(0, 600))
    assert np.all(np.diff(arr[1:]) > 0)
    assert arr[400] == pytest.approx(math.lgamma(401), rel=1e-14)
