import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate as sint

from lpmeasure import measures as M
from lpmeasure.grid import GridFunction, GridSpec
from lpmeasure.transforms import (
    cantor_product,
    fourier_function,
    fourier_stieltjes,
    fourier_stieltjes_at,
)

from conftest import gaussian

Y = GridSpec.linspace(-4.0, 4.0, 161)


def test_gaussian_fixed_point():
    f = GridFunction.from_callable(gaussian, -8, 8, 4096)
    res = fourier_function(f, Y)
    assert np.max(np.abs(res.values - gaussian(res.y))) < 1e-6


def test_box_transform_matches_sinc_and_quadrature():
    R = 1.5
    f = GridFunction.from_callable(lambda x: (np.abs(x) <= R).astype(float), -2, 2, 2**14 + 1)
    y = GridSpec.linspace(0.05, 3.0, 60)
    res = fourier_function(f, y)
    exact = np.sin(2 * np.pi * R * res.y) / (np.pi * res.y)
    assert np.max(np.abs(res.values - exact)) < 1e-3
    quad = [2 * sint.quad(lambda x: np.cos(2 * np.pi * x * yy), 0, R, limit=200)[0] for yy in res.y[::10]]
    assert np.allclose(quad, exact[::10], atol=1e-9)


def test_zero_function():
    f = GridFunction.from_callable(lambda x: 0 * x, -1, 1, 65)
    assert np.all(fourier_function(f, Y).values == 0)


@given(st.floats(-10, 10))
def test_delta_has_unit_modulus(a):
    res = fourier_stieltjes(M.delta(a), Y)
    assert np.allclose(np.abs(res.values), 1.0, atol=1e-13)
    assert np.allclose(res.values, np.exp(-2j * np.pi * a * res.y), atol=1e-12)


def test_cantor_against_integration_oracle():
    y = np.array([0.0, 0.3, 1.0, 2.7, 9.0, 15.5])
    vals = fourier_stieltjes_at(M.cantor(), y)
    oracle = [M.integrate(lambda x, yy=yy: np.exp(-2j * np.pi * x * yy), M.cantor(14)) for yy in y]
    assert np.allclose(vals, oracle, atol=1e-6)
    assert vals[0] == pytest.approx(1.0)


def test_cantor_product_at_zero():
    for depth in (1, 5, 30):
        assert cantor_product(np.array([0.0]), depth)[0][0] == pytest.approx(1.0)


def test_cantor_self_similarity():
    y = np.linspace(0.1, 20, 50)
    lhs = fourier_stieltjes_at(M.cantor(), 3 * y)
    rhs = np.exp(-2j * np.pi * y) * np.cos(2 * np.pi * y) * fourier_stieltjes_at(M.cantor(), y)
    assert np.allclose(lhs, rhs, atol=1e-8)


@given(st.lists(st.tuples(st.floats(-3, 3), st.complex_numbers(max_magnitude=2, allow_nan=False,
                                                                  allow_infinity=False)), min_size=1, max_size=6))
def test_bounded_by_total_variation(pairs):
    mu = M.atoms(pairs)
    res = fourier_stieltjes(mu, Y)
    assert np.max(np.abs(res.values)) <= M.total_variation(mu) + 1e-12


def test_linearity():
    mu, nu = M.gaussian_density(0.5, 0.7), M.atoms([(1.0, 2.0), (-0.4, 1j)])
    a, b = 0.3 - 1j, 2.5
    lhs = fourier_stieltjes(M.Sum(((a, mu), (b, nu))), Y).values
    rhs = a * fourier_stieltjes(mu, Y).values + b * fourier_stieltjes(nu, Y).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * np.max(np.abs(rhs))


def test_fubini_pairing():
    # int h(y) mu^(y) dy = int h^(x) dmu(x) with h a modulated Gaussian
    mu = M.Sum(((1.0, M.atoms([(0.2, 1.0), (-1.0, 0.5j)])), (1.0, M.cantor(12))))
    ys = GridSpec.linspace(-8, 8, 8193)
    h = lambda y: gaussian(y) * np.exp(2j * np.pi * 0.7 * y)
    lhs = np.sum(h(ys.points) * fourier_stieltjes(mu, ys).values) * ys.step
    h_hat = lambda x: gaussian(x - 0.7)
    rhs = M.integrate(h_hat, mu)
    assert lhs == pytest.approx(rhs, abs=1e-8)


def test_parseval_for_box():
    f = GridFunction.from_callable(lambda x: (np.abs(x) <= 0.5).astype(float), -1, 1, 4097)
    res = fourier_function(f, GridSpec.linspace(-400, 400, 160001))
    assert np.sqrt(np.sum(np.abs(res.values) ** 2) * (res.y[1] - res.y[0])) == pytest.approx(1.0, abs=1e-3)


def test_csv_columns():
    text = fourier_stieltjes(M.delta(0.0), GridSpec.linspace(0, 1, 3)).to_csv().splitlines()
    assert text[0] == "y,re,im,abs"
    assert len(text) == 4
