import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lpmeasure import measures as M
from lpmeasure.bv import cantor_complement, indicator, zero_function
from lpmeasure.grid import GridFunction, SetOfIntervals
from lpmeasure.norms import (
    LogGrid,
    hat_norm,
    hat_norm_result,
    lacunary_peaks,
    lp_norm,
    op_norm,
    restricted_star_norm,
    star_norm,
    star_norm_lower,
    vp_star_norm,
)

from conftest import gaussian

GAUSS = GridFunction.from_callable(gaussian, -8, 8, 4097)
BOX = GridFunction.from_callable(lambda x: ((x >= 0) & (x <= 1)).astype(float), -0.5, 1.5, 8193)


class TestLpNorm:
    def test_box(self):
        assert lp_norm(BOX, 2) == pytest.approx(1.0, abs=1e-3)

    def test_gaussian(self):
        assert lp_norm(GAUSS, 2) == pytest.approx(2 ** -0.25, abs=1e-9)

    def test_zero(self):
        assert lp_norm(GAUSS.with_values(0 * GAUSS.values), 3) == 0.0


class TestHatNorm:
    def test_gaussian_p1(self):
        assert hat_norm(GAUSS, 1) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("f", [GAUSS, GridFunction.from_callable(lambda x: np.exp(-x * x) * np.cos(3 * x), -8, 8, 4097)])
    def test_plancherel(self, f):
        assert hat_norm(f, 2) == pytest.approx(lp_norm(f, 2), rel=1e-4)

    def test_box_p_infinity_diverges(self):
        res = hat_norm_result(BOX, math.inf)
        assert res.divergence_flag and math.isinf(res.value)


class TestStarNorm:
    def test_delta_p1(self):
        res = star_norm(M.delta(0.0), 1)
        assert res.value == pytest.approx(1.0, abs=1e-6)
        assert res.caveat

    def test_delta_p15_diverges(self):
        res = star_norm(M.delta(0.0), 1.5)
        assert res.divergence_flag and math.isinf(res.value)

    def test_gaussian_density_p2(self):
        assert star_norm(M.gaussian_density(), 2).value == pytest.approx(2 ** -0.25, rel=1e-6)

    def test_zero(self):
        assert star_norm(M.zero(), 1.5).value == 0.0

    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0])
    def test_density_matches_hat_norm(self, p):
        f = GridFunction.from_callable(lambda x: np.exp(-np.pi * (x - 0.3) ** 2 / 0.5), -8, 8, 4097)
        mu = M.density(lambda x: np.exp(-np.pi * (x - 0.3) ** 2 / 0.5), -8, 8, 4097)
        s = star_norm(mu, p).value
        assert s == pytest.approx(hat_norm(f, p), rel=1e-4)
        assert s <= lp_norm(f, p) * (1 + 1e-4)

    @settings(max_examples=10)
    @given(st.complex_numbers(min_magnitude=0.1, max_magnitude=5, allow_nan=False, allow_infinity=False),
           st.floats(-2, 2), st.floats(0.4, 1.5))
    def test_homogeneity(self, lam, c, s):
        mu = M.gaussian_density(c, s)
        base = star_norm(mu, 1.5).value
        assert star_norm(M.scale(mu, lam), 1.5).value == pytest.approx(abs(lam) * base, rel=1e-8)

    @settings(max_examples=10)
    @given(st.floats(-2, 2), st.floats(0.4, 1.5), st.floats(-2, 2), st.floats(0.4, 1.5))
    def test_triangle(self, c1, s1, c2, s2):
        mu, nu = M.gaussian_density(c1, s1), M.gaussian_density(c2, s2)
        lhs = star_norm(M.Sum(((1.0, mu), (-1j, nu))), 1.25).value
        assert lhs <= (star_norm(mu, 1.25).value + star_norm(nu, 1.25).value) * (1 + 1e-8)


class TestLowerBound:
    def test_delta_witness(self):
        assert star_norm_lower(M.delta(0.0), 1) >= 0.99

    def test_zero(self):
        assert star_norm_lower(M.zero(), 1.5) == 0.0

    def test_gaussian_p2(self):
        assert star_norm_lower(M.gaussian_density(), 2) == pytest.approx(2 ** -0.25, rel=0.05)

    @pytest.mark.parametrize("p", [1.25, 1.5])
    def test_never_exceeds_duality_value(self, p):
        mu = M.Sum(((1.0, M.gaussian_density(-1.5, 0.5)), (0.7j, M.gaussian_density(1.2, 0.8))))
        lower, value = star_norm_lower(mu, p), star_norm(mu, p).value
        assert lower <= value + 1e-8
        assert lower >= 0.95 * value


class TestRestricted:
    def test_keeps_atom(self):
        assert restricted_star_norm(M.delta(1.0), 1, SetOfIntervals.interval(0, 2)).value == pytest.approx(1.0)

    def test_drops_atom(self):
        assert restricted_star_norm(M.delta(1.0), 1, SetOfIntervals.interval(2, 3)).value == 0.0

    def test_lebesgue_plancherel(self):
        res = restricted_star_norm(M.lebesgue(0, 4), 2, SetOfIntervals.interval(1, 3))
        assert res.value == pytest.approx(math.sqrt(2), rel=1e-3)


class TestOpNorm:
    def test_indicator_p_inf(self):
        g = GridFunction.from_callable(lambda x: ((x > 1) & (x < 2)).astype(float), 0, 4, 40001)
        # brute-force oracle: x with [x, 2x] meeting (1, 2) is (1/2, 2)
        assert op_norm(g, math.inf, LogGrid(1e-2, 1e2, 4000)) == pytest.approx(1.5, rel=5e-3)

    def test_zero(self):
        g = GridFunction.from_callable(lambda x: 0 * x, 0, 4, 101)
        assert op_norm(g, 2) == 0.0

    @settings(max_examples=10)
    @given(st.integers(0, 2**31), st.floats(1.05, 3), st.floats(1.05, 3))
    def test_chain_monotone(self, seed, a, b):
        p2, p1 = sorted((a, b))
        r = np.random.default_rng(seed)
        vals = r.normal(size=801) * np.exp(-np.linspace(0, 8, 801) / 3)
        g = GridFunction.from_callable(lambda x: np.interp(x, np.linspace(0, 8, 801), vals), 0, 8, 801)
        assert op_norm(g, p2) <= op_norm(g, p1) + 1e-8


class TestVpStar:
    def test_zero(self):
        assert vp_star_norm(zero_function(), 1.5).value == 0.0

    def test_jump_diverges(self):
        res = vp_star_norm(indicator(), 1.5, LogGrid(1e-3, 1e3, 60))
        assert math.isinf(res.value)


class TestLacunaryPeaks:
    def test_cantor_has_persistent_peaks(self):
        peaks = lacunary_peaks(M.cantor())
        assert peaks is not None and min(peaks) > 0.07

    def test_cantor_restriction_inherits(self):
        mu = M.restrict(M.cantor(), SetOfIntervals.interval(0.25, 0.5))
        assert lacunary_peaks(mu) is not None
        assert math.isinf(star_norm(mu, 1.2).value)

    def test_density_has_none(self):
        assert lacunary_peaks(M.gaussian_density()) is None

    def test_cantor_p1_is_finite(self):
        assert star_norm(M.cantor(), 1).value == pytest.approx(1.0, abs=1e-9)
