import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as sint

from lpmeasure import measures as M
from lpmeasure.bv import (
    RemainderGrid,
    cantor_complement,
    check_embst,
    compare_paths,
    eval_bv,
    fourier_bv,
    fourier_bv_at,
    indicator,
    leading_term,
    log_growth,
    partial_l1,
    remainder,
    remainder_l1,
    smooth_bump,
    theorem_main_report,
    zero_function,
)
from lpmeasure.grid import GridSpec
from lpmeasure.norms import LogGrid, vp_star_norm

X = GridSpec.linspace(0.05, 6.0, 120)


class TestEval:
    def test_indicator(self):
        f = indicator()
        assert eval_bv(f, 0.5) == pytest.approx(1.0)
        assert eval_bv(f, 2.0) == 0.0

    def test_cantor_complement(self):
        t = np.linspace(0, 1, 41)
        assert np.allclose(eval_bv(cantor_complement(), t), 1 - M.cantor_function(t), atol=1e-5)

    def test_zero(self):
        assert np.all(eval_bv(zero_function(), np.linspace(0, 3, 7)) == 0)

    def test_bump(self):
        t = np.linspace(0, 1, 11)
        assert np.allclose(eval_bv(smooth_bump(), t), (1 - t * t) ** 3, atol=1e-6)


class TestTransform:
    def test_indicator_cosine(self):
        x = X.points
        vals = fourier_bv(indicator(), 0.0, X).values
        assert np.allclose(vals, np.sin(2 * np.pi * x) / (2 * np.pi * x), atol=1e-9)

    def test_indicator_sine(self):
        x = X.points
        vals = fourier_bv(indicator(), 0.25, X).values
        assert np.allclose(vals, (1 - np.cos(2 * np.pi * x)) / (2 * np.pi * x), atol=1e-9)

    def test_zero(self):
        assert np.all(fourier_bv(zero_function(), 0.25, X).values == 0)

    @pytest.mark.parametrize("gamma", [0.0, 0.25])
    def test_bump_against_quad(self, gamma):
        x = np.array([0.3, 1.7, 5.2])
        vals = fourier_bv_at(smooth_bump(), gamma, x)
        oracle = [sint.quad(lambda t, xx=xx: (1 - t * t) ** 3 * math.cos(math.pi * (xx * t * 2) - 2 * math.pi * gamma),
                            0, 1, limit=200)[0] for xx in x]
        assert np.allclose(vals, oracle, atol=1e-7)

    @settings(max_examples=8)
    @given(st.floats(1e-3, 50), st.sampled_from([0.0, 0.25]))
    def test_paths_agree(self, x, gamma):
        for f in (cantor_complement(), smooth_bump()):
            assert compare_paths(f, gamma, np.array([x])).max_difference < 1e-4


class TestLeadingTerm:
    def test_cosine_case_vanishes(self):
        assert leading_term(cantor_complement(), 0.0, 3.0) == 0.0

    def test_indicator_sine(self):
        assert leading_term(indicator(), 0.25, 2.0) == pytest.approx(1 / (4 * math.pi))

    def test_beyond_support(self):
        assert leading_term(indicator(), 0.25, 0.5) == 0.0


class TestRemainder:
    def test_cosine_remainder_is_transform(self):
        f = cantor_complement()
        assert np.allclose(remainder(f, 0.0, X).values, fourier_bv(f, 0.0, X).values)

    def test_zero(self):
        assert np.all(remainder(zero_function(), 0.25, X).values == 0)

    def test_cantor_finite_and_stable(self):
        f = cantor_complement()
        g = RemainderGrid(1e-3, 1e3)
        a, b = remainder_l1(f, 0.25, g), remainder_l1(f, 0.25, g.refined())
        assert math.isfinite(a.value)
        assert abs(a.value - b.value) < 0.02 * b.value

    def test_indicator_grows_logarithmically(self):
        partials = partial_l1(indicator(), 0.0, [1.0, 10.0, 100.0, 1000.0])
        growth = log_growth(partials)
        assert growth["logarithmic"]
        # |sin(2 pi x)| / (2 pi x) has mean 1/(pi^2 x) per unit log, i.e. ln(10)/pi^2 per decade
        assert growth["per_decade"] == pytest.approx(math.log(10) / math.pi**2, rel=0.01)

    def test_log_growth_rejects_convergent(self):
        assert not log_growth([1.0, 1.5, 1.6, 1.61])["logarithmic"]


class TestReports:
    def test_indicator_inconclusive(self):
        rep = theorem_main_report(indicator(), 1.5, 0.0, LogGrid(1e-3, 1e3, 40))
        assert rep.status == "inconclusive"

    def test_bump_finite_ratio(self):
        rep = theorem_main_report(smooth_bump(), 2.0, 0.0, LogGrid(1e-3, 1e3, 60))
        assert rep.status == "pass" and 0 < rep.ratio < math.inf

    def test_embst_zero(self):
        rep = check_embst(zero_function(), 1.5, LogGrid(1e-2, 1e2, 20))
        assert rep.lhs == 0 and rep.status == "pass"

    def test_embst_bump(self):
        rep = check_embst(smooth_bump(), 2.0, LogGrid(1e-3, 1e3, 60))
        assert rep.status == "pass"
        assert rep.lhs == pytest.approx(1.0, abs=1e-6)

    def test_cantor_vpstar_is_infinite(self):
        # every block of the Cantor measure keeps lattice-aligned Fourier peaks
        res = vp_star_norm(cantor_complement(), 1.2, LogGrid(1e-2, 1e1, 12))
        assert math.isinf(res.value)


def test_scaling_changes_support():
    f = cantor_complement().scaled(4.0)
    assert f.support_end == pytest.approx(0.25)
    assert eval_bv(f, 0.1) == pytest.approx(eval_bv(cantor_complement(), 0.4))
