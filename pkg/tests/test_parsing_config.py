import numpy as np
import pytest
from hypothesis import given, strategies as st

from lpmeasure import measures as M
from lpmeasure.config import RunConfig, parse_config
from lpmeasure.errors import SpecParseError
from lpmeasure.parsing import parse_interval, parse_measure


def total(text):
    return M.total_mass(parse_measure(text))


class TestMeasureLanguage:
    def test_delta(self):
        assert total("delta(0)") == pytest.approx(1.0)
        assert total("delta(1, -2.5)") == pytest.approx(-2.5)

    def test_atoms_and_complex(self):
        assert total("atoms[(0, 1), (1, 2j)]") == pytest.approx(1 + 2j)

    def test_gauss_box_cantor(self):
        assert total("gauss(0, 1)") == pytest.approx(1.0, abs=1e-9)
        assert total("box(0, 2)") == pytest.approx(2.0, abs=1e-9)
        assert total("cantor") == pytest.approx(1.0)
        assert parse_measure("cantor(5)").depth == 5

    def test_sum_and_restrict(self):
        assert total("sum[0.5*delta(0), 2*gauss(1,2)]") == pytest.approx(4.5, abs=1e-6)
        assert total("restrict(cantor, 0, 0.5)") == pytest.approx(0.5, abs=1e-9)

    def test_zero(self):
        assert M.is_zero(parse_measure("zero"))

    @pytest.mark.parametrize("text, column", [
        ("delta(0", 8), ("gauss(0, -1)", 10), ("sum[delta(0) delta(1)]", 14), ("foo(1)", 1),
        ("delta(0) junk", 10), ("delta(1j)", 7),
    ])
    def test_errors_carry_position(self, text, column):
        with pytest.raises(SpecParseError) as info:
            parse_measure(text)
        assert info.value.line == 1 and info.value.column == column

    def test_multiline_position(self):
        with pytest.raises(SpecParseError) as info:
            parse_measure("sum[\n  delta(0),\n  box(2, 1)]")
        assert info.value.line == 3

    @given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-3, 3)), min_size=1, max_size=5))
    def test_atoms_roundtrip(self, pairs):
        text = "atoms[" + ", ".join(f"({a!r}, {w!r})" for a, w in pairs) + "]"
        mu = parse_measure(text)
        assert M.total_mass(mu) == pytest.approx(sum(w for _, w in pairs), abs=1e-9)


def test_interval_union():
    E = parse_interval("0,1; 2,2.5")
    assert E.measure == pytest.approx(1.5)
    with pytest.raises(SpecParseError):
        parse_interval("1,0")


class TestConfig:
    def test_parse(self):
        cfg = parse_config("# desk\nseed = 7\ncases=12\nlog_grid.points = 50\ntolerance.relative = 1e-7\n")
        assert (cfg.seed, cfg.cases, cfg.log_grid_points, cfg.tolerance_relative) == (7, 12, 50, 1e-7)

    def test_unknown_key(self):
        with pytest.raises(SpecParseError) as info:
            parse_config("seed = 1\nbogus = 2\n")
        assert info.value.line == 2

    def test_bad_value(self):
        with pytest.raises(SpecParseError):
            parse_config("cases = many")

    def test_nonpositive_rejected(self):
        with pytest.raises(SpecParseError):
            parse_config("window = 0")

    def test_digest_ignores_output_location(self):
        a = RunConfig(seed=3)
        assert a.digest() == a.replace(output_dir="elsewhere", workers=4).digest()
        assert a.digest() != a.replace(seed=4).digest()

    def test_env_override(self, monkeypatch, tmp_path):
        monkeypatch.setenv("LPMEASURE_OUTPUT_DIR", str(tmp_path))
        assert RunConfig().resolved_output_dir() == tmp_path
