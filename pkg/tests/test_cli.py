import json

import pytest

from lpmeasure.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_norm_delta(capsys):
    code, out, _ = run(capsys, "norm", "--measure", "delta(0)", "--p", "1")
    d = json.loads(out)
    assert code == 0 and d["value"] == pytest.approx(1.0)
    assert "seed" in d and "config_digest" in d


def test_norm_zero(capsys):
    code, out, _ = run(capsys, "norm", "--measure", "zero")
    assert json.loads(out)["value"] == 0.0


def test_norm_divergent_is_json(capsys):
    code, out, _ = run(capsys, "norm", "--measure", "delta(0)", "--p", "1.5")
    d = json.loads(out)
    assert d["value"] == "inf" and d["divergence_flag"]


def test_norm_restricted_lebesgue(capsys):
    code, out, _ = run(capsys, "norm", "--measure", "box(0,4)", "--p", "2", "--restrict", "1,3")
    assert json.loads(out)["value"] == pytest.approx(2**0.5, rel=1e-3)


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "norm", "--measure", "delta(0")
    assert code == 2 and "column" in err


def test_config_error_exit_code(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("nonsense = 1\n")
    code, _, err = run(capsys, "--config", str(cfg), "suite", "sinc")
    assert code == 2 and "line 1" in err


def test_unknown_suite(capsys):
    with pytest.raises(SystemExit) as info:
        main(["suite", "nope"])
    assert info.value.code == 2


def test_transform_csv(capsys):
    code, out, _ = run(capsys, "transform", "--measure", "delta(0.25)", "--y=0,2,5")
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert rows[0] == ["y", "re", "im", "abs"]
    assert all(float(r[3]) == pytest.approx(1.0) for r in rows[1:])


def test_transform_gaussian(capsys):
    code, out, _ = run(capsys, "transform", "--measure", "gauss(0,1)", "--y=-2,2,9")
    import math
    for row in out.strip().splitlines()[1:]:
        y, re, im, ab = map(float, row.split(","))
        assert re == pytest.approx(math.exp(-math.pi * y * y), abs=1e-9)


def test_suite_sinc_writes_report(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("LPMEASURE_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "suite", "sinc")
    summary = json.loads(out)
    assert code == 0 and summary["summary"]["fail"] == 0
    report = json.loads((tmp_path / "sinc-seed0.json").read_text())
    assert {row["s"] for row in report["table"]} >= {2.0, 3.0, 4.0, 8.0}
    assert report["seed"] == 0 and report["config_digest"]


def test_suite_failures_exit_one(capsys, tmp_path):
    # the set bound is violated at p = 3, so the sets suite reports failures
    code, out, _ = run(capsys, "suite", "sets", "--cases", "4", "--output", str(tmp_path))
    assert code == 1 and json.loads(out)["summary"]["fail"] > 0


def test_suite_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "suite", "uncertainty", "--cases", "5", "--seed", "3", "--output", str(a))
    run(capsys, "suite", "uncertainty", "--cases", "5", "--seed", "3", "--workers", "2", "--output", str(b))
    assert (a / "uncertainty-seed3.json").read_bytes() == (b / "uncertainty-seed3.json").read_bytes()
