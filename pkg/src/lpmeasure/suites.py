"""Randomized and golden suites over the inequality checks.

Every case draws from its own generator seeded by ``(seed, suite, index)``,
so results do not depend on execution order or on the worker count. Suite
output is a plain dict that serializes to byte-stable JSON.
"""
from __future__ import annotations

import json
import math
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from . import bv
from . import measures as M
from . import uncertainty as U
from .config import RunConfig
from .grid import GridFunction, SetOfIntervals
from .inequalities import (
    InequalityReport,
    check_embedding_blocks,
    check_hausdorff_young,
    check_holder,
    check_op_chain,
    check_set_bound,
    check_set_restriction,
    check_vpstar_embedding,
    check_young,
    sinc_constant,
)
from .norms import _jsonable

SUITES = ("holder", "hy", "young", "sets", "sinc", "embeddings", "uncertainty", "bv")


# -- random inputs ----------------------------------------------------------

def case_rng(seed: int, suite: str, index: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), zlib.crc32(suite.encode()), int(index)])


def _complex(rng: np.random.Generator, size=None):
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def random_gaussian_mixture(rng: np.random.Generator, max_terms: int = 3, n: int = 4096) -> M.Density:
    """Sum of 1..max_terms Gaussians with complex coefficients on one grid."""
    k = int(rng.integers(1, max_terms + 1))
    c = rng.uniform(-3, 3, k)
    s = rng.uniform(0.4, 1.2, k)
    a = _complex(rng, k)
    lo, hi = float(np.min(c - 6 * s)), float(np.max(c + 6 * s))

    def fn(x):
        return sum(a[i] * np.exp(-np.pi * ((x - c[i]) / s[i]) ** 2) for i in range(k))

    return M.density(fn, lo, hi, n)


def random_finite_measure(rng: np.random.Generator, depth: int = 18) -> M.Measure:
    """1-5 atoms in [-4, 4], optionally a Gaussian mixture and a Cantor component."""
    k = int(rng.integers(1, 6))
    parts: list[tuple[complex, M.Measure]] = [(1.0, M.atoms(zip(rng.uniform(-4, 4, k), _complex(rng, k))))]
    if rng.random() < 0.5:
        parts.append((1.0, random_gaussian_mixture(rng)))
    if rng.random() < 0.5:
        parts.append((complex(_complex(rng)), M.cantor(depth)))
    return M.Sum(tuple(parts))


def random_test_function(rng: np.random.Generator, half_width: float = 12.0, n: int = 4096) -> GridFunction:
    """Modulated, translated Gaussian sampled on ``[-half_width, half_width]``."""
    b = rng.uniform(-2, 2)
    s = rng.uniform(0.5, 2.0)
    w = rng.uniform(-2, 2)
    c = complex(_complex(rng))
    return GridFunction.from_callable(
        lambda x: c * np.exp(-np.pi * ((x - b) / s) ** 2 + 2j * np.pi * w * x), -half_width, half_width, n
    )


def random_block_function(rng: np.random.Generator, n: int = 8193) -> GridFunction:
    """Rough function on ``[0, 16]``: random bumps plus a random step pattern."""
    k = int(rng.integers(1, 5))
    centres, widths, amps = rng.uniform(0, 12, k), rng.uniform(0.05, 2.0, k), _complex(rng, k)
    cuts = np.sort(rng.uniform(0, 16, 6))
    levels = rng.normal(size=7)

    def fn(x):
        bumps = (amps[None, :] * np.exp(-(((x[:, None] - centres) / widths) ** 2))).sum(axis=1)
        return bumps + levels[np.searchsorted(cuts, x)] * (x < cuts[-1])

    return GridFunction.from_callable(fn, 0.0, 16.0, n)


OP_CHAIN_CASES = 50


def random_intervals(rng: np.random.Generator, lo: float = -4.0, hi: float = 4.0, max_count: int = 4) -> SetOfIntervals:
    k = int(rng.integers(1, max_count + 1))
    ends = np.sort(rng.uniform(lo, hi, 2 * k))
    return SetOfIntervals.of(*[(ends[2 * i], ends[2 * i + 1]) for i in range(k)])


# -- case functions: (config, index) -> list of report dicts -----------------

def _tag(rep: dict, index: int, **extra) -> dict:
    rep = dict(rep)
    rep["case"] = index
    rep.update(extra)
    return rep


def case_holder(cfg: RunConfig, i: int) -> list[dict]:
    rng = case_rng(cfg.seed, "holder", i)
    kind = i % 4
    f = random_test_function(rng)
    if kind == 0:
        p, q, mu = 1.0, math.inf, random_finite_measure(rng, cfg.depth)
    else:
        mu = random_gaussian_mixture(rng)
        if kind == 1:
            p = float(rng.uniform(1.2, 4.0))
            q = p / (p - 1)
        elif kind == 2:
            p, q = 4.0, 4.0
        else:
            p = float(rng.uniform(1.5, 6.0))
            q = 1.0 / rng.uniform(0.0, 1.0 - 1.0 / p) if rng.random() < 0.9 else math.inf
    rep = check_holder(mu, f, p, q, cfg.norm_config(), cfg.tolerance_relative)
    return [_tag(rep.to_dict(), i)]


def case_hy(cfg: RunConfig, i: int) -> list[dict]:
    rng = case_rng(cfg.seed, "hy", i)
    p = (1.0, 1.25, 1.5, 2.0)[i % 4]
    smooth = p > 1
    mu = random_gaussian_mixture(rng) if smooth else random_finite_measure(rng, cfg.depth)
    rep = check_hausdorff_young(mu, p, cfg.norm_config(), cfg.dictionary(), tolerance=cfg.tolerance_relative)
    return [_tag(rep.to_dict(), i, smooth_density=smooth)]


def case_young(cfg: RunConfig, i: int) -> list[dict]:
    rng = case_rng(cfg.seed, "young", i)
    kind = i % 3
    f = random_test_function(rng)
    if kind == 0:
        p, mu = 1.0, random_finite_measure(rng, cfg.depth)
        q = float(rng.uniform(1.0, 4.0))
    else:
        mu = random_gaussian_mixture(rng)
        if kind == 1:
            p = q = 4.0 / 3.0
        else:
            p = float(rng.uniform(1.0, 2.0))
            q = 1.0 / rng.uniform(1.0 - 1.0 / p, 1.0)
    rep = check_young(mu, f, p, q, cfg.norm_config(), cfg.tolerance_relative)
    return [_tag(rep.to_dict(), i)]


SET_EXPONENTS = (1.0, 1.5, 2.0, 3.0)


def case_sets(cfg: RunConfig, i: int) -> list[dict]:
    rng = case_rng(cfg.seed, "sets", i)
    E = random_intervals(rng)
    return [
        _tag(check_set_bound(E, p, config=cfg.norm_config(), tolerance=cfg.tolerance_relative).to_dict(), i)
        for p in SET_EXPONENTS
    ]


SINC_EXPONENTS = (1.5, 2.0, 3.0, 4.0, 8.0, math.inf)


def sinc_table() -> list[dict]:
    rows = []
    for s in SINC_EXPONENTS:
        c = sinc_constant(s)
        rows.append({"s": s, "numeric": c.numeric, "paper_bound": c.paper_bound, "table_value": c.table_value,
                     "ball_integral": c.ball_integral, "ball_bound": c.ball_bound})
    return rows


def case_sinc(cfg: RunConfig, i: int) -> list[dict]:
    out = []
    for row in sinc_table():
        s = row["s"]
        out.append(InequalityReport(f"sinc_paper_bound[s={s:g}]", row["numeric"], row["paper_bound"],
                                    tolerance=cfg.tolerance_relative, details=row).to_dict())
        if row["ball_bound"] is not None:
            out.append(InequalityReport(f"sinc_ball_bound[s={s:g}]", row["ball_integral"],
                                        row["ball_bound"] + 1e-6, tolerance=0.0, details=row).to_dict())
    c2 = sinc_constant(2.0)
    out.append(InequalityReport("plancherel_C2", abs(c2.numeric - 1.0), 1e-4, tolerance=0.0,
                                details={"numeric": c2.numeric, "ball_integral": c2.ball_integral}).to_dict())
    out.append(InequalityReport("ball_equality_s2", abs(c2.ball_integral - 1.0), 1e-4, tolerance=0.0,
                                details={"ball_integral": c2.ball_integral}).to_dict())
    # |sinc| <= 1 makes the integral non-increasing in s; the norm C_s is not
    # (it returns to 1 as s -> inf), so only the integral is checked
    table = [r for r in sinc_table() if math.isfinite(r["s"])]
    ints = [r["ball_integral"] for r in table]
    rises = [max(0.0, b - a) for a, b in zip(ints, ints[1:])]
    out.append(InequalityReport("sinc_integral_monotone", max(rises, default=0.0), 0.0, tolerance=0.0,
                                details={"s": [r["s"] for r in table], "integral": ints,
                                         "norm": [r["numeric"] for r in table]}).to_dict())
    return [_tag(r, i) for r in out]


def case_embeddings(cfg: RunConfig, i: int) -> list[dict]:
    rng = case_rng(cfg.seed, "embeddings", i)
    nc = cfg.norm_config()
    mu = random_gaussian_mixture(rng)
    R = float(rng.choice([1.0, 2.0, 4.0]))
    a, b = np.sort(rng.uniform(-R, R, 2))
    p = float(rng.uniform(1.0, 2.0))
    r = float(rng.uniform(p + 0.25, 6.0)) if rng.random() < 0.85 else math.inf
    rep1 = check_embedding_blocks(mu, SetOfIntervals.interval(a, b), p, r, R, nc, cfg.tolerance_relative)
    E = random_intervals(rng)
    p2 = float(rng.uniform(1.0, 2.0))
    q2 = float(rng.uniform(p2, 6.0))
    rep2 = check_set_restriction(mu, E, p2, q2, nc, cfg.tolerance_relative)
    out = [_tag(rep1.to_dict(), i), _tag(rep2.to_dict(), i)]
    if i < OP_CHAIN_CASES:
        g = random_block_function(rng)
        lo, hi = np.sort(rng.uniform(1.05, 6.0, 2))
        p1 = math.inf if rng.random() < 0.2 else float(hi)
        out.append(_tag(check_op_chain(g, p1, float(lo), cfg.log_grid()).to_dict(), i))
    return out


def golden_embeddings(cfg: RunConfig) -> list[dict]:
    nc, lg = cfg.norm_config(), cfg.log_grid()
    out = []
    for f, p1, p2 in ((bv.cantor_complement(cfg.depth), 1.4, 1.2), (bv.smooth_bump(), 2.0, 1.5),
                      (bv.zero_function(), 1.4, 1.2)):
        rep = check_vpstar_embedding(f, p1, p2, lg, nc, cfg.tolerance_relative)
        rep.name = f"vpstar_embedding[{f.name}]"
        out.append(_tag(rep.to_dict(), -1))
    return out


def case_uncertainty(cfg: RunConfig, i: int, N: int = 256) -> list[dict]:
    rng = case_rng(cfg.seed, "uncertainty", i)
    E, F = U.random_pair(rng, N, 0.25)
    op = U.build_limiting_operator(N, E, F)
    envelope = math.sqrt(len(E) * len(F) / N)
    out = [InequalityReport("donoho_stark_envelope", op.sigma, envelope + 1e-9, tolerance=0.0,
                            details={"N": N, "E_size": len(E), "F_size": len(F)}).to_dict()]
    ds = U.no_double_support(N, E, F)
    d = ds.to_dict()
    d.update(name="no_double_support", status="pass" if ds.zero_kernel else "fail")
    out.append(d)
    w = np.zeros(N, dtype=complex)
    w[F.array] = _complex(rng, len(F))
    out.append(U.measure_annihilation_check(w, E, F).to_dict())
    return [_tag(r, i) for r in out]


def golden_uncertainty() -> list[dict]:
    N = 64
    E = F = U.picket_fence(N, 8)
    ds = U.no_double_support(N, E, F)
    d = ds.to_dict()
    comb = ds.witness is not None and abs(ds.sigma - 1) < 1e-9 and ds.witness_leakage < 1e-9
    d.update(name="picket_fence_witness", status="pass" if comb else "fail",
             expected="sigma = 1 and a Dirac-comb witness: the discrete pair is not annihilating")
    return [_tag(d, -1)]


def golden_bv(cfg: RunConfig) -> list[dict]:
    nc, lg = cfg.norm_config(), cfg.log_grid()
    grid = bv.RemainderGrid(lg.x_min, lg.x_max, lg.points)
    out = []
    families = [(bv.cantor_complement(cfg.depth), 1.2), (bv.smooth_bump(), 2.0)]
    for f, p in families:
        for gamma in (0.0, 0.25):
            out.append(bv.theorem_main_report(f, p, gamma, lg, nc, grid).to_dict())
        rep = bv.check_embst(f, p, lg, nc)
        rep.name = f"embst[{f.name}]"
        out.append(rep.to_dict())
    out.append(negative_control(cfg).to_dict())
    return [_tag(r, -1) for r in out]


@dataclass
class NegativeControl:
    vp_star: float
    partials: list[float]
    growth: dict[str, Any]

    @property
    def status(self) -> str:
        return "pass" if math.isinf(self.vp_star) and self.growth["logarithmic"] else "fail"

    def to_dict(self) -> dict:
        return _jsonable({"name": "negative_control[indicator]", "status": self.status,
                          "vp_star": self.vp_star, "partials": self.partials, "growth": self.growth})


def negative_control(cfg: RunConfig | None = None, p: float = 1.5) -> NegativeControl:
    """f = chi_[0,1): V_p* must diverge and the cosine transform must fail to be integrable."""
    cfg = cfg or RunConfig()
    f = bv.indicator()
    vp = bv.vp_star_norm(f, p, cfg.log_grid(), cfg.norm_config())
    edges = [1.0, 10.0, 100.0, 1000.0]
    partials = bv.partial_l1(f, 0.0, edges)
    return NegativeControl(vp.value, partials, bv.log_growth(partials))


# -- orchestration -----------------------------------------------------------

CASES: dict[str, Callable[[RunConfig, int], list[dict]]] = {
    "holder": case_holder,
    "hy": case_hy,
    "young": case_young,
    "sets": case_sets,
    "embeddings": case_embeddings,
    "uncertainty": case_uncertainty,
}


def _run_case(args) -> list[dict]:
    name, cfg, i = args
    return CASES[name](cfg, i)


def _summary(reports: list[dict]) -> dict:
    counts = {"pass": 0, "fail": 0, "inconclusive": 0}
    worst = math.inf
    constants = []
    for r in reports:
        counts[r.get("status", "fail")] = counts.get(r.get("status", "fail"), 0) + 1
        rs = r.get("relative_slack")
        if isinstance(rs, float) and math.isfinite(rs):
            worst = min(worst, rs)
        c = r.get("details", {}).get("measured_constant") if isinstance(r.get("details"), dict) else None
        if c is None and "ratio" in r:
            c = r["ratio"]
        if isinstance(c, float) and math.isfinite(c):
            constants.append({"name": r["name"], "value": c})
    return {"total": len(reports), **counts,
            "worst_relative_slack": worst if math.isfinite(worst) else None,
            "empirical_constants": constants}


def run_suite(name: str, cfg: RunConfig | None = None) -> dict:
    """Run one suite; the result is JSON-ready and fully determined by ``cfg``."""
    cfg = cfg or RunConfig()
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    reports: list[dict] = []
    if name in CASES:
        jobs = [(name, cfg, i) for i in range(cfg.cases)]
        if cfg.workers > 1:
            with ProcessPoolExecutor(cfg.workers) as ex:
                for chunk in ex.map(_run_case, jobs):
                    reports.extend(chunk)
        else:
            for job in jobs:
                reports.extend(_run_case(job))
    extra: dict[str, Any] = {}
    if name == "sinc":
        reports.extend(case_sinc(cfg, 0))
        extra["table"] = sinc_table()
    elif name == "embeddings":
        reports.extend(golden_embeddings(cfg))
    elif name == "uncertainty":
        reports.extend(golden_uncertainty())
    elif name == "bv":
        reports.extend(golden_bv(cfg))
    return _jsonable({
        "suite": name,
        "seed": cfg.seed,
        "config": cfg.to_dict(),
        "config_digest": cfg.digest(),
        "summary": _summary(reports),
        "reports": reports,
        **extra,
    })


def run_all(cfg: RunConfig | None = None, names=SUITES) -> dict:
    cfg = cfg or RunConfig()
    results = [run_suite(n, cfg) for n in names]
    agg = {"pass": 0, "fail": 0, "inconclusive": 0, "total": 0}
    for r in results:
        for k in agg:
            agg[k] += r["summary"][k]
    return _jsonable({"suite": "all", "seed": cfg.seed, "config": cfg.to_dict(),
                      "config_digest": cfg.digest(), "summary": agg,
                      "suites": {r["suite"]: r for r in results}})


def dumps(result: dict) -> str:
    return json.dumps(result, sort_keys=True, indent=1)
