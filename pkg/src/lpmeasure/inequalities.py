"""Numerical checks of the Hölder, Hausdorff-Young, Young, set and embedding
inequalities for measures. Each check returns an :class:`InequalityReport`.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple

import numpy as np
from scipy.special import gamma as gamma_fn
from scipy.special import roots_legendre

from .errors import PreconditionError
from .grid import ExponentPair, GridFunction, SetOfIntervals
from .measures import (
    Atomic,
    Density,
    Measure,
    SelfSimilar,
    convolve,
    lebesgue,
    primitives,
    restrict,
    scale_product,
)
from .norms import (
    Dictionary,
    LogGrid,
    NormConfig,
    _json_float,
    _jsonable,
    _refine_supremum,
    block_star_norms,
    frequency_window,
    hat_norm,
    lp_norm,
    op_norm,
    star_norm,
    star_norm_lower,
)
from .transforms import fourier_stieltjes

DEFAULT_TOLERANCE = 1e-6


@dataclass
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    constant_used: float = 1.0
    tolerance: float = DEFAULT_TOLERANCE
    inputs_digest: str = ""
    status: str = ""
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        if not self.status:
            if math.isnan(self.rhs) or math.isinf(self.rhs) or math.isnan(self.lhs):
                self.status = "inconclusive"
            elif self.lhs <= self.rhs * (1 + self.tolerance) + _ABS_FLOOR:
                self.status = "pass"
            else:
                self.status = "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def relative_slack(self) -> float:
        if math.isinf(self.rhs) or math.isnan(self.rhs) or math.isinf(self.lhs):
            return math.nan
        denom = max(abs(self.rhs), _ABS_FLOOR)
        return (self.rhs - self.lhs) / denom

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _json_float(self.lhs),
            "rhs": _json_float(self.rhs),
            "constant_used": _json_float(self.constant_used),
            "slack": _json_float(self.slack) if not math.isnan(self.slack) else "nan",
            "relative_slack": _json_float(self.relative_slack),
            "pass": self.passed,
            "status": self.status,
            "tolerance": self.tolerance,
            "inputs_digest": self.inputs_digest,
            "details": _jsonable(self.details),
        }

    def line(self) -> str:
        return (
            f"[{self.status.upper():>12}] {self.name}: lhs={self.lhs:.6g} rhs={self.rhs:.6g} "
            f"(C={self.constant_used:.4g}, rel.slack={self.relative_slack:.3g})"
        )


# absolute slack below which two vanishing sides count as equal
_ABS_FLOOR = 1e-14


def digest(*items) -> str:
    """Stable hash of measures, grid functions and plain parameters."""
    h = hashlib.sha256()

    def feed(obj):
        if isinstance(obj, Atomic):
            h.update(b"atomic")
            h.update(obj.positions.tobytes())
            h.update(obj.weights.tobytes())
        elif isinstance(obj, Density):
            h.update(b"density")
            feed(obj.grid)
        elif isinstance(obj, GridFunction):
            h.update(repr((obj.start, obj.step)).encode())
            h.update(obj.values.tobytes())
        elif isinstance(obj, SelfSimilar):
            h.update(repr(obj).encode())
            h.update(repr((obj.depth, obj.coefficient, obj.window)).encode())
        elif hasattr(obj, "terms"):
            for c, m in obj.terms:
                h.update(repr(c).encode())
                feed(m)
        elif hasattr(obj, "derivative_measure"):
            feed(obj.derivative_measure)
        elif isinstance(obj, SetOfIntervals):
            h.update(repr(obj.intervals).encode())
        else:
            h.update(repr(obj).encode())

    for it in items:
        feed(it)
    return h.hexdigest()[:16]


def _holder_exponent(p: float, q: float) -> float:
    inv = (0 if math.isinf(p) else 1 / p) + (0 if math.isinf(q) else 1 / q)
    if inv > 1 + 1e-12:
        raise PreconditionError(f"1/p + 1/q = {inv:g} exceeds 1")
    return math.inf if inv == 0 else 1.0 / inv


def _young_exponent(p: float, q: float) -> float:
    inv = (0 if math.isinf(p) else 1 / p) + (0 if math.isinf(q) else 1 / q) - 1
    if inv < -1e-12:
        raise PreconditionError(f"1/p + 1/q = {inv + 1:g} is below 1")
    return math.inf if inv <= 0 else 1.0 / inv


def check_holder(mu: Measure, f: GridFunction, p, q, config: NormConfig | None = None,
                 tolerance: float = DEFAULT_TOLERANCE) -> InequalityReport:
    """``||f mu||*_r <= ||f||_{L^q hat} ||mu||*_p`` with ``1/r = 1/p + 1/q``."""
    p, q = ExponentPair.of(p).p, ExponentPair.of(q).p
    r = _holder_exponent(p, q)
    nd = hat_norm(f, q, config)
    rhs_mu = star_norm(mu, p, config)
    lhs = star_norm(scale_product(f, mu), r, config)
    rhs = nd * rhs_mu.value
    if nd == 0 or rhs_mu.value == 0:
        rhs = 0.0
    return InequalityReport(
        "holder", lhs.value, rhs, 1.0, tolerance, digest(mu, f, p, q),
        details={"p": p, "q": q, "r": r, "hat_norm_f": nd, "star_norm_mu": rhs_mu.value},
    )


def check_hausdorff_young(mu: Measure, p, config: NormConfig | None = None,
                          dictionary: Dictionary | None = None, with_lower: bool = True,
                          tolerance: float = DEFAULT_TOLERANCE) -> InequalityReport:
    """``||mu^||_{p'} <= ||mu||*_p`` for ``1 <= p <= 2``.

    The left side is the p'-norm of freshly sampled transform values (the
    supremum polished between samples when p' is infinite); the right
    side is the duality estimator, so agreement doubles as a consistency
    check. The dictionary lower bound is recorded and must not exceed the lhs.
    """
    ep = ExponentPair.of(p)
    if not 1 <= ep.p <= 2:
        raise PreconditionError("Hausdorff-Young needs 1 <= p <= 2")
    rhs = star_norm(mu, ep, config)
    window = frequency_window(mu, config)
    sampled = fourier_stieltjes(mu, window.spec)
    if rhs.divergence_flag:
        lhs = math.inf
    elif math.isinf(ep.p_prime):
        lhs = _refine_supremum(mu, sampled.y, np.abs(sampled.values), sampled.grid.step)
    else:
        lhs = lp_norm(sampled.grid, ep.p_prime)
    details: dict[str, Any] = {"p": ep.p, "p_prime": ep.p_prime, "window_half_width": window.half_width}
    status = ""
    if rhs.divergence_flag:
        status = "inconclusive"
        details["consistent_divergent"] = True
    if with_lower and not rhs.divergence_flag:
        lower = star_norm_lower(mu, ep, dictionary)
        details["dictionary_lower_bound"] = lower
        details["lower_le_lhs"] = bool(lower <= lhs * (1 + tolerance) + 1e-8)
        if lhs > 0:
            details["dictionary_gap"] = 1 - lower / lhs
        if not details["lower_le_lhs"]:
            status = "fail"
    rep = InequalityReport("hausdorff_young", lhs, rhs.value, 1.0, tolerance, digest(mu, ep.p), status, details)
    if not status and math.isfinite(rep.lhs) and rep.rhs > 0:
        rep.details["relative_agreement"] = abs(rep.lhs - rep.rhs) / rep.rhs
    return rep


def check_young(mu: Measure, f: GridFunction, p, q, config: NormConfig | None = None,
                tolerance: float = DEFAULT_TOLERANCE) -> InequalityReport:
    """``||f * mu||_{L^r hat} <= ||f||_{L^q hat} ||mu||*_p`` with ``1/p + 1/q = 1 + 1/r``."""
    p, q = ExponentPair.of(p).p, ExponentPair.of(q).p
    r = _young_exponent(p, q)
    nf = hat_norm(f, q, config)
    nm = star_norm(mu, p, config)
    conv = convolve(f, mu)
    lhs = hat_norm(conv, r, config)
    rhs = 0.0 if (nf == 0 or nm.value == 0) else nf * nm.value
    return InequalityReport(
        "young", lhs, rhs, 1.0, tolerance, digest(mu, f, p, q),
        details={"p": p, "q": q, "r": r, "hat_norm_f": nf, "star_norm_mu": nm.value},
    )


def check_set_bound(E: SetOfIntervals, p, points_per_unit: int = 256, config: NormConfig | None = None,
                    tolerance: float = DEFAULT_TOLERANCE) -> InequalityReport:
    """``||chi_E||_{L^p hat} <= |E|^(1/p)``."""
    ep = ExponentPair.of(p)
    lo, hi = E.hull
    chi = restrict(lebesgue(lo, hi, points_per_unit), E)
    lhs = star_norm(chi, ep, config)
    rhs = 1.0 if math.isinf(ep.p) else E.measure ** (1.0 / ep.p)
    rep = InequalityReport(
        "set_bound", lhs.value, rhs, 1.0, tolerance, digest(E, ep.p),
        details={"p": ep.p, "measure": E.measure, "intervals": [list(iv) for iv in E.intervals],
                 "divergent": lhs.divergence_flag},
    )
    if lhs.divergence_flag:
        rep.status = "fail"
    return rep


class SincConstant(NamedTuple):
    s: float
    numeric: float
    paper_bound: float
    table_value: float
    ball_integral: float | None
    ball_bound: float | None


def _sinc_power_integral(s: float, periods: int = 4000, nodes: int = 48) -> float:
    """``int_R |sin(pi t)/(pi t)|^s dt`` with an asymptotic tail correction."""
    x, w = roots_legendre(nodes)
    u = 0.5 * (x + 1)  # nodes on [0, 1]
    k = np.arange(periods)[:, None]
    t = k + u[None, :]
    vals = np.abs(np.sinc(t)) ** s
    body = float((vals * (0.5 * w)[None, :]).sum())
    mean_sin = gamma_fn((s + 1) / 2) / (math.sqrt(math.pi) * gamma_fn(s / 2 + 1))
    tail = mean_sin * math.pi ** (-s) * periods ** (1 - s) / (s - 1)
    return 2.0 * (body + tail)


def sinc_constant(s: float) -> SincConstant:
    """``C_s = ||sin(pi .)/(pi .)||_s`` with the two recorded upper bounds.

    ``paper_bound`` is ``(2 s'/pi)^(1/s)`` (1 at s = inf), ``table_value`` the
    piecewise value ``(2/s)^(1/(2s))`` for s >= 2, and ``ball_bound`` the bound
    ``sqrt(2/s)`` on the integral ``(1/pi) int |sin t / t|^s dt`` (s >= 2).
    """
    s = float(s)
    if not s > 1:
        raise PreconditionError("|sinc|^s is integrable only for s > 1")
    if math.isinf(s):
        return SincConstant(s, 1.0, 1.0, 1.0, None, None)
    integral = _sinc_power_integral(s)
    sp = s / (s - 1)
    paper = (2 * sp / math.pi) ** (1 / s)
    table = (2 / s) ** (1 / (2 * s)) if s >= 2 else paper
    ball = math.sqrt(2 / s) if s >= 2 else None
    return SincConstant(s, integral ** (1 / s), paper, table, integral, ball)


def check_embedding_blocks(mu: Measure, E: SetOfIntervals, p, r, R: float,
                           config: NormConfig | None = None,
                           tolerance: float = DEFAULT_TOLERANCE) -> InequalityReport:
    """``||mu||*_{p,E} <= C_q R^(1/q') ||mu||*_{r,E}``, ``q = rp/(r - p)``, for E in [-R, R].

    ``C_q`` is the closed-form bound ``(2q'/pi)^(1/q)``. The constant that the
    Hölder argument actually yields, ``||sinc||_{q'} (2R)^(1/q)``, is recorded
    alongside.
    """
    p, r = ExponentPair.of(p).p, ExponentPair.of(r).p
    if not 1 <= p < r:
        raise PreconditionError("need 1 <= p < r")
    lo, hi = E.hull
    if lo < -R - 1e-12 or hi > R + 1e-12:
        raise PreconditionError("E must lie inside [-R, R]")
    q = p if math.isinf(r) else r * p / (r - p)
    qp = ExponentPair(q).p_prime
    Cq = sinc_constant(q).paper_bound
    const = Cq * R ** (1 / qp)
    restricted = restrict(mu, E)
    lhs = star_norm(restricted, p, config)
    rhs_norm = star_norm(restricted, r, config)
    holder_const = (sinc_constant(qp).numeric if qp > 1 and math.isfinite(qp) else 1.0) * (2 * R) ** (1 / q)
    rhs = 0.0 if rhs_norm.value == 0 else const * rhs_norm.value
    rep = InequalityReport(
        "embedding_blocks", lhs.value, rhs, const, tolerance, digest(mu, E, p, r, R),
        details={"p": p, "r": r, "q": q, "R": R, "holder_constant": holder_const,
                 "holder_rhs": holder_const * rhs_norm.value if rhs_norm.value else 0.0},
    )
    if not math.isinf(rhs) and lhs.divergence_flag:
        rep.status = "fail"
        rep.details["finite_r_divergent_p"] = True
    return rep


def check_set_restriction(mu: Measure, E: SetOfIntervals, p, q, config: NormConfig | None = None,
                          tolerance: float = DEFAULT_TOLERANCE) -> InequalityReport:
    """``||mu||*_{p,E} <= ||mu||*_q |E|^(1/r)`` with ``1/r = 1/p - 1/q``."""
    p, q = ExponentPair.of(p).p, ExponentPair.of(q).p
    if not 1 <= p <= q:
        raise PreconditionError("need 1 <= p <= q")
    inv_r = 1 / p - (0 if math.isinf(q) else 1 / q)
    lhs = star_norm(restrict(mu, E), p, config)
    full = star_norm(mu, q, config)
    rhs = 0.0 if full.value == 0 else full.value * E.measure**inv_r
    return InequalityReport(
        "set_restriction", lhs.value, rhs, E.measure**inv_r, tolerance, digest(mu, E, p, q),
        details={"p": p, "q": q, "r": math.inf if inv_r == 0 else 1 / inv_r},
    )


def check_op_chain(g: GridFunction, p1, p2, xrange: LogGrid | None = None,
                   tolerance: float = 1e-8) -> InequalityReport:
    """``||g||_{O_p2} <= ||g||_{O_p1}`` for ``p1 > p2``, absolute ``tolerance``.

    Each block average ``x^-1 int_x^{2x}`` is a probability average, so the
    inequality holds block by block with constant 1.
    """
    p1, p2 = ExponentPair.of(p1).p, ExponentPair.of(p2).p
    if not p1 > p2 > 1:
        raise PreconditionError("need p1 > p2 > 1")
    lhs, rhs = op_norm(g, p2, xrange), op_norm(g, p1, xrange)
    status = "pass" if lhs <= rhs + tolerance else "fail"
    return InequalityReport("op_chain", lhs, rhs, 1.0, tolerance, digest(g.values, p1, p2), status,
                            {"p1": p1, "p2": p2, "absolute_tolerance": tolerance})


def check_vpstar_embedding(f, p1, p2, xrange: LogGrid | None = None, config: NormConfig | None = None,
                           tolerance: float = DEFAULT_TOLERANCE) -> InequalityReport:
    """``||f||_{V*_{p2}} <= C ||f||_{V*_{p1}}`` for ``p1 > p2 > 1``, checked block by block.

    Each block satisfies ``N_{p2}(x) <= C x^(1/q) N_{p1}(x)`` with
    ``1/q = 1/p2 - 1/p1`` and ``C = ||sinc||_{q'}``; the measured aggregate
    constant is reported next to ``C``.
    """
    p1, p2 = ExponentPair.of(p1).p, ExponentPair.of(p2).p
    if not p1 > p2 > 1:
        raise PreconditionError("need p1 > p2 > 1")
    inv_q = 1 / p2 - (0 if math.isinf(p1) else 1 / p1)
    q = 1 / inv_q
    qp = ExponentPair(q).p_prime
    C = sinc_constant(qp).numeric if math.isfinite(qp) else 1.0
    mu = getattr(f, "derivative_measure", f)
    lg = xrange or LogGrid()
    b1 = block_star_norms(mu, p1, lg, config)
    b2 = block_star_norms(mu, p2, lg, config)
    x = b1.x
    block_rhs = C * x**inv_q * b1.values
    checked = failed = inconclusive = 0
    worst = math.inf
    for i in range(x.size):
        if b1.results[i].diagnostics.get("empty_block"):
            continue
        if b1.results[i].divergence_flag:
            inconclusive += 1
            continue
        checked += 1
        lhs_i = b2.values[i]
        if not lhs_i <= block_rhs[i] * (1 + tolerance) + _ABS_FLOOR:
            failed += 1
        if block_rhs[i] > 0 and math.isfinite(lhs_i):
            worst = min(worst, (block_rhs[i] - lhs_i) / block_rhs[i])
    w = lg.weights()
    n1 = float(np.dot(w, x ** (-1 / p1) * b1.values))
    n2 = float(np.dot(w, x ** (-1 / p2) * b2.values))
    if any(r.divergence_flag for r in b1.results):
        n1 = math.inf
    if any(r.divergence_flag for r in b2.results):
        n2 = math.inf
    measured = n2 / n1 if n1 > 0 and math.isfinite(n1) else math.nan
    rep = InequalityReport(
        "vpstar_embedding", n2, C * n1 if n1 else 0.0, C, tolerance, digest(f, p1, p2),
        details={"p1": p1, "p2": p2, "q": q, "blocks_checked": checked, "blocks_failed": failed,
                 "blocks_inconclusive": inconclusive, "worst_block_relative_slack": worst,
                 "measured_constant": measured},
    )
    if failed:
        rep.status = "fail"
    return rep
