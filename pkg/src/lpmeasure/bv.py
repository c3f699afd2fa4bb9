"""Functions of bounded variation on (0, inf) and their cosine/sine transforms.

A BV function vanishing at infinity is stored through its derivative measure,
``f(t) = -mu_f((t, inf))``. Its transform

    f^_gamma(x) = int_0^inf f(t) cos 2 pi (x t - gamma) dt

(gamma = 0 cosine, gamma = 1/4 sine) is computed twice: by quadrature of the
sampled f, and through integration by parts against ``mu_f``,

    f^_gamma(x) = -(1 / (pi x)) int sin(pi x t) cos(pi (x t - 2 gamma)) dmu_f(t),

which already contains the boundary term ``f(0+) sin(2 pi gamma) / (2 pi x)``
and has no cancellation as x -> 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import NumericalIntegrityError, PreconditionError
from .grid import ExponentPair, GridFunction, GridSpec
from .inequalities import InequalityReport, check_vpstar_embedding, digest
from .measures import (
    Measure,
    cantor,
    density,
    dilate,
    discretize,
    is_zero,
    normalize,
    support_hull,
    tail_mass,
    total_variation,
)
from .norms import LogGrid, NormConfig, NormResult, _jsonable, vp_star_norm
from .transforms import _exp_sum, fourier_stieltjes, fourier_stieltjes_at

PATH_TOLERANCE = 1e-4
# below this value of x * (support length) the Stieltjes path integrates the
# product form directly against the discretized measure
SMALL_X = 1e-2


@dataclass(frozen=True)
class BVFunction:
    derivative_measure: Measure
    name: str = ""

    def __post_init__(self):
        hull = support_hull(self.derivative_measure)
        if hull is not None and hull[0] < 0:
            raise PreconditionError("derivative measure must live on (0, inf)")

    def __call__(self, t) -> np.ndarray:
        return eval_bv(self, t)

    @property
    def support_end(self) -> float:
        hull = support_hull(self.derivative_measure)
        return 0.0 if hull is None else hull[1]

    def at_zero(self) -> float:
        """``f(0+) = -mu_f((0, inf))``."""
        return float(eval_bv(self, 0.0))

    def scaled(self, lam: float) -> "BVFunction":
        """``t -> f(lam t)``; its derivative measure is the push-forward under ``t -> t / lam``."""
        return BVFunction(dilate(self.derivative_measure, 1.0 / lam), f"{self.name}(lam={lam:g})")


def eval_bv(f: BVFunction, t) -> np.ndarray | float:
    """``f(t) = -mu_f((t, inf))``."""
    scalar = np.ndim(t) == 0
    out = 0.0 - tail_mass(f.derivative_measure, np.atleast_1d(np.asarray(t, dtype=float))).real
    return float(out[0]) if scalar else out


# -- families ---------------------------------------------------------------

def cantor_complement(depth: int | None = None) -> BVFunction:
    """``f = 1 - C`` on [0, 1], zero afterwards; ``mu_f`` is minus the Cantor measure."""
    mu = cantor(depth) if depth is not None else cantor()
    return BVFunction(-mu, "cantor_complement")


def indicator(a: float = 1.0) -> BVFunction:
    """``chi_[0, a)``: a single downward jump."""
    from .measures import delta

    return BVFunction(delta(a, -1.0), f"indicator(0,{a:g})")


def smooth_bump(n: int = 4097) -> BVFunction:
    """``f(t) = (1 - t^2)^3`` on [0, 1]; C^2 at the right end, absolutely continuous."""
    mu = density(lambda t: -6.0 * t * (1.0 - t * t) ** 2, 0.0, 1.0, n)
    return BVFunction(mu, "smooth_bump")


def zero_function() -> BVFunction:
    from .measures import zero

    return BVFunction(zero(), "zero")


# -- transform paths ---------------------------------------------------------

def _half_hat(theta: np.ndarray) -> np.ndarray:
    """``int_0^1 (1 - u) e^(i theta u) du``."""
    out = np.empty(theta.shape, dtype=complex)
    small = np.abs(theta) < 1e-3
    t = theta[small]
    out[small] = 0.5 + 1j * t / 6 - t**2 / 24 - 1j * t**3 / 120
    t = theta[~small]
    out[~small] = 1j / t - (np.exp(1j * t) - 1) / t**2
    return out


def _direct_path(f: BVFunction, gamma: float, x: np.ndarray, points: int) -> tuple[np.ndarray, float]:
    """Exact integral of the piecewise-linear interpolant of f against the kernel.

    ``int |f - f_lin| <= h TV(mu_f)`` bounds the error, uniformly in x.
    """
    T = f.support_end
    if T <= 0:
        return np.zeros(x.size), 0.0
    t = np.linspace(0.0, T, points)
    h = t[1] - t[0]
    vals = eval_bv(f, t)
    theta = 2 * np.pi * x * h
    # sum_j f_j e^(i w t_j) times the hat-function transform, minus the missing half hats
    s = _exp_sum(t, vals.astype(complex), -x)
    k = np.sinc(theta / (2 * np.pi)) ** 2
    e = _half_hat(theta)
    total = h * (k * s - vals[0] * np.conj(e) - vals[-1] * np.exp(1j * theta * (points - 1)) * e)
    out = (np.exp(-2j * np.pi * gamma) * total).real
    return out, h * total_variation(f.derivative_measure)


def _stieltjes_path(f: BVFunction, gamma: float, x: np.ndarray) -> tuple[np.ndarray, float]:
    mu = f.derivative_measure
    out = np.zeros(x.size)
    T = max(f.support_end, 1e-300)
    small = x * T < SMALL_X
    if np.any(small):
        nodes, w = discretize(mu)
        xs = x[small]
        arg = np.pi * np.outer(xs, nodes)
        kern = np.sin(arg) * np.cos(arg - 2 * np.pi * gamma)
        out[small] = -(kern @ w).real / (np.pi * xs)
    big = ~small
    if np.any(big):
        xb = x[big]
        muhat = fourier_stieltjes_at(mu, xb)
        # int e^(2 pi i x t) dmu = conj(mu^(x)) for a real measure
        s = (np.exp(-2j * np.pi * gamma) * np.conj(muhat)).imag
        out[big] = (f.at_zero() * math.sin(2 * math.pi * gamma) - s) / (2 * np.pi * xb)
    return out, 0.0


@dataclass
class PathComparison:
    x: np.ndarray
    direct: np.ndarray
    stieltjes: np.ndarray
    direct_bound: float

    @property
    def max_difference(self) -> float:
        return float(np.max(np.abs(self.direct - self.stieltjes))) if self.x.size else 0.0

    def diagnostics(self) -> dict[str, Any]:
        i = int(np.argmax(np.abs(self.direct - self.stieltjes))) if self.x.size else 0
        return {
            "max_difference": self.max_difference,
            "at_x": float(self.x[i]) if self.x.size else None,
            "direct": float(self.direct[i]) if self.x.size else None,
            "stieltjes": float(self.stieltjes[i]) if self.x.size else None,
            "direct_error_bound": self.direct_bound,
        }


def compare_paths(f: BVFunction, gamma: float, x, points: int = 32769) -> PathComparison:
    x = np.asarray(x, dtype=float)
    d, bound = _direct_path(f, gamma, x, points)
    s, _ = _stieltjes_path(f, gamma, x)
    return PathComparison(x, d, s, bound)


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not 0 <= gamma <= 0.5:
        raise PreconditionError("gamma must lie in [0, 1/2]")
    return gamma


def fourier_bv_at(f: BVFunction, gamma: float, x, check: bool = True,
                  tolerance: float = PATH_TOLERANCE, points: int = 32769) -> np.ndarray:
    """``f^_gamma`` at positive frequencies ``x`` (Stieltjes path), cross-checked by quadrature."""
    gamma = _check_gamma(gamma)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise PreconditionError("frequencies must be positive")
    if not check:
        return _stieltjes_path(f, gamma, x)[0]
    cmp = compare_paths(f, gamma, x, points)
    if cmp.max_difference > tolerance:
        raise NumericalIntegrityError(
            f"transform paths disagree by {cmp.max_difference:.3g} > {tolerance:g}", cmp.diagnostics()
        )
    return cmp.stieltjes


def fourier_bv(f: BVFunction, gamma: float, xgrid: GridSpec, check: bool = True,
               tolerance: float = PATH_TOLERANCE) -> GridFunction:
    return GridFunction.on(xgrid, fourier_bv_at(f, gamma, xgrid.points, check, tolerance))


def leading_term(f: BVFunction, gamma: float, x) -> np.ndarray | float:
    """``sin(2 pi gamma) f(1/x) / (2 pi x)``."""
    gamma = _check_gamma(gamma)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise PreconditionError("frequencies must be positive")
    s = math.sin(2 * math.pi * gamma)
    out = np.zeros(x.size) if s == 0 else s * eval_bv(f, 1.0 / x) / (2 * np.pi * x)
    return float(out[0]) if scalar else out


def remainder_at(f: BVFunction, gamma: float, x, check: bool = True) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return fourier_bv_at(f, gamma, x, check) - leading_term(f, gamma, x)


def remainder(f: BVFunction, gamma: float, xgrid: GridSpec, check: bool = True) -> GridFunction:
    """``Gamma = f^_gamma - leading term`` on ``xgrid``."""
    return GridFunction.on(xgrid, remainder_at(f, gamma, xgrid.points, check))


# -- L1 norm of the remainder -------------------------------------------------

@dataclass(frozen=True)
class RemainderGrid:
    """Geometric nodes at small x joined to uniform nodes resolving the oscillation.

    Gamma oscillates in x with period about 1 / T (T the support end), so a
    purely geometric grid undersamples it at large x.
    """

    x_min: float = 1e-3
    x_max: float = 1e3
    points: int = 200
    samples_per_period: int = 32

    def nodes(self, T: float) -> np.ndarray:
        geo = np.geomspace(self.x_min, self.x_max, self.points)
        if T <= 0:
            return geo
        step = 1.0 / (self.samples_per_period * T)
        q = (self.x_max / self.x_min) ** (1.0 / (self.points - 1)) - 1.0
        switch = step / q
        if switch >= self.x_max:
            return geo
        head = geo[geo < switch]
        n = int(math.ceil((self.x_max - switch) / step)) + 1
        tail = np.linspace(max(switch, self.x_min), self.x_max, n)
        return np.concatenate((head, tail))

    def refined(self) -> "RemainderGrid":
        return RemainderGrid(self.x_min, self.x_max, 2 * self.points, 2 * self.samples_per_period)


@dataclass
class RemainderNorm:
    value: float
    x: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    last_decade: float
    path_check: dict[str, Any]

    def to_dict(self) -> dict:
        return {"value": self.value, "last_decade": self.last_decade, "nodes": int(self.x.size),
                "path_check": _jsonable(self.path_check)}


def _abs_integral(x: np.ndarray, y: np.ndarray, a: float, b: float) -> float:
    sel = (x >= a) & (x <= b)
    return float(np.trapezoid(np.abs(y[sel]), x[sel])) if np.count_nonzero(sel) > 1 else 0.0


def remainder_l1(f: BVFunction, gamma: float, grid: RemainderGrid | None = None,
                 check_points: int = 1024, tolerance: float = PATH_TOLERANCE) -> RemainderNorm:
    """``||Gamma||_{L1([x_min, x_max])}`` with a tail indicator from the last decade.

    The quadrature cross-check runs on an evenly thinned subset of the nodes.
    """
    grid = grid or RemainderGrid()
    gamma = _check_gamma(gamma)
    x = grid.nodes(f.support_end)
    vals = _stieltjes_path(f, gamma, x)[0] - leading_term(f, gamma, x)
    idx = np.unique(np.linspace(0, x.size - 1, min(check_points, x.size)).astype(int))
    cmp = compare_paths(f, gamma, x[idx])
    diag = cmp.diagnostics()
    if cmp.max_difference > tolerance:
        raise NumericalIntegrityError(
            f"transform paths disagree by {cmp.max_difference:.3g} > {tolerance:g}", diag
        )
    total = _abs_integral(x, vals, grid.x_min, grid.x_max)
    last = _abs_integral(x, vals, grid.x_max / 10, grid.x_max)
    return RemainderNorm(total, x, vals, last, diag)


def partial_l1(f: BVFunction, gamma: float, edges, grid: RemainderGrid | None = None) -> list[float]:
    """``int_{x_min}^{X} |Gamma|`` for each X in ``edges``."""
    grid = grid or RemainderGrid(x_max=float(max(edges)))
    r = remainder_l1(f, gamma, grid)
    return [_abs_integral(r.x, r.values, grid.x_min, float(X)) for X in edges]


def log_growth(partials: list[float], spread: float = 1.5) -> dict[str, Any]:
    """Detect logarithmic growth of partial integrals taken at decade edges.

    Growth is logarithmic when every per-decade increment is positive and the
    increments agree within a factor ``spread`` (a convergent integral has
    geometrically shrinking increments).
    """
    inc = np.diff(np.asarray(partials, dtype=float))
    ok = bool(inc.size >= 2 and np.all(inc > 0) and inc.max() <= spread * inc.min())
    return {"increments": inc.tolist(), "logarithmic": ok,
            "per_decade": float(inc.mean()) if inc.size else 0.0}


# -- theorem-level reports ----------------------------------------------------

@dataclass
class MainReport:
    name: str
    p: float
    gamma: float
    gamma_l1: float
    vp_star: float
    ratio: float
    status: str
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return _jsonable({
            "name": self.name, "p": self.p, "gamma": self.gamma, "gamma_l1": self.gamma_l1,
            "vp_star": self.vp_star, "ratio": self.ratio, "status": self.status,
            "details": self.details,
        })

    def line(self) -> str:
        return (f"[{self.status.upper():>12}] {self.name}: ||Gamma||_1={self.gamma_l1:.6g} "
                f"||f||_Vp*={self.vp_star:.6g} ratio={self.ratio:.4g}")


def _effective_exponent(f: BVFunction, p: float, xrange: LogGrid, config: NormConfig | None):
    """Exponents above 2 are first reduced to 2 through the V_p* embedding."""
    if p <= 2:
        return p, None
    return 2.0, check_vpstar_embedding(f, p, 2.0, xrange, config)


def theorem_main_report(f: BVFunction, p, gamma: float, xrange: LogGrid | None = None,
                        config: NormConfig | None = None, grid: RemainderGrid | None = None) -> MainReport:
    """Empirical constant ``||Gamma||_1 / ||f||_{V_p*}``.

    Inconclusive when the V_p* norm diverges (hypothesis unmet). The absolute
    constant is not known, so a finite ratio counts as a pass.
    """
    ep = ExponentPair.of(p)
    lg = xrange or LogGrid()
    grid = grid or RemainderGrid(lg.x_min, lg.x_max)
    name = f"theorem_main[{f.name or 'f'}, gamma={gamma:g}]"
    p_eff, emb = _effective_exponent(f, ep.p, lg, config)
    vp = vp_star_norm(f, p_eff, lg, config)
    rem = remainder_l1(f, gamma, grid)
    details: dict[str, Any] = {"remainder": rem.to_dict(), "vp_star": vp.to_dict(), "p_effective": p_eff}
    if emb is not None:
        details["embedding"] = emb.to_dict()
    if not math.isfinite(vp.value):
        return MainReport(name, ep.p, gamma, rem.value, vp.value, math.nan, "inconclusive", details)
    if vp.value == 0:
        status = "pass" if rem.value == 0 else "fail"
        return MainReport(name, ep.p, gamma, rem.value, 0.0, 0.0 if rem.value == 0 else math.inf, status, details)
    return MainReport(name, ep.p, gamma, rem.value, vp.value, rem.value / vp.value, "pass", details)


def check_embst(f: BVFunction, p, xrange: LogGrid | None = None,
                config: NormConfig | None = None) -> InequalityReport:
    """``TV(mu_f) <= C ||f||_{V_p*}`` with the measured constant ``C = TV / ||f||_{V_p*}``.

    Only finiteness of C is a claim; the report is inconclusive when the
    V_p* norm diverges.
    """
    ep = ExponentPair.of(p)
    lg = xrange or LogGrid()
    tv = total_variation(f.derivative_measure)
    vp = NormResult(0.0, "duality") if is_zero(normalize(f.derivative_measure)) else vp_star_norm(f, ep.p, lg, config)
    if math.isfinite(vp.value) and vp.value > 0:
        C = tv / vp.value
        rhs = C * vp.value
    elif vp.value == 0:
        C, rhs = (0.0, 0.0) if tv == 0 else (math.inf, math.inf)
    else:
        C, rhs = math.nan, math.inf
    return InequalityReport("embst", tv, rhs, C, 1e-9, digest(f, ep.p),
                            details={"vp_star": vp.value, "measured_constant": C,
                                     "divergent_blocks": len(vp.diagnostics.get("divergent_blocks", []))})
