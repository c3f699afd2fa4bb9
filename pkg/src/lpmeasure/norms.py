"""Norm functionals: grid L^p norms, the hat-L^p norm, the dual norm of a
measure, restricted dual norms and the O_p / V_p* scales.

The dual norm of a finite measure is computed through Fubini and L^p duality,
``||mu||*_p = ||mu^||_{p'}``, on an adaptive symmetric frequency window. The
window is doubled three times; if the increments of the partial ``p'``-th
power integrals fail to decay geometrically the norm is declared divergent.
A finite dictionary of modulated, translated and dilated Gaussians gives an
independent lower bound that never uses ``mu^``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .errors import PreconditionError
from .grid import ExponentPair, GridFunction, GridSpec, SetOfIntervals
from .measures import (
    Density,
    Measure,
    SelfSimilar,
    discretize,
    is_zero,
    normalize,
    primitives,
    restrict,
    support_hull,
    total_variation,
)
from .transforms import fourier_function, fourier_stieltjes, fourier_stieltjes_at


def lp_norm(f: GridFunction | np.ndarray, p, step: float | None = None) -> float:
    """Trapezoidal ``(int |f|^p)^(1/p)``; grid maximum of ``|f|`` for p = inf."""
    p = ExponentPair.of(p).p
    if isinstance(f, GridFunction):
        vals, h = f.values, f.step
    else:
        vals, h = np.asarray(f), step
    a = np.abs(vals)
    if a.size == 0:
        return 0.0
    if math.isinf(p):
        return float(a.max())
    if a.size == 1:
        return 0.0
    s = a.max()
    if s == 0:
        return 0.0
    b = (a / s) ** p
    integral = h * (b.sum() - 0.5 * (b[0] + b[-1]))
    return float(s * integral ** (1.0 / p))


@dataclass
class NormConfig:
    base_window: float = 32.0
    doublings: int = 3
    decay_ratio: float = 0.9
    samples_per_period: int = 16
    min_points_base: int = 256
    max_points: int = 1 << 20
    # a divergent integral adds a fair share of its total on every doubling;
    # increments below this fraction of the total are round-off
    relative_floor: float = 1e-8
    # transform noise per unit of total variation (chirp-z accuracy)
    noise_level: float = 1e-9


@dataclass
class NormResult:
    value: float
    method: str
    divergence_flag: bool = False
    caveat: str | None = None
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.divergence_flag:
            self.value = math.inf

    def __float__(self):
        return float(self.value)

    def to_dict(self) -> dict:
        return {
            "value": _json_float(self.value),
            "method": self.method,
            "divergence_flag": self.divergence_flag,
            "caveat": self.caveat,
            "diagnostics": _jsonable(self.diagnostics),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _json_float(v):
    if isinstance(v, complex):
        return {"re": _json_float(v.real), "im": _json_float(v.imag)}
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        return "nan"
    return v


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating, complex, np.complexfloating)):
        return _json_float(obj)
    return obj


# -- the frequency window ---------------------------------------------------

@dataclass(frozen=True)
class FrequencyWindow:
    base: float
    step: float
    doublings: int

    @property
    def half_width(self) -> float:
        return self.base * 2**self.doublings

    @property
    def spec(self) -> GridSpec:
        return GridSpec.symmetric(self.half_width, self.step)


def frequency_window(mu: Measure, config: NormConfig | None = None) -> FrequencyWindow:
    """Window and resolution adapted to the support and sampling of ``mu``."""
    cfg = config or NormConfig()
    hull = support_hull(mu)
    diameter = (hull[1] - hull[0]) if hull else 0.0
    scale = diameter if diameter > 0 else 1.0
    nyquist = math.inf
    densities_only = True
    for m in primitives(mu):
        if isinstance(m, Density):
            nyquist = min(nyquist, 0.5 / m.grid.step)
        else:
            densities_only = False
    k = cfg.doublings
    if densities_only and math.isfinite(nyquist):
        base = nyquist / 2**k
    else:
        base = cfg.base_window * max(1.0, 1.0 / scale)
        if math.isfinite(nyquist):
            base = min(base, nyquist / 2**k)
    step = min(1.0 / (cfg.samples_per_period * scale), base / cfg.min_points_base)
    n = 2 * base * 2**k / step
    if n > cfg.max_points:
        step *= n / cfg.max_points
    return FrequencyWindow(base, step, k)


def _partial_power_integrals(y: np.ndarray, a: np.ndarray, step: float, radii) -> list[float]:
    """``int_{|y| <= R} a`` by the trapezoid rule for each radius (y symmetric)."""
    centre = y.size // 2
    out = []
    for R in radii:
        m = int(round(R / step))
        seg = a[centre - m:centre + m + 1]
        out.append(float(step * (seg.sum() - 0.5 * (seg[0] + seg[-1]))) if seg.size > 1 else 0.0)
    return out


def transform_norm(
    values: np.ndarray,
    y: np.ndarray,
    step: float,
    window: FrequencyWindow,
    q: float,
    config: NormConfig | None = None,
    noise: float = 0.0,
) -> NormResult:
    """``||F||_q`` for samples of a transform on a symmetric window, with the
    doubling-window divergence test.

    ``noise`` is an absolute bound on the sampling error of ``F``. Increments
    that noise of this size could produce on the added window are not taken as
    evidence of divergence.
    """
    cfg = config or NormConfig()
    mags = np.abs(values)
    diagnostics: dict[str, Any] = {
        "window_half_widths": [window.base * 2**k for k in range(window.doublings + 1)],
        "step": step,
        "exponent": q,
    }
    if math.isinf(q):
        return NormResult(float(mags.max()) if mags.size else 0.0, "duality", False, None, diagnostics)
    s = float(mags.max()) if mags.size else 0.0
    if s == 0:
        return NormResult(0.0, "duality", False, None, diagnostics)
    powered = (mags / s) ** q
    radii = diagnostics["window_half_widths"]
    partials = _partial_power_integrals(y, powered, step, radii)
    increments = [partials[k] - partials[k - 1] for k in range(1, len(partials))]
    diagnostics["partial_integrals"] = [p * s**q for p in partials]
    total = partials[-1]
    floor = cfg.relative_floor * total
    if noise > 0:
        added = 2 * (radii[-1] - radii[-2])
        floor = max(floor, added * (noise / s) ** q)
    diagnostics["increment_floor"] = floor * s**q
    divergent = False
    ratio = 0.0
    if len(increments) >= 2 and increments[-1] > floor:
        first = increments[0]
        if first <= floor:
            ratio = math.inf
        else:
            ratio = (increments[-1] / first) ** (1.0 / (len(increments) - 1))
        divergent = ratio > cfg.decay_ratio
    diagnostics["growth_ratio"] = ratio
    if not divergent and 0 < ratio < 1:
        diagnostics["tail_estimate"] = increments[-1] * ratio / (1 - ratio) * s**q
    value = s * total ** (1.0 / q)
    return NormResult(value, "duality", divergent, None, diagnostics)


def lacunary_peaks(mu: Measure, count: int = 6, threshold: float = 1e-3) -> list[float] | None:
    """Moduli ``|mu^(b^n)|`` when they certify a non-decaying transform.

    Applies to self-similar parts of ratio ``1/b``, ``b`` an integer, whose
    translations lie on a lattice ``t_0 + u Z``. Past the cylinder depth every
    cylinder phase is aligned at ``y = b^n / u``,
    so a Cantor-type part with positive mass leaves ``|mu^(b^n)|`` bounded
    below. Since ``|mu^|`` is Lipschitz, each peak carries a fixed amount of
    ``|mu^|^q`` for every finite q, and the dual norm is infinite for p > 1.
    Returns ``None`` when no such part exists or the peaks decay.
    """
    lattices, depth = set(), 0
    for m in primitives(mu):
        if not isinstance(m, SelfSimilar) or len(m.translations) < 2:
            continue
        b = 1.0 / m.ratio
        d = np.asarray(m.translations) - m.translations[0]
        u = float(np.min(np.abs(d[d != 0]))) if np.any(d != 0) else 0.0
        if abs(b - round(b)) > 1e-9 or round(b) < 2 or u == 0:
            continue
        if np.all(np.abs(d / u - np.round(d / u)) < 1e-9):
            lattices.add((int(round(b)), u))
            depth = max(depth, m.depth)
    if not lattices:
        return None
    tv = total_variation(mu)
    if not tv > 0:
        return None
    for b, u in sorted(lattices):
        ys = np.array([float(b) ** n / u for n in range(depth + 1, depth + 1 + count)])
        vals = np.abs(fourier_stieltjes_at(mu, ys))
        if vals.min() > threshold * tv and vals[-1] >= 0.5 * vals[0]:
            return [float(v) for v in vals]
    return None


def star_norm(mu: Measure, p, config: NormConfig | None = None) -> NormResult:
    """``||mu||*_p`` of a finite measure, computed as ``||mu^||_{p'}``.

    Divergence (value ``inf``) is reported through ``divergence_flag``. The
    p = 1 value is a supremum over a finite window and carries a caveat.
    """
    ep = ExponentPair.of(p)
    mu = normalize(mu)
    if is_zero(mu):
        return NormResult(0.0, "duality", diagnostics={"zero_measure": True})
    if ep.p > 1:
        peaks = lacunary_peaks(mu)
        if peaks is not None:
            return NormResult(math.inf, "duality", True, None, {"lacunary_peaks": peaks})
    window = frequency_window(mu, config)
    res = fourier_stieltjes(mu, window.spec)
    noise = (config or NormConfig()).noise_level * total_variation(mu)
    out = transform_norm(res.values, res.y, res.grid.step, window, ep.p_prime, config, noise)
    out.diagnostics["transform_method"] = res.method
    out.diagnostics["certified_error"] = res.certified_error
    if ep.p == 1:
        refined = _refine_supremum(mu, res.y, np.abs(res.values), res.grid.step)
        out.diagnostics["sampled_supremum"] = out.value
        out.value = max(out.value, refined)
        out.caveat = "p=1: supremum of |mu^| over a finite frequency window"
    return out


def _refine_supremum(mu: Measure, y: np.ndarray, mags: np.ndarray, step: float, peaks: int = 8) -> float:
    """Polish the largest sampled local maxima of ``|mu^|`` between grid nodes."""
    if mags.size < 3:
        return float(mags.max()) if mags.size else 0.0
    interior = np.flatnonzero((mags[1:-1] >= mags[:-2]) & (mags[1:-1] >= mags[2:])) + 1
    candidates = interior[np.argsort(mags[interior])[::-1][:peaks]]
    best = float(mags.max())
    for i in candidates:
        r = minimize_scalar(lambda t: -abs(fourier_stieltjes_at(mu, t)[0]),
                            bounds=(y[i] - step, y[i] + step), method="bounded",
                            options={"xatol": 1e-12 * max(1.0, abs(y[i]))})
        best = max(best, -float(r.fun))
    return best


def hat_norm(f: GridFunction, p, config: NormConfig | None = None) -> float:
    """``||f||_{L^p hat} = ||f^||_{p'}``; ``inf`` when the ``p'`` integral diverges."""
    mu = Density(f)
    return star_norm(mu, p, config).value


def hat_norm_result(f: GridFunction, p, config: NormConfig | None = None) -> NormResult:
    return star_norm(Density(f), p, config)


def restricted_star_norm(mu: Measure, p, E: SetOfIntervals, config: NormConfig | None = None) -> NormResult:
    return star_norm(restrict(mu, E), p, config)


# -- dictionary lower bound ---------------------------------------------------

@dataclass
class Dictionary:
    """Gaussian test functions ``g(y) = exp(-pi ((y - b)/s)^2) exp(2 pi i w y)``.

    ``h = g^`` is the test function paired with the measure; its hat-norm is
    ``||g||_p``, computed numerically on a grid.
    """

    dilations: int = 5
    translations: int = 9
    modulations: int = 17
    refine: bool = True
    combine: int = 8
    node_depth: int = 12
    norm_points: int = 2049


def _gaussian_hat(x, s, b, w):
    """Transform of the dictionary member with parameters (s, b, w) at x."""
    return s * np.exp(-np.pi * (s * (x - w)) ** 2) * np.exp(-2j * np.pi * b * (x - w))


def _gaussian(y, s, b, w):
    return np.exp(-np.pi * ((y - b) / s) ** 2) * np.exp(2j * np.pi * w * y)


def _member_norm(s: float, p: float, npts: int) -> float:
    spec = GridSpec.linspace(-8 * s, 8 * s, npts)
    return lp_norm(GridFunction.on(spec, np.exp(-np.pi * (spec.points / s) ** 2)), p)


def _spread(nodes, weights) -> tuple[float, float]:
    a = np.abs(weights)
    tot = a.sum()
    if tot == 0:
        return 0.0, 1.0
    c = float((a * nodes).sum() / tot)
    sd = float(np.sqrt((a * (nodes - c) ** 2).sum() / tot))
    return c, sd


def star_norm_lower(mu: Measure, p, dictionary: Dictionary | None = None) -> float:
    """Lower bound ``max |int g^ dmu| / ||g||_p`` over the dictionary.

    With ``refine`` the best member is improved by golden-section search on
    each parameter; with ``combine > 1`` the top members are also mixed with
    optimized complex coefficients. Every candidate's norm is evaluated on a
    grid, so the bound stays honest under discretization.
    """
    d = dictionary or Dictionary()
    ep = ExponentPair.of(p)
    mu = normalize(mu)
    if is_zero(mu):
        return 0.0
    nodes, weights = discretize(mu, d.node_depth)
    if nodes.size == 0 or not np.any(weights):
        return 0.0
    hull = support_hull(mu)
    centre, sd = _spread(nodes, weights)
    width = max(2.5 * sd, 1e-3 * max(1.0, hull[1] - hull[0]), 1e-6)
    s0 = 1.0 / width
    # from the scale of the whole measure down to features 2^6 times finer
    dil = s0 * 2.0 ** np.linspace(-2, 6, d.dilations) if d.dilations > 1 else np.array([s0])
    trans = np.linspace(-2 * s0, 2 * s0, d.translations) if d.translations > 1 else np.zeros(1)
    mods = np.linspace(hull[0], hull[1], d.modulations) if d.modulations > 1 else np.array([centre])
    norms = {float(s): _member_norm(s, ep.p, d.norm_points) for s in dil}

    def pairing(s, b, w):
        return complex(np.sum(weights * _gaussian_hat(nodes, s, b, w)))

    scored = []
    for s in dil:
        ns = norms[float(s)]
        for b in trans:
            for w in mods:
                a = pairing(s, b, w)
                scored.append((abs(a) / ns, float(s), float(b), float(w)))
    scored.sort(key=lambda t: -t[0])
    best, s_b, b_b, w_b = scored[0]

    if d.refine:
        params = [math.log(s_b), b_b, w_b]
        spans = [math.log(2.0), 2 * s0 / max(d.translations - 1, 1) * 2, (hull[1] - hull[0]) / max(d.modulations - 1, 1) + width]

        def score(v):
            s = math.exp(v[0])
            return abs(pairing(s, v[1], v[2])) / _member_norm(s, ep.p, d.norm_points)

        for _ in range(2):
            for i in range(3):
                def neg(t, i=i):
                    v = list(params)
                    v[i] = t
                    return -score(v)

                lo, hi = params[i] - spans[i], params[i] + spans[i]
                r = minimize_scalar(neg, bounds=(lo, hi), method="bounded", options={"xatol": 1e-6 * (hi - lo)})
                if -r.fun > best:
                    best = -r.fun
                    params[i] = float(r.x)
        s_b, b_b, w_b = math.exp(params[0]), params[1], params[2]
        scored.insert(0, (best, s_b, b_b, w_b))

    if d.combine > 1:
        chosen = _greedy_members(scored, pairing, d.combine)
        best = max(best, _combined_lower_bound(chosen, pairing, ep.p, d.norm_points))
        if math.isfinite(ep.p_prime) and ep.p_prime != 2:
            # the extremal |mu^|^(p'-2) conj(mu^) narrows each Gaussian bump by
            # sqrt(p' - 1) and mixes modulations into harmonics 2 w_i - w_j
            f = 1.0 / math.sqrt(ep.p_prime - 1)
            adapted = [(sc, s * f, b, w) for sc, s, b, w in chosen]
            lead = adapted[:4]
            harmonics = [(0.0, si, bi, 2 * wi - wj)
                         for i, (_, si, bi, wi) in enumerate(lead)
                         for j, (_, _, _, wj) in enumerate(lead) if i != j]
            best = max(best, _combined_lower_bound(adapted + harmonics, pairing, ep.p, d.norm_points))
    return float(best)


def _member_gram(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """``int g_Q conj(g_P)`` for members given as rows ``(s, b, w)``, in closed form."""
    s1, b1, w1 = (P[:, i][:, None] for i in range(3))
    s2, b2, w2 = (Q[:, i][None, :] for i in range(3))
    A = 1 / s1**2 + 1 / s2**2
    B = b1 / s1**2 + b2 / s2**2
    C = b1**2 / s1**2 + b2**2 / s2**2
    z = B + 1j * (w2 - w1)
    return np.exp(np.pi * z**2 / A - np.pi * C) / np.sqrt(A)


def _greedy_members(scored, pairing, k: int):
    """Forward selection maximizing the L^2 value ``u^H M^-1 u`` of the span."""
    P = np.array([t[1:] for t in scored], dtype=float)
    u = np.conj(np.array([pairing(*t) for t in P]))
    diag = np.sqrt(P[:, 0] / np.sqrt(2.0))
    chosen: list[int] = []
    for _ in range(min(k, len(P))):
        if chosen:
            S = P[chosen]
            MS = _member_gram(S, S)
            MkS = _member_gram(P, S)
            sol = np.linalg.lstsq(MS, np.stack([u[chosen], *MkS.conj()], axis=1), rcond=1e-12)[0]
            proj_u = MkS @ sol[:, 0]
            resid = u - proj_u
            # Schur complement of the Gram matrix for each candidate
            quad = np.einsum("ij,ji->i", MkS, sol[:, 1:])
            schur = np.maximum(diag**2 - quad.real, 0.0)
        else:
            resid, schur = u, diag**2
        gain = np.where(schur > 1e-10 * diag**2, np.abs(resid) ** 2 / np.maximum(schur, 1e-300), 0.0)
        gain[chosen] = 0.0
        j = int(np.argmax(gain))
        if gain[j] <= 0:
            break
        chosen.append(j)
    return [scored[j] for j in chosen] or scored[:1]


def _combined_lower_bound(members, pairing, p: float, npts: int, irls_steps: int = 40,
                          powell_limit: int = 8) -> float:
    """Best ratio ``|sum c_k a_k| / ||sum c_k g_k||_p`` over complex coefficients.

    Starts from the L^2 optimum, then iteratively reweighted least squares for
    the L^p stationarity condition, then (for small sets) Powell. Each
    candidate's ratio is evaluated directly, so the result is a valid bound
    whether or not the iterations converge.
    """
    params = [(s, b, w) for _, s, b, w in members]
    a = np.array([pairing(*t) for t in params])
    lo = min(b - 6 * s for s, b, _ in params)
    hi = max(b + 6 * s for s, b, _ in params)
    step = min(min(s for s, _, _ in params) / 16, 1.0 / (16 * max(1e-12, max(abs(w) for _, _, w in params))))
    n = int(min(max((hi - lo) / step, npts), 1 << 17))
    spec = GridSpec.linspace(lo, hi, n)
    y = spec.points
    G = np.array([_gaussian(y, *t) for t in params])
    u = a.conj()

    def ratio(c: np.ndarray) -> float:
        num = abs(np.dot(c, a))
        den = lp_norm(GridFunction.on(spec, c @ G), p)
        return num / den if den > 0 else 0.0

    def solve(weights: np.ndarray) -> np.ndarray:
        M = (G.conj() * weights) @ G.T * spec.step
        return np.linalg.lstsq(M, u, rcond=1e-12)[0]

    c = solve(np.ones(n))
    best_c, best = c, ratio(c)
    if math.isfinite(p) and p != 2:
        for _ in range(irls_steps):
            g = np.abs(c @ G)
            eps = 1e-6 * g.max()
            c_new = solve((g * g + eps * eps) ** ((p - 2) / 2))
            r = ratio(c_new)
            if r > best * (1 + 1e-12):
                best_c, best = c_new, r
            elif r <= best:
                break
            c = c_new
    k = len(params)
    if k <= powell_limit:
        def neg(v):
            return -ratio(v[:k] + 1j * v[k:])

        r = minimize(neg, np.concatenate([best_c.real, best_c.imag]), method="Powell",
                     options={"maxiter": 2000, "xtol": 1e-6})
        best = max(best, -r.fun)
    return best


# -- O_p and V_p* -----------------------------------------------------------

@dataclass(frozen=True)
class LogGrid:
    x_min: float = 1e-3
    x_max: float = 1e3
    points: int = 200

    @property
    def x(self) -> np.ndarray:
        return np.geomspace(self.x_min, self.x_max, self.points)

    def weights(self) -> np.ndarray:
        """Trapezoid weights for ``int F(x) dx`` written as ``int F(x) x d(log x)``."""
        x = self.x
        u = np.log(x)
        w = np.zeros(x.size)
        du = np.diff(u)
        w[:-1] += 0.5 * du
        w[1:] += 0.5 * du
        return w * x


def _block_values(g: GridFunction, x: np.ndarray, p: float) -> np.ndarray:
    """Per-block power means ``(x^-1 int_x^{2x} |g|^p)^(1/p)`` (sup for p = inf).

    The inner rule uses the grid nodes inside ``(x, 2x)`` plus the two
    interpolated endpoints with trapezoid weights; the weights are positive and
    sum to ``x`` exactly, so the power means are monotone in p.
    """
    t = g.x
    a = np.abs(g.values)
    ax = np.abs(g(x))
    a2x = np.abs(g(2 * x))
    lo = np.searchsorted(t, x, side="right")
    hi = np.searchsorted(t, 2 * x, side="left") - 1
    out = np.empty(x.size)
    if math.isinf(p):
        for i in range(x.size):
            m = max(ax[i], a2x[i])
            if hi[i] >= lo[i]:
                m = max(m, a[lo[i]:hi[i] + 1].max())
            out[i] = m
        return out
    v = a**p
    cum = np.concatenate(([0.0], np.cumsum(0.5 * (v[1:] + v[:-1]) * np.diff(t))))
    vx, v2x = ax**p, a2x**p
    for i in range(x.size):
        if hi[i] >= lo[i]:
            integral = (
                cum[hi[i]] - cum[lo[i]]
                + 0.5 * (t[lo[i]] - x[i]) * (vx[i] + v[lo[i]])
                + 0.5 * (2 * x[i] - t[hi[i]]) * (v[hi[i]] + v2x[i])
            )
        else:
            integral = 0.5 * x[i] * (vx[i] + v2x[i])
        out[i] = (integral / x[i]) ** (1.0 / p)
    return out


def op_norm(g: GridFunction, p, xrange: LogGrid | None = None) -> float:
    """``||g||_{O_p} = int_0^inf (x^-1 int_x^{2x} |g|^p)^(1/p) dx`` on a geometric grid."""
    ep = ExponentPair.of(p)
    if ep.p == 1:
        raise PreconditionError("O_p is defined for p in (1, inf]")
    lg = xrange or LogGrid()
    x = lg.x
    return float(np.dot(lg.weights(), _block_values(g, x, ep.p)))


@dataclass
class BlockNorms:
    x: np.ndarray
    values: np.ndarray
    results: list[NormResult]


def block_star_norms(mu: Measure, p, xrange: LogGrid | None = None, config: NormConfig | None = None) -> BlockNorms:
    """``||chi_(x,2x) mu||*_p`` for every x of the log grid."""
    lg = xrange or LogGrid()
    x = lg.x
    hull = support_hull(mu)
    vals = np.zeros(x.size)
    results = []
    for i, xi in enumerate(x):
        if hull is None or 2 * xi <= hull[0] or xi > hull[1]:
            results.append(NormResult(0.0, "duality", diagnostics={"empty_block": True}))
            continue
        r = star_norm(restrict(mu, SetOfIntervals.interval(xi, 2 * xi)), p, config)
        results.append(r)
        vals[i] = r.value
    return BlockNorms(x, vals, results)


def vp_star_norm(f, p, xrange: LogGrid | None = None, config: NormConfig | None = None) -> NormResult:
    """``||f||_{V_p*} = int_0^inf x^(-1/p) ||chi_(x,2x) mu_f||*_p dx``.

    ``f`` is a BV function (anything with ``derivative_measure``) or directly
    its derivative measure. A divergent block makes the whole norm infinite.
    """
    ep = ExponentPair.of(p)
    if ep.p == 1:
        raise PreconditionError("V_p* is defined for p in (1, inf]")
    mu = getattr(f, "derivative_measure", f)
    lg = xrange or LogGrid()
    blocks = block_star_norms(mu, ep, lg, config)
    divergent = [float(x) for x, r in zip(blocks.x, blocks.results) if r.divergence_flag]
    diagnostics: dict[str, Any] = {
        "log_grid": [lg.x_min, lg.x_max, lg.points],
        "divergent_blocks": divergent,
        "nonempty_blocks": int(sum(1 for r in blocks.results if not r.diagnostics.get("empty_block"))),
    }
    if divergent:
        diagnostics["first_divergent_block"] = divergent[0]
        return NormResult(math.inf, "quadrature", True, None, diagnostics)
    integrand = blocks.x ** (-1.0 / ep.p) * blocks.values
    value = float(np.dot(lg.weights(), integrand))
    return NormResult(value, "quadrature", False, None, diagnostics)
