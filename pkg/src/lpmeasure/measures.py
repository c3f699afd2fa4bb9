"""Measures on the real line and the basic operations on them.

Four variants are supported: finitely many atoms, a density sampled on a
uniform grid, a self-similar measure generated by an iterated function system
of similitudes ``x -> ratio*x + t_i`` chosen with probabilities ``weights``,
and finite linear combinations of these.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.signal import fftconvolve

from .errors import DivergenceError, DomainError, PreconditionError
from .grid import GridFunction, GridSpec, SetOfIntervals, trapezoid

log = logging.getLogger(__name__)

DEFAULT_DEPTH = 18
# largest number of atoms materialized from a self-similar measure
MAX_IFS_ATOMS = 1 << 20
# resampling floor for a density restricted to a short interval
MIN_PIECE_POINTS = 64


class _Algebra:
    """Scalar multiplication and addition, shared by every variant."""

    def __mul__(self, c):
        return scale(self, c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return scale(self, 1.0 / c)

    def __neg__(self):
        return scale(self, -1.0)

    def __add__(self, other):
        return Sum(((1.0, self), (1.0, other)))

    def __sub__(self, other):
        return Sum(((1.0, self), (-1.0, other)))


@dataclass(frozen=True, eq=False)
class Atomic(_Algebra):
    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pos = np.atleast_1d(np.asarray(self.positions, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=complex))
        if pos.shape != w.shape or pos.ndim != 1:
            raise PreconditionError("positions and weights must be matching 1-d arrays")
        if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(w))):
            raise PreconditionError("atoms must have finite positions and weights")
        pos.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return self.positions.size

    def __repr__(self):
        atoms = ", ".join(f"({p:g}, {w:g})" for p, w in zip(self.positions, self.weights))
        return f"Atomic[{atoms}]"


@dataclass(frozen=True, eq=False)
class Density(_Algebra):
    """``dmu = g dx`` with ``g`` the piecewise-linear interpolant of the samples."""

    grid: GridFunction

    def __repr__(self):
        g = self.grid
        return f"Density([{g.start:g}, {g.stop:g}], n={g.n})"


@dataclass(frozen=True)
class SelfSimilar(_Algebra):
    ratio: float
    translations: tuple[float, ...]
    weights: tuple[float, ...]
    window: tuple[float, float] | None = None
    restriction: SetOfIntervals | None = None
    depth: int = DEFAULT_DEPTH
    coefficient: complex = 1.0

    def __post_init__(self):
        r = float(self.ratio)
        t = tuple(float(v) for v in self.translations)
        w = tuple(float(v) for v in self.weights)
        if not 0 < r < 1:
            raise PreconditionError("contraction ratio must lie in (0, 1)")
        if len(t) != len(w) or not t:
            raise PreconditionError("need one weight per translation")
        if min(w) < 0 or abs(sum(w) - 1.0) > 1e-12:
            raise PreconditionError("self-similar weights must be nonnegative and sum to 1")
        hull = (min(t) / (1 - r), max(t) / (1 - r))
        if self.window is None:
            window = hull
        else:
            window = (float(self.window[0]), float(self.window[1]))
            if window[0] > hull[0] + 1e-12 or window[1] < hull[1] - 1e-12:
                raise PreconditionError(f"window {window} does not contain the attractor {hull}")
        if self.depth < 1:
            raise PreconditionError("recursion depth must be >= 1")
        object.__setattr__(self, "ratio", r)
        object.__setattr__(self, "translations", t)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "coefficient", complex(self.coefficient))

    @property
    def mass_center(self) -> float:
        return sum(wi * ti for wi, ti in zip(self.weights, self.translations)) / (1 - self.ratio)

    @property
    def diameter(self) -> float:
        return self.window[1] - self.window[0]

    @property
    def is_middle_thirds_cantor(self) -> bool:
        return (
            abs(self.ratio - 1 / 3) < 1e-15
            and self.translations == (0.0, 2 / 3)
            and self.weights == (0.5, 0.5)
        )

    def __repr__(self):
        name = "Cantor" if self.is_middle_thirds_cantor else f"SelfSimilar(r={self.ratio:g}, t={self.translations})"
        if self.coefficient != 1:
            name = f"{self.coefficient:g}*{name}"
        if self.restriction is not None:
            name += f"|{list(self.restriction.intervals)}"
        return name


@dataclass(frozen=True)
class Sum(_Algebra):
    terms: tuple[tuple[complex, "Measure"], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((complex(c), m) for c, m in self.terms))

    def __repr__(self):
        return " + ".join(f"{c:g}*{m!r}" for c, m in self.terms) or "0"


Measure = Union[Atomic, Density, SelfSimilar, Sum]
TestFunction = Union[GridFunction, Callable[[np.ndarray], np.ndarray]]


# -- constructors -----------------------------------------------------------

def zero() -> Atomic:
    return Atomic(np.zeros(0), np.zeros(0))


def delta(a: float = 0.0, weight: complex = 1.0) -> Atomic:
    return Atomic([a], [weight])


def atoms(pairs) -> Atomic:
    pairs = list(pairs)
    if not pairs:
        return zero()
    pos, w = zip(*pairs)
    return Atomic(pos, w)


def cantor(depth: int = DEFAULT_DEPTH) -> SelfSimilar:
    """The middle-thirds Cantor probability measure on [0, 1]."""
    return SelfSimilar(1 / 3, (0.0, 2 / 3), (0.5, 0.5), (0.0, 1.0), depth=depth)


def density(fn: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int = 4096) -> Density:
    return Density(GridFunction.from_callable(fn, a, b, n))


def gaussian_density(center: float = 0.0, scale_: float = 1.0, half_width: float = 8.0, n: int = 4096) -> Density:
    """``exp(-pi ((x - center)/scale)^2) dx`` sampled on ``center +- half_width*scale``."""
    a = center - half_width * scale_
    b = center + half_width * scale_
    return density(lambda x: np.exp(-np.pi * ((x - center) / scale_) ** 2), a, b, n)


def lebesgue(a: float, b: float, points_per_unit: int = 256) -> Density:
    """Lebesgue measure restricted to [a, b]."""
    n = max(int(math.ceil((b - a) * points_per_unit)) + 1, 2)
    return density(np.ones_like, a, b, n)


# -- canonical form ---------------------------------------------------------

def scale(mu: Measure, c: complex) -> Measure:
    c = complex(c)
    if isinstance(mu, Atomic):
        return Atomic(mu.positions, mu.weights * c)
    if isinstance(mu, Density):
        return Density(mu.grid.with_values(mu.grid.values * c))
    if isinstance(mu, SelfSimilar):
        return _replace(mu, coefficient=mu.coefficient * c)
    if isinstance(mu, Sum):
        return Sum(tuple((c * ci, m) for ci, m in mu.terms))
    raise TypeError(f"not a measure: {mu!r}")


def dilate(mu: Measure, c: float) -> Measure:
    """Push-forward under ``x -> c x`` for ``c > 0``: ``int h d(D_c mu) = int h(c x) dmu``."""
    c = float(c)
    if not c > 0:
        raise PreconditionError("dilation factor must be positive")
    if isinstance(mu, Atomic):
        return Atomic(mu.positions * c, mu.weights)
    if isinstance(mu, Density):
        g = mu.grid
        return Density(GridFunction(g.start * c, g.step * c, g.values / c))
    if isinstance(mu, SelfSimilar):
        E = mu.restriction
        if E is not None:
            E = SetOfIntervals(tuple((a * c, b * c) for a, b in E.intervals))
        return _replace(
            mu, translations=tuple(t * c for t in mu.translations),
            window=(mu.window[0] * c, mu.window[1] * c), restriction=E,
        )
    if isinstance(mu, Sum):
        return Sum(tuple((ci, dilate(m, c)) for ci, m in mu.terms))
    raise TypeError(f"not a measure: {mu!r}")


def _replace(ss: SelfSimilar, **changes) -> SelfSimilar:
    fields = dict(
        ratio=ss.ratio, translations=ss.translations, weights=ss.weights, window=ss.window,
        restriction=ss.restriction, depth=ss.depth, coefficient=ss.coefficient,
    )
    fields.update(changes)
    return SelfSimilar(**fields)


def primitives(mu: Measure) -> list[Measure]:
    """Flatten nested sums into a list of coefficient-free primitive measures."""
    out: list[Measure] = []

    def walk(m, c):
        if isinstance(m, Sum):
            for ci, mi in m.terms:
                walk(mi, c * ci)
        elif c != 0:
            out.append(m if c == 1 else scale(m, c))

    walk(mu, 1.0 + 0j)
    return out


def normalize(mu: Measure) -> Measure:
    """Flatten sums, merge like atoms and drop zero terms.

    The result is a single primitive or a ``Sum`` whose coefficients are all 1;
    applying ``normalize`` twice gives the same structure.
    """
    atomic_pos, atomic_w, rest = [], [], []
    for m in primitives(mu):
        if isinstance(m, Atomic):
            atomic_pos.append(m.positions)
            atomic_w.append(m.weights)
        elif isinstance(m, Density):
            if np.any(m.grid.values != 0):
                rest.append(m)
        elif isinstance(m, SelfSimilar):
            if m.coefficient != 0 and not (m.restriction is not None and m.restriction.is_empty):
                rest.append(m)
    parts: list[Measure] = []
    if atomic_pos:
        pos = np.concatenate(atomic_pos)
        w = np.concatenate(atomic_w)
        uniq, inv = np.unique(pos, return_inverse=True)
        merged = np.zeros(uniq.size, dtype=complex)
        np.add.at(merged, inv, w)
        keep = merged != 0
        if np.any(keep):
            parts.append(Atomic(uniq[keep], merged[keep]))
    parts.extend(rest)
    if not parts:
        return zero()
    if len(parts) == 1:
        return parts[0]
    return Sum(tuple((1.0, m) for m in parts))


def is_zero(mu: Measure) -> bool:
    m = normalize(mu)
    return isinstance(m, Atomic) and len(m) == 0


# -- support ----------------------------------------------------------------

def support_hull(mu: Measure) -> tuple[float, float] | None:
    """Smallest closed interval containing the effective support, or None."""
    lo, hi = math.inf, -math.inf
    for m in primitives(normalize(mu)):
        if isinstance(m, Atomic):
            if len(m):
                lo, hi = min(lo, m.positions.min()), max(hi, m.positions.max())
        elif isinstance(m, Density):
            nz = np.nonzero(m.grid.values)[0]
            if nz.size:
                x = m.grid.x
                lo = min(lo, x[max(nz[0] - 1, 0)])
                hi = max(hi, x[min(nz[-1] + 1, m.grid.n - 1)])
        elif isinstance(m, SelfSimilar):
            a, b = m.window
            if m.restriction is not None:
                ra, rb = m.restriction.hull
                a, b = max(a, ra), min(b, rb)
            if a <= b:
                lo, hi = min(lo, a), max(hi, b)
    if lo > hi:
        return None
    return float(lo), float(hi)


# -- self-similar machinery -------------------------------------------------

def ifs_atoms(ss: SelfSimilar, depth: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Level-``depth`` approximation: one atom per cylinder at its mass centre.

    Restriction and coefficient are applied; atoms follow half-open membership.
    """
    k_max = ss.depth if depth is None else depth
    m = len(ss.translations)
    k_cap = int(math.floor(math.log(MAX_IFS_ATOMS) / math.log(m))) if m > 1 else k_max
    k = min(k_max, k_cap)
    if k < k_max:
        log.debug("ifs depth capped at %d (requested %d)", k, k_max)
    t = np.asarray(ss.translations)
    w = np.asarray(ss.weights)
    pos = np.zeros(1)
    wts = np.ones(1)
    r = ss.ratio
    for level in range(k):
        pos = (pos[:, None] + t[None, :] * r**level).ravel()
        wts = (wts[:, None] * w[None, :]).ravel()
    pos = pos + r**k * ss.mass_center
    if ss.restriction is not None:
        keep = ss.restriction.contains(pos)
        pos, wts = pos[keep], wts[keep]
    return pos, wts * ss.coefficient


@dataclass(frozen=True)
class CylinderCover:
    """A restricted self-similar measure split into whole scaled copies plus atoms.

    ``offsets[j] + scales[j] * (copy of the attractor)`` carries mass
    ``weights[j]``; cylinders still straddling the boundary at the depth limit
    are replaced by an atom at their mass centre (kept if the centre is inside).
    """

    offsets: np.ndarray
    scales: np.ndarray
    weights: np.ndarray
    atom_positions: np.ndarray
    atom_weights: np.ndarray
    straddle_mass: float


def cylinder_cover(ss: SelfSimilar, depth: int | None = None) -> CylinderCover:
    k_max = ss.depth if depth is None else depth
    E = ss.restriction
    lo0, hi0 = ss.window
    r = ss.ratio
    if E is None:
        return CylinderCover(np.zeros(1), np.ones(1), np.ones(1), np.zeros(0), np.zeros(0), 0.0)
    offs, scs, wts, apos, aw = [], [], [], [], []
    straddle = 0.0
    stack = [(0.0, 1.0, 1.0, 0)]
    while stack:
        a, s, w, level = stack.pop()
        lo, hi = a + s * lo0, a + s * hi0
        inside = any(c <= lo and hi < d for c, d in E.intervals)
        if inside:
            offs.append(a)
            scs.append(s)
            wts.append(w)
            continue
        if not any(c <= hi and d > lo for c, d in E.intervals):
            continue
        if level >= k_max:
            straddle += w
            centre = a + s * ss.mass_center
            if E.contains(centre):
                apos.append(centre)
                aw.append(w)
            continue
        for ti, wi in zip(ss.translations, ss.weights):
            if wi > 0:
                stack.append((a + s * ti, s * r, w * wi, level + 1))
    return CylinderCover(
        np.asarray(offs), np.asarray(scs), np.asarray(wts), np.asarray(apos), np.asarray(aw), straddle
    )


def cantor_function(t, depth: int = DEFAULT_DEPTH) -> np.ndarray:
    """Cantor staircase C(t) evaluated through the ternary expansion to ``depth`` digits."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    out = np.zeros(t.shape)
    x = t.copy()
    active = t < 1.0
    out[~active] = 1.0
    half = 0.5
    for _ in range(depth):
        x = 3.0 * x
        digit = np.floor(x)
        x -= digit
        hit_one = active & (digit == 1)
        out[hit_one] += half
        active &= ~hit_one
        out[active & (digit == 2)] += half
        half *= 0.5
    return out


# -- discretization -----------------------------------------------------------

def discretize(mu: Measure, depth: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and complex weights such that ``int h dmu ~ sum w_k h(x_k)``.

    Atoms are exact, densities use trapezoidal weights and self-similar parts
    use their level-``depth`` cylinder atoms.
    """
    nodes, weights = [np.zeros(0)], [np.zeros(0, dtype=complex)]
    for m in primitives(mu):
        if isinstance(m, Atomic):
            nodes.append(m.positions)
            weights.append(m.weights)
        elif isinstance(m, Density):
            nodes.append(m.grid.x)
            weights.append(m.grid.values * m.grid.trapezoid_weights())
        elif isinstance(m, SelfSimilar):
            p, w = ifs_atoms(m, depth)
            nodes.append(p)
            weights.append(w.astype(complex))
    return np.concatenate(nodes), np.concatenate(weights)


# -- operations -------------------------------------------------------------

def total_variation_bound(mu: Measure) -> tuple[float, bool]:
    """Total variation and whether the value is exact (False: upper bound)."""
    parts = primitives(normalize(mu))
    total = 0.0
    for m in parts:
        if isinstance(m, Atomic):
            total += float(np.abs(m.weights).sum())
        elif isinstance(m, Density):
            tv = float(trapezoid(np.abs(m.grid.values), m.grid.step))
            if not math.isfinite(tv):
                raise DivergenceError("density has divergent total variation")
            total += tv
        elif isinstance(m, SelfSimilar):
            if m.restriction is None:
                total += abs(m.coefficient)
            else:
                _, w = ifs_atoms(m)
                total += float(np.abs(w).sum())
    return total, len(parts) <= 1


def total_variation(mu: Measure) -> float:
    return total_variation_bound(mu)[0]


def total_mass(mu: Measure) -> complex:
    """``mu(R)``."""
    _, w = discretize(mu)
    return complex(w.sum())


def restrict(mu: Measure, E: SetOfIntervals) -> Measure:
    """``chi_E mu`` with half-open membership for atoms."""
    if isinstance(mu, Sum):
        return Sum(tuple((c, restrict(m, E)) for c, m in mu.terms))
    if isinstance(mu, Atomic):
        keep = E.contains(mu.positions)
        return Atomic(mu.positions[keep], mu.weights[keep])
    if isinstance(mu, SelfSimilar):
        new_set = E if mu.restriction is None else mu.restriction.intersect(E)
        return _replace(mu, restriction=new_set)
    if isinstance(mu, Density):
        return _restrict_density(mu, E)
    raise TypeError(f"not a measure: {mu!r}")


def _restrict_density(mu: Density, E: SetOfIntervals) -> Measure:
    g = mu.grid
    pieces = []
    for a, b in E.clip(g.start, g.stop):
        n = max(int(math.ceil((b - a) / g.step - 1e-9)) + 1, MIN_PIECE_POINTS)
        spec = GridSpec.linspace(a, b, n)
        inner = np.clip(spec.points, g.start, g.stop)
        pieces.append(Density(GridFunction.on(spec, g(inner))))
    if not pieces:
        return zero()
    if len(pieces) == 1:
        return pieces[0]
    return Sum(tuple((1.0, p) for p in pieces))


def _as_callable(h: TestFunction) -> Callable[[np.ndarray], np.ndarray]:
    return h if callable(h) and not isinstance(h, GridFunction) else h.__call__


def _check_cover(h: TestFunction, mu: Measure, what: str):
    if not isinstance(h, GridFunction):
        return
    hull = support_hull(mu)
    if hull is None:
        return
    slack = 1e-9 * max(1.0, abs(h.start), abs(h.stop))
    if hull[0] < h.start - slack or hull[1] > h.stop + slack:
        raise DomainError(
            f"{what}: grid [{h.start:g}, {h.stop:g}] does not cover support [{hull[0]:g}, {hull[1]:g}]"
        )


def integrate(h: TestFunction, mu: Measure, depth: int | None = None) -> complex:
    """``int h dmu``; ``h`` is a grid function (linearly interpolated) or a callable."""
    _check_cover(h, mu, "integrate")
    fn = _as_callable(h)
    total = 0j
    for m in primitives(mu):
        if isinstance(m, Density):
            vals = fn(m.grid.x) * m.grid.values
            total += trapezoid(vals, m.grid.step)
        else:
            x, w = discretize(m, depth)
            if x.size:
                total += complex(np.sum(w * fn(x)))
    return complex(total)


def ifs_integration_error(h: GridFunction | None, ss: SelfSimilar, lipschitz: float | None = None) -> float:
    """Bound on the depth-K truncation error of ``integrate`` for a self-similar part."""
    if lipschitz is None:
        if h is None:
            raise PreconditionError("need a grid function or a Lipschitz constant")
        lipschitz = float(np.max(np.abs(np.diff(h.values))) / h.step) if h.n > 1 else 0.0
    return abs(ss.coefficient) * lipschitz * ss.ratio**ss.depth * ss.diameter


def scale_product(f: TestFunction, mu: Measure, depth: int = 12) -> Measure:
    """The measure ``f mu`` with ``(f mu)(F) = int_F f dmu``.

    Self-similar parts are materialized as level-``depth`` atoms.
    """
    _check_cover(f, mu, "scale_product")
    fn = _as_callable(f)
    if isinstance(mu, Sum):
        return Sum(tuple((c, scale_product(f, m, depth)) for c, m in mu.terms))
    if isinstance(mu, Atomic):
        return Atomic(mu.positions, mu.weights * fn(mu.positions))
    if isinstance(mu, Density):
        x = mu.grid.x
        if isinstance(f, GridFunction) and f.n >= 4:
            # linear interpolation kinks would put spectral images of f^ at multiples of 1/f.step
            inside = (x >= f.start) & (x <= f.stop)
            vals = np.zeros(x.size, dtype=complex)
            vals[inside] = CubicSpline(f.x, f.values)(x[inside])
        else:
            vals = fn(x)
        return Density(mu.grid.with_values(mu.grid.values * vals))
    if isinstance(mu, SelfSimilar):
        pos, w = ifs_atoms(mu, min(depth, mu.depth))
        vals = w * fn(pos)
        keep = vals != 0
        return Atomic(pos[keep], vals[keep])
    raise TypeError(f"not a measure: {mu!r}")


DIRECT_CONVOLUTION_ATOMS = 64


def convolve(f: GridFunction, mu: Measure, edge_tol: float = 1e-8, depth: int = 14) -> GridFunction:
    """Samples of ``(f*mu)(x) = int f(x - y) dmu(y)`` on a grid with f's step.

    The output grid extends f's window by the support hull of ``mu``.
    """
    if f.edge_magnitude() > edge_tol * max(1.0, float(np.max(np.abs(f.values)))):
        log.warning("convolve: f does not decay at its window edges (|f| = %.3g)", f.edge_magnitude())
    hull = support_hull(mu)
    if hull is None:
        return f.with_values(np.zeros(f.n))
    h = f.step
    k_lo = int(math.floor(hull[0] / h))
    k_hi = int(math.ceil(hull[1] / h))
    out_spec = GridSpec(f.start + k_lo * h, h, f.n + (k_hi - k_lo))
    x = out_spec.points
    out = np.zeros(out_spec.n, dtype=complex)
    for m in primitives(mu):
        if isinstance(m, Atomic) and len(m) <= DIRECT_CONVOLUTION_ATOMS:
            for p, w in zip(m.positions, m.weights):
                out += w * f(x - p)
            continue
        if isinstance(m, Density):
            step_ratio = m.grid.step / h
            if abs(step_ratio - round(step_ratio)) < 1e-9 and round(step_ratio) == 1:
                src_x, src_w = m.grid.x, m.grid.values * m.grid.trapezoid_weights()
            else:
                # resample onto f's step so the convolution is a discrete one
                n = int(math.ceil((m.grid.stop - m.grid.start) / h)) + 1
                spec = GridSpec(m.grid.start, h, n)
                g = GridFunction.on(spec, m.grid(spec.points))
                src_x, src_w = g.x, g.values * g.trapezoid_weights()
        else:
            src_x, src_w = discretize(m, depth)
        out += _binned_convolution(f, src_x, src_w, out_spec)
    return GridFunction.on(out_spec, out)


def _binned_convolution(f: GridFunction, nodes, weights, out_spec: GridSpec) -> np.ndarray:
    """Convolve f with atoms after linear binning onto the grid ``k*h``."""
    h = f.step
    if nodes.size == 0:
        return np.zeros(out_spec.n, dtype=complex)
    u = nodes / h
    k0 = np.floor(u).astype(np.int64)
    frac = u - k0
    base = int(k0.min())
    size = int(k0.max()) - base + 2
    bins = np.zeros(size, dtype=complex)
    np.add.at(bins, k0 - base, weights * (1 - frac))
    np.add.at(bins, k0 - base + 1, weights * frac)
    full = fftconvolve(f.values, bins)
    # full[j] sits at f.start + (base + j)*h
    offset = int(round((f.start + base * h - out_spec.start) / h))
    out = np.zeros(out_spec.n, dtype=complex)
    lo = max(offset, 0)
    hi = min(offset + full.size, out_spec.n)
    if hi > lo:
        out[lo:hi] = full[lo - offset:hi - offset]
    return out


def tail_mass(mu: Measure, t) -> np.ndarray:
    """``mu((t, inf))`` for each entry of ``t``."""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=complex)
    for m in primitives(mu):
        if isinstance(m, Density):
            g = m.grid
            cum = np.concatenate(([0.0], np.cumsum(0.5 * (g.values[1:] + g.values[:-1]) * g.step)))
            total = cum[-1]
            tc = np.clip(t, g.start, g.stop)
            # exact integral of the linear interpolant up to tc
            k = np.clip(((tc - g.start) / g.step).astype(np.int64), 0, max(g.n - 2, 0))
            xk = g.start + k * g.step
            gk = g.values[k]
            gt = g(tc)
            below = cum[k] + 0.5 * (gk + gt) * (tc - xk)
            out += total - below
        elif isinstance(m, SelfSimilar) and m.is_middle_thirds_cantor and m.restriction is None:
            # uses the staircase: mu((t, inf)) = 1 - C(t) for the atomless Cantor measure
            out += m.coefficient * (1.0 - cantor_function(t, m.depth))
        else:
            x, w = discretize(m)
            order = np.argsort(x)
            xs, ws = x[order], w[order]
            suffix = np.concatenate((np.cumsum(ws[::-1])[::-1], [0.0]))
            idx = np.searchsorted(xs, t, side="right")
            out += suffix[idx]
    return out
