"""Fourier transforms of grid functions and Fourier-Stieltjes transforms of measures.

Forward convention: ``F(y) = int f(x) exp(-2 pi i x y) dx``. The inverse uses
the opposite sign.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import CZT

from .errors import DivergenceError
from .grid import GridFunction, GridSpec
from .measures import (
    Atomic,
    Density,
    Measure,
    SelfSimilar,
    cylinder_cover,
    primitives,
    total_variation,
)

METHOD_RANK = {"closed-form": 0, "ifs-product": 1, "quadrature": 2}
# n*m above which the chirp-z fast path replaces direct summation
CZT_THRESHOLD = 1 << 22
_CHUNK = 1 << 22


@dataclass(frozen=True)
class TransformResult:
    grid: GridFunction
    method: str
    certified_error: float

    @property
    def y(self) -> np.ndarray:
        return self.grid.x

    @property
    def values(self) -> np.ndarray:
        return self.grid.values

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["y", "re", "im", "abs"])
        for y, v in zip(self.y, self.values):
            w.writerow([repr(float(y)), repr(float(v.real)), repr(float(v.imag)), repr(float(abs(v)))])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "certified_error": self.certified_error,
            "y": {"start": self.grid.start, "step": self.grid.step, "n": self.grid.n},
            "re": self.values.real.tolist(),
            "im": self.values.imag.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _exp_sum(nodes: np.ndarray, weights: np.ndarray, y: np.ndarray) -> np.ndarray:
    """``sum_k weights[k] exp(-2 pi i nodes[k] y)`` evaluated for every y, chunked."""
    out = np.zeros(y.size, dtype=complex)
    if nodes.size == 0:
        return out
    rows = max(1, _CHUNK // max(nodes.size, 1))
    for s in range(0, y.size, rows):
        ys = y[s:s + rows]
        out[s:s + rows] = np.exp(-2j * np.pi * np.outer(ys, nodes)) @ weights
    return out


def _uniform_exp_sum(start: float, step: float, coeffs: np.ndarray, spec: GridSpec) -> np.ndarray:
    """Same sum for nodes ``start + k*step`` on a uniform y grid, via chirp-z."""
    n, m = coeffs.size, spec.n
    if n * m <= CZT_THRESHOLD:
        return _exp_sum(start + step * np.arange(n), coeffs, spec.points)
    y = spec.points
    a = np.exp(2j * np.pi * step * spec.start)
    w = np.exp(-2j * np.pi * step * spec.step)
    # chirp-z error grows with the block length (about 1.5e-10 per unit mass at 1024)
    block = min(1024, n)
    nb = -(-n // block)
    padded = np.zeros(nb * block, dtype=complex)
    padded[:n] = coeffs
    blocks = padded.reshape(nb, block)
    used = np.flatnonzero(np.any(blocks != 0, axis=1))
    plan = CZT(block, m, w, a)
    out = np.zeros(m, dtype=complex)
    for g in range(0, used.size, 32):
        rows = used[g:g + 32]
        spectra = plan(blocks[rows], axis=-1)
        x0 = start + rows * block * step
        out += np.einsum("bm,bm->m", np.exp(-2j * np.pi * np.outer(x0, y)), spectra)
    return out


def _endpoint_correction(f: GridFunction, y: np.ndarray) -> np.ndarray:
    """Term that makes the trapezoid transform exact for constant pieces.

    On a constant piece the trapezoid sum equals the exact transform times
    ``(t/2) cot(t/2)``, ``t = 2 pi h y``; adding
    ``(f_0 e^(-i w x_0) - f_N e^(-i w x_N)) (1 - (t/2) cot(t/2)) / (i w)``
    removes that error for the jumps at the grid ends. Densities that vanish
    at their ends are unaffected. Applied up to the Nyquist frequency only.
    """
    f0, fN = f.values[0], f.values[-1]
    out = np.zeros(y.shape, dtype=complex)
    if f0 == 0 and fN == 0:
        return out
    h = f.step
    t = 2 * np.pi * h * y
    ok = np.abs(t) <= np.pi * (1 + 1e-12)
    tt = t[ok]
    small = np.abs(tt) < 1e-2
    # kappa / t with kappa = 1 - (t/2) cot(t/2)
    ratio = np.empty(tt.shape)
    ts = tt[small]
    ratio[small] = ts / 12 + ts**3 / 720 + ts**5 / 30240
    tb = tt[~small]
    ratio[~small] = (1 - 0.5 * tb / np.tan(0.5 * tb)) / tb
    w = 2 * np.pi * y[ok]
    ends = f0 * np.exp(-1j * w * f.start) - fN * np.exp(-1j * w * f.stop)
    out[ok] = -1j * h * ratio * ends
    return out


def _density_coefficients(f: GridFunction) -> np.ndarray:
    return f.values * f.trapezoid_weights()


# longest lattice an atomic sum is scattered onto before falling back to direct sums
MAX_LATTICE = 1 << 22


def _lattice(positions: np.ndarray) -> tuple[float, float, np.ndarray] | None:
    """``(anchor, step, member mask)`` for the atoms that share a uniform lattice.

    The step is the most common gap, refined over the span of the members.
    Atoms off the lattice (a few stray atoms merged with an IFS level) are left
    for direct summation.
    """
    if positions.size < 64:
        return None
    x = np.sort(positions)
    diffs = np.diff(x)
    scale = float(diffs.max())
    if not scale > 1e-12 * max(1.0, float(np.abs(x).max())):
        return None
    q = np.round(diffs / scale * 2.0**36)
    nonzero = q > 0
    vals, counts = np.unique(q[nonzero], return_counts=True)
    mode = vals[np.argmax(counts)]
    at_mode = q == mode
    step = float(diffs[at_mode].mean())
    anchor = float(x[np.flatnonzero(at_mode)[0]])
    for _ in range(2):
        k = (positions - anchor) / step
        member = np.abs(k - np.round(k)) < 1e-6
        if member.sum() < 64:
            return None
        lo, hi = positions[member].min(), positions[member].max()
        step = float((hi - lo) / round((hi - lo) / step))
        anchor = float(lo)
    k = (positions - anchor) / step
    member = np.abs(k - np.round(k)) < 1e-6
    if member.sum() < 0.5 * positions.size or np.round(k[member]).max() >= MAX_LATTICE:
        return None
    return anchor, step, member


def _atomic_sum(positions: np.ndarray, weights: np.ndarray, spec: GridSpec) -> np.ndarray:
    """Atomic transform on a uniform grid, through chirp-z for atoms on a lattice."""
    lat = _lattice(positions) if positions.size * spec.n > CZT_THRESHOLD else None
    if lat is None:
        return _exp_sum(positions, weights, spec.points)
    anchor, step, member = lat
    idx = np.round((positions[member] - anchor) / step).astype(np.int64)
    coeffs = np.zeros(int(idx.max()) + 1, dtype=complex)
    np.add.at(coeffs, idx, weights[member])
    out = _uniform_exp_sum(anchor, step, coeffs, spec)
    if not member.all():
        out += _exp_sum(positions[~member], weights[~member], spec.points)
    return out


def fourier_function(f: GridFunction, ygrid: GridSpec, tail_fraction: float = 0.1) -> TransformResult:
    """Trapezoidal samples of ``f^(y)`` with the continuous-transform scaling.

    Jumps at the grid ends are corrected exactly for constant pieces (see
    ``_endpoint_correction``). The certified error is a tail estimate: the
    integral of ``|f|`` over the outer ``tail_fraction`` of the window on
    each side.
    """
    coeffs = _density_coefficients(f)
    vals = _uniform_exp_sum(f.start, f.step, coeffs, ygrid) + _endpoint_correction(f, ygrid.points)
    k = max(1, int(round(tail_fraction * f.n)))
    tail = float(np.sum(np.abs(coeffs[:k])) + np.sum(np.abs(coeffs[-k:]))) if f.n > 2 * k else 0.0
    return TransformResult(GridFunction.on(ygrid, vals), "quadrature", tail)


def cantor_product(y, depth: int) -> tuple[np.ndarray, np.ndarray]:
    """``exp(-pi i y) prod_{k=1..depth} cos(2 pi y / 3^k)`` and a bound on the truncation error.

    The phase is exact: the discarded factors are replaced by a point mass at
    the centre of each level-``depth`` cylinder, so only the real product
    ``prod_{k>depth} cos`` is missing, and ``|1 - prod| <= (2 pi y)^2 3^(-2 depth)/4``.
    """
    y = np.asarray(y, dtype=float)
    prod = np.ones(y.shape)
    for k in range(1, depth + 1):
        prod *= np.cos(2 * np.pi * y / 3.0**k)
    value = np.exp(-1j * np.pi * y) * prod
    err = np.minimum((2 * np.pi * y) ** 2 * 3.0 ** (-2 * depth) / 4, 2.0) * np.abs(prod)
    return value, err


def _required_depth(ss: SelfSimilar, ymax: float, target: float = 1e-12) -> int:
    need = math.log(max(2 * math.pi * ymax * max(ss.diameter, 1e-300), 1e-300) / target) / math.log(1 / ss.ratio)
    return max(ss.depth, int(math.ceil(need)))


def self_similar_base_transform(ss: SelfSimilar, y: np.ndarray, depth: int | None = None) -> tuple[np.ndarray, float]:
    """Transform of the unrestricted, unit-mass attractor measure at ``y``."""
    y = np.asarray(y, dtype=float)
    ymax = float(np.max(np.abs(y))) if y.size else 0.0
    k = depth if depth is not None else _required_depth(ss, ymax)
    if ss.is_middle_thirds_cantor:
        val, err = cantor_product(y, k)
        return val, float(err.max()) if err.size else 0.0
    t = np.asarray(ss.translations)
    w = np.asarray(ss.weights)
    prod = np.ones(y.shape, dtype=complex)
    r = ss.ratio
    for level in range(k):
        prod *= np.exp(-2j * np.pi * np.multiply.outer(y * r**level, t)) @ w
    prod *= np.exp(-2j * np.pi * ss.mass_center * r**k * y)
    err = 2 * np.pi * r**k * ymax * ss.diameter
    return prod, float(min(err, 2.0))


def self_similar_transform(ss: SelfSimilar, y: np.ndarray) -> tuple[np.ndarray, float]:
    y = np.asarray(y, dtype=float)
    if ss.restriction is None:
        val, err = self_similar_base_transform(ss, y)
        return ss.coefficient * val, abs(ss.coefficient) * err
    cover = cylinder_cover(ss)
    out = np.zeros(y.shape, dtype=complex)
    err = cover.straddle_mass
    for a, s, w in zip(cover.offsets, cover.scales, cover.weights):
        base, e = self_similar_base_transform(ss, s * y)
        out += w * np.exp(-2j * np.pi * a * y) * base
        err += w * e
    if cover.atom_positions.size:
        out += _exp_sum(cover.atom_positions, cover.atom_weights.astype(complex), y)
    return ss.coefficient * out, abs(ss.coefficient) * err


def fourier_stieltjes_at(mu: Measure, y) -> np.ndarray:
    """``mu^`` at arbitrary frequencies; densities as in ``fourier_function``."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    out = np.zeros(y.size, dtype=complex)
    for m in primitives(mu):
        if isinstance(m, Atomic):
            out += _exp_sum(m.positions, m.weights, y)
        elif isinstance(m, Density):
            g = m.grid
            out += _exp_sum(g.x, _density_coefficients(g), y) + _endpoint_correction(g, y)
        else:
            out += self_similar_transform(m, y)[0]
    return out


def fourier_stieltjes(mu: Measure, ygrid: GridSpec) -> TransformResult:
    """``mu^(y) = int exp(-2 pi i x y) dmu(x)`` on ``ygrid``."""
    tv = total_variation(mu)
    if not math.isfinite(tv):
        raise DivergenceError("measure has infinite total variation")
    y = ygrid.points
    vals = np.zeros(ygrid.n, dtype=complex)
    err = 0.0
    method = "closed-form"
    for m in primitives(mu):
        if isinstance(m, Atomic):
            vals += _atomic_sum(m.positions, m.weights, ygrid)
            kind = "closed-form"
        elif isinstance(m, Density):
            res = fourier_function(m.grid, ygrid)
            vals += res.values
            err += res.certified_error
            kind = "quadrature"
        elif isinstance(m, SelfSimilar):
            v, e = self_similar_transform(m, y)
            vals += v
            err += e
            kind = "ifs-product"
        else:  # pragma: no cover - primitives() never yields sums
            raise TypeError(m)
        if METHOD_RANK[kind] > METHOD_RANK[method]:
            method = kind
    return TransformResult(GridFunction.on(ygrid, vals), method, float(err))
