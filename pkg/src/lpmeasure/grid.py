"""Uniform grids, exponent pairs and finite unions of intervals."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import PreconditionError


def conjugate_exponent(p: float) -> float:
    """Hölder conjugate with the convention 1/inf = 0."""
    if p < 1:
        raise PreconditionError(f"exponent must be >= 1, got {p}")
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class ExponentPair:
    p: float
    p_prime: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        p = float(self.p)
        if not p >= 1:
            raise PreconditionError(f"exponent must be in [1, inf], got {p}")
        q = conjugate_exponent(p)
        if self.p_prime is not None and not _same_exponent(float(self.p_prime), q):
            raise PreconditionError(f"{self.p_prime} is not conjugate to {p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "p_prime", q)

    @classmethod
    def of(cls, p: "float | ExponentPair") -> "ExponentPair":
        return p if isinstance(p, ExponentPair) else cls(float(p))

    @property
    def conjugate(self) -> "ExponentPair":
        return ExponentPair(self.p_prime)

    def __str__(self):
        return f"p={self.p:g}, p'={self.p_prime:g}"


def _same_exponent(a: float, b: float) -> bool:
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= 1e-12 * max(1.0, abs(a))


@dataclass(frozen=True)
class GridSpec:
    """Sample locations ``start + k*step`` for ``k = 0..n-1``."""

    start: float
    step: float
    n: int

    def __post_init__(self):
        if not self.step > 0:
            raise PreconditionError("grid step must be positive")
        if self.n < 1:
            raise PreconditionError("grid needs at least one point")

    @classmethod
    def linspace(cls, a: float, b: float, n: int) -> "GridSpec":
        if n == 1:
            return cls(float(a), 1.0, 1)
        return cls(float(a), (b - a) / (n - 1), int(n))

    @classmethod
    def symmetric(cls, half_width: float, step: float) -> "GridSpec":
        m = int(math.ceil(half_width / step))
        return cls(-m * step, step, 2 * m + 1)

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.n)

    @property
    def stop(self) -> float:
        return self.start + self.step * (self.n - 1)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples ``values[k]`` of a function at ``start + k*step``.

    Outside ``[start, stop]`` the function is taken to be zero; inside it is
    the piecewise-linear interpolant of the samples.
    """

    start: float
    step: float
    values: np.ndarray

    def __post_init__(self):
        if not self.step > 0:
            raise PreconditionError("grid step must be positive")
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 1 or v.size < 1:
            raise PreconditionError("values must be a non-empty 1-d array")
        if not np.all(np.isfinite(v)):
            raise PreconditionError("grid function values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "step", float(self.step))
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, fn: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int) -> "GridFunction":
        spec = GridSpec.linspace(a, b, n)
        return cls(spec.start, spec.step, np.asarray(fn(spec.points), dtype=complex))

    @classmethod
    def on(cls, spec: GridSpec, values) -> "GridFunction":
        return cls(spec.start, spec.step, values)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def spec(self) -> GridSpec:
        return GridSpec(self.start, self.step, self.n)

    @property
    def x(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.n)

    @property
    def stop(self) -> float:
        return self.start + self.step * (self.n - 1)

    def trapezoid_weights(self) -> np.ndarray:
        w = np.full(self.n, self.step)
        if self.n > 1:
            w[0] = w[-1] = 0.5 * self.step
        return w

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.n == 1:
            return np.where(np.isclose(t, self.start), self.values[0], 0.0)
        xs = self.x
        re = np.interp(t, xs, self.values.real, left=0.0, right=0.0)
        im = np.interp(t, xs, self.values.imag, left=0.0, right=0.0)
        return re + 1j * im

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.start, self.step, values)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            return self.with_values(self.values * other(self.x))
        return self.with_values(self.values * other)

    __rmul__ = __mul__

    def __add__(self, other: "GridFunction"):
        if self.spec != other.spec:
            raise PreconditionError("grid functions live on different grids")
        return self.with_values(self.values + other.values)

    def __neg__(self):
        return self.with_values(-self.values)

    def edge_magnitude(self) -> float:
        return float(max(abs(self.values[0]), abs(self.values[-1])))


Interval = tuple[float, float]


@dataclass(frozen=True)
class SetOfIntervals:
    """Finite disjoint union of half-open intervals ``[a, b)``, sorted."""

    intervals: tuple[Interval, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", _normalize(self.intervals))

    @classmethod
    def of(cls, *intervals: Sequence[float]) -> "SetOfIntervals":
        return cls(tuple((float(a), float(b)) for a, b in intervals))

    @classmethod
    def interval(cls, a: float, b: float) -> "SetOfIntervals":
        return cls(((float(a), float(b)),))

    @property
    def measure(self) -> float:
        return float(sum(b - a for a, b in self.intervals))

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def hull(self) -> Interval:
        if not self.intervals:
            return (0.0, 0.0)
        return (self.intervals[0][0], self.intervals[-1][1])

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=bool)
        for a, b in self.intervals:
            out |= (x >= a) & (x < b)
        return out

    def indicator(self, x) -> np.ndarray:
        return self.contains(x).astype(float)

    def intersect(self, other: "SetOfIntervals") -> "SetOfIntervals":
        out = []
        for a, b in self.intervals:
            for c, d in other.intervals:
                lo, hi = max(a, c), min(b, d)
                if lo < hi:
                    out.append((lo, hi))
        return SetOfIntervals(tuple(out))

    def clip(self, a: float, b: float) -> "SetOfIntervals":
        return self.intersect(SetOfIntervals.interval(a, b))

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)


def _normalize(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    items = sorted((float(a), float(b)) for a, b in intervals)
    for a, b in items:
        if not (math.isfinite(a) and math.isfinite(b)):
            raise PreconditionError("interval endpoints must be finite")
    merged: list[list[float]] = []
    for a, b in items:
        if b <= a:
            continue
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return tuple((a, b) for a, b in merged)


def trapezoid(values, step: float) -> complex:
    v = np.asarray(values)
    if v.size == 0:
        return 0.0
    if v.size == 1:
        return 0.0
    return step * (v.sum() - 0.5 * (v[0] + v[-1]))
