"""Discrete, cyclic model of annihilating pairs.

On Z_N the unitary DFT plays the role of the Fourier transform. For a time
set F and a frequency set E the limiting operator ``P_E DFT P_F`` has norm
``sigma <= 1``; ``sigma < 1`` means no nonzero vector is supported in F with
DFT supported in E, and gives the quantitative bound
``||mu||_2 <= (1 - sigma^2)^(-1/2) ||mu^||_{l2(E^c)}`` for mu supported in F.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from .errors import PreconditionError
from .inequalities import InequalityReport, digest

MAX_N = 2048


@dataclass(frozen=True)
class IndexSet:
    N: int
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(set(int(i) for i in self.indices)))
        if self.N < 1:
            raise PreconditionError("grid size must be positive")
        if idx and (idx[0] < 0 or idx[-1] >= self.N):
            raise PreconditionError(f"indices must lie in 0..{self.N - 1}")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def of(cls, N: int, indices: Iterable[int]) -> "IndexSet":
        return cls(N, tuple(indices))

    def __len__(self):
        return len(self.indices)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=int)

    def complement(self) -> "IndexSet":
        return IndexSet(self.N, tuple(sorted(set(range(self.N)) - set(self.indices))))


def dft_matrix(N: int) -> np.ndarray:
    k = np.arange(N)
    return np.exp(-2j * np.pi * np.outer(k, k) / N) / math.sqrt(N)


@dataclass(frozen=True, eq=False)
class LimitingOperator:
    N: int
    E: IndexSet
    F: IndexSet
    singular_values: np.ndarray
    right_vectors: np.ndarray = field(repr=False)

    @property
    def sigma(self) -> float:
        return float(self.singular_values[0]) if self.singular_values.size else 0.0


def build_limiting_operator(N: int, E: IndexSet, F: IndexSet) -> LimitingOperator:
    """Singular values of the DFT restricted to time set F and frequency set E."""
    if N < 2:
        raise PreconditionError("N must be at least 2")
    if N > MAX_N:
        raise PreconditionError(f"N = {N} exceeds the dense-SVD cap {MAX_N}")
    if E.N != N or F.N != N:
        raise PreconditionError("index sets belong to a different grid size")
    if not len(E) or not len(F):
        return LimitingOperator(N, E, F, np.zeros(0), np.zeros((0, 0)))
    k = E.array[:, None]
    n = F.array[None, :]
    block = np.exp(-2j * np.pi * k * n / N) / math.sqrt(N)
    _, s, vh = np.linalg.svd(block)
    return LimitingOperator(N, E, F, s, vh.conj().T)


def _sets_payload(N, E: IndexSet, F: IndexSet) -> dict[str, Any]:
    return {"N": N, "E": list(E.indices), "F": list(F.indices)}


def measure_annihilation_check(weights, E: IndexSet, F: IndexSet,
                               tolerance: float = 1e-9) -> InequalityReport:
    """``||mu||_2 <= (1 - sigma^2)^(-1/2) ||mu^||_{l2(E^c)}`` for mu supported in F."""
    w = np.asarray(weights, dtype=complex)
    N = w.size
    if E.N != N or F.N != N:
        raise PreconditionError("weights and index sets disagree on N")
    off = np.ones(N, dtype=bool)
    off[F.array] = False
    if np.any(np.abs(w[off]) > 0):
        raise PreconditionError("weights must vanish off F")
    op = build_limiting_operator(N, E, F)
    sigma = op.sigma
    details = {**_sets_payload(N, E, F), "sigma": sigma}
    lhs = float(np.linalg.norm(w))
    spectrum = np.fft.fft(w, norm="ortho")
    mask = np.ones(N, dtype=bool)
    mask[E.array] = False
    tail = float(np.linalg.norm(spectrum[mask]))
    if sigma >= 1 - 1e-9:
        return InequalityReport("measure_annihilation", lhs, math.inf, math.inf, tolerance,
                                digest(w, E.indices, F.indices), "inconclusive", details)
    C = 1.0 / math.sqrt(1.0 - sigma**2)
    details["constant"] = C
    return InequalityReport("measure_annihilation", lhs, C * tail, C, tolerance,
                            digest(w, E.indices, F.indices), details=details)


@dataclass
class DoubleSupportReport:
    N: int
    E: list[int]
    F: list[int]
    sigma: float
    gap: float
    zero_kernel: bool
    witness: list[complex] | None = None
    witness_leakage: float | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.zero_kernel

    def to_dict(self) -> dict:
        out = {
            "N": self.N, "E": self.E, "F": self.F, "sigma": self.sigma, "gap": self.gap,
            "zero_kernel": self.zero_kernel, "note": self.note,
        }
        if self.witness is not None:
            out["witness"] = [[float(z.real), float(z.imag)] for z in self.witness]
            out["witness_leakage"] = self.witness_leakage
        return out


def no_double_support(N: int, E: IndexSet, F: IndexSet, tol: float = 1e-9) -> DoubleSupportReport:
    """Certify that only the zero vector is supported in F with DFT supported in E.

    ``gap = 1 - sigma^2`` is the smallest eigenvalue of ``I - A^* A`` on F. When
    the gap closes (possible on Z_N, e.g. picket fences with |E||F| >= N) the
    top singular vector is returned as an explicit doubly supported witness.
    """
    if not len(E) or not len(F):
        return DoubleSupportReport(N, list(E.indices), list(F.indices), 0.0, 1.0, True,
                                   note="empty set: trivially annihilating")
    op = build_limiting_operator(N, E, F)
    sigma = op.sigma
    gap = 1.0 - sigma**2
    rep = DoubleSupportReport(N, list(E.indices), list(F.indices), sigma, gap, gap > tol)
    if not rep.zero_kernel:
        v = np.zeros(N, dtype=complex)
        v[F.array] = op.right_vectors[:, 0]
        phase = v[F.array[0]] / abs(v[F.array[0]]) if abs(v[F.array[0]]) > 0 else 1.0
        v = v / phase
        spec = np.fft.fft(v, norm="ortho")
        mask = np.ones(N, dtype=bool)
        mask[E.array] = False
        rep.witness = [complex(z) for z in np.round(v, 15)]
        rep.witness_leakage = float(np.linalg.norm(spec[mask]))
        rep.note = "discrete pair is not annihilating: nonzero vector supported in F with DFT in E"
    return rep


def picket_fence(N: int, spacing: int) -> IndexSet:
    return IndexSet(N, tuple(range(0, N, spacing)))


def random_pair(rng: np.random.Generator, N: int, budget: float = 0.25) -> tuple[IndexSet, IndexSet]:
    """Random (E, F) with ``|E| |F| <= budget * N``."""
    cap = max(1, int(budget * N))
    e = int(rng.integers(1, cap + 1))
    f = int(rng.integers(1, max(1, cap // e) + 1))
    E = IndexSet(N, tuple(rng.choice(N, size=e, replace=False)))
    F = IndexSet(N, tuple(rng.choice(N, size=f, replace=False)))
    return E, F
