import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lpmeasure.errors import PreconditionError
from lpmeasure.uncertainty import (
    IndexSet,
    build_limiting_operator,
    dft_matrix,
    measure_annihilation_check,
    no_double_support,
    picket_fence,
    random_pair,
)


def test_dft_is_unitary():
    F = dft_matrix(32)
    assert np.allclose(F.conj().T @ F, np.eye(32), atol=1e-12)
    x = np.random.default_rng(1).normal(size=32)
    assert np.allclose(F @ x, np.fft.fft(x, norm="ortho"))


def test_full_sets_give_sigma_one():
    full = IndexSet.of(16, range(16))
    assert build_limiting_operator(16, full, full).sigma == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("N", [8, 64, 256])
def test_single_entries(N):
    op = build_limiting_operator(N, IndexSet.of(N, [3]), IndexSet.of(N, [5]))
    assert op.sigma == pytest.approx(1 / math.sqrt(N), rel=1e-12)


pairs = st.integers(0, 2**32 - 1).map(lambda s: random_pair(np.random.default_rng(s), 256))


@given(pairs)
def test_envelope_and_singular_values(pair):
    E, F = pair
    op = build_limiting_operator(256, E, F)
    assert np.all(op.singular_values <= 1 + 1e-12) and np.all(op.singular_values >= 0)
    assert op.sigma <= math.sqrt(len(E) * len(F) / 256) + 1e-9


@given(pairs)
def test_sigma_symmetric_under_swap(pair):
    E, F = pair
    assert build_limiting_operator(256, E, F).sigma == pytest.approx(
        build_limiting_operator(256, F, E).sigma, abs=1e-12)


@given(pairs, st.integers(0, 2**32 - 1))
def test_annihilation_passes(pair, seed):
    E, F = pair
    w = np.zeros(256, dtype=complex)
    r = np.random.default_rng(seed)
    w[F.array] = r.normal(size=len(F)) + 1j * r.normal(size=len(F))
    rep = measure_annihilation_check(w, E, F)
    assert rep.status == "pass"


def test_empty_frequency_set_is_parseval():
    N = 32
    F = IndexSet.of(N, [0, 4, 9])
    w = np.zeros(N, dtype=complex)
    w[F.array] = [1, 2j, -1]
    rep = measure_annihilation_check(w, IndexSet.of(N, []), F)
    assert rep.constant_used == pytest.approx(1.0)
    assert rep.lhs == pytest.approx(rep.rhs, rel=1e-12)


def test_single_atom_small_frequency_set():
    N = 64
    w = np.zeros(N, dtype=complex)
    w[10] = 1.0
    rep = measure_annihilation_check(w, IndexSet.of(N, [0, 1, 2]), IndexSet.of(N, [10]))
    # a single atom has a flat spectrum, which makes the bound an equality
    assert rep.status == "pass"
    assert rep.rhs == pytest.approx(rep.lhs, rel=1e-12)


def test_weights_off_support_rejected():
    w = np.ones(8)
    with pytest.raises(PreconditionError):
        measure_annihilation_check(w, IndexSet.of(8, [0]), IndexSet.of(8, [1]))


def test_random_small_sets_have_zero_kernel():
    r = np.random.default_rng(3)
    E = IndexSet.of(64, r.choice(64, 4, replace=False))
    F = IndexSet.of(64, r.choice(64, 4, replace=False))
    assert no_double_support(64, E, F).passed


def test_empty_set_is_trivial():
    rep = no_double_support(16, IndexSet.of(16, []), IndexSet.of(16, [1, 2]))
    assert rep.passed


def test_picket_fence_witness():
    comb = picket_fence(64, 8)
    rep = no_double_support(64, comb, comb)
    assert not rep.zero_kernel
    assert rep.sigma == pytest.approx(1.0, abs=1e-12)
    assert rep.witness_leakage < 1e-12
    w = np.array(rep.witness)
    assert np.allclose(np.abs(w[comb.array]), 1 / math.sqrt(8), atol=1e-12)
    assert rep.to_dict()["witness"]
