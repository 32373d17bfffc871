import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact.linalg_core import (I2, SIGMA_3, SIGMA_MINUS, SIGMA_PLUS, SWAP, attach_site, aux_blocks, aux_trace,
                                  embed_aux, embed_site, from_blocks, kron, on_pair, partial_transpose,
                                  permute_factors, rel_residual, scaled_residual)


def test_pauli_algebra():
    assert np.allclose(SIGMA_PLUS @ SIGMA_MINUS - SIGMA_MINUS @ SIGMA_PLUS, SIGMA_3)
    assert np.allclose(SWAP @ SWAP, np.eye(4))


def test_site_one_is_rightmost():
    assert np.allclose(embed_site(SIGMA_3, 1, 3), np.kron(np.eye(4), SIGMA_3))
    assert np.allclose(embed_site(SIGMA_3, 3, 3), np.kron(SIGMA_3, np.eye(4)))
    with pytest.raises(ValueError):
        embed_site(SIGMA_3, 4, 3)


def test_kron_many():
    a, b, c = SIGMA_PLUS, SIGMA_3, SIGMA_MINUS
    assert np.allclose(kron(a, b, c), np.kron(np.kron(a, b), c))


def test_rel_residual_basics():
    a = np.eye(3)
    assert rel_residual(a, a) == 0.0
    assert rel_residual(a, 2 * a) == pytest.approx(np.sqrt(3) / np.sqrt(12))
    assert rel_residual(1e-3 * a, 0 * a) == pytest.approx(np.sqrt(3) * 1e-3)
    assert scaled_residual(1e-3 * a, 1.001e-3 * a) == pytest.approx(1e-3 / 1.001, rel=1e-9)
    with pytest.raises(ValueError):
        rel_residual(np.eye(2), np.eye(3))


def test_blocks_roundtrip(rng):
    x = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    a, b, c, d = aux_blocks(x)
    assert np.array_equal(from_blocks(a, b, c, d), x)
    assert np.allclose(aux_trace(x), a + d)


def test_embed_aux_slots(rng):
    k = rng.normal(size=(2, 2)) + 0j
    qop = rng.normal(size=(2, 2)) + 0j
    x = np.kron(k, qop)
    assert np.allclose(embed_aux(x, 1, 2), kron(k, I2, qop))
    assert np.allclose(embed_aux(x, 2, 2), kron(I2, k, qop))


def test_attach_site_places_new_site_left(rng):
    k = rng.normal(size=(2, 2)) + 0j
    qop = rng.normal(size=(2, 2)) + 0j
    assert np.allclose(attach_site(np.kron(k, qop), 2), kron(k, I2, qop))


def test_partial_transpose_and_pairs(rng):
    a, b = rng.normal(size=(2, 2)), rng.normal(size=(2, 2))
    m = np.kron(a, b)
    assert np.allclose(partial_transpose(m, 1), np.kron(a.T, b))
    assert np.allclose(partial_transpose(m, 2), np.kron(a, b.T))
    assert np.allclose(on_pair(m, (1, 3)), kron(a, I2, b))
    with pytest.raises(ValueError):
        on_pair(m, (2, 1))


def test_permute_factors_is_permutation():
    p = permute_factors([2, 4, 2], [2, 0, 1])
    assert np.allclose(p @ p.T, np.eye(16))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10 ** 6))
def test_embedded_ops_commute_on_distinct_sites(n, seed):
    r = np.random.default_rng(seed)
    if n < 2:
        return
    i, j = r.choice(np.arange(1, n + 1), 2, replace=False)
    a = embed_site(r.normal(size=(2, 2)), int(i), n)
    b = embed_site(r.normal(size=(2, 2)), int(j), n)
    assert rel_residual(a @ b, b @ a) < 1e-13


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_rel_residual_symmetric_and_bounded(seed):
    r = np.random.default_rng(seed)
    a, b = r.normal(size=(3, 3)), r.normal(size=(3, 3))
    assert rel_residual(a, b) == rel_residual(b, a)
    assert rel_residual(a, b) <= 2.0
