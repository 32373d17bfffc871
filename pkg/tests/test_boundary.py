import numpy as np
import pytest
from hypothesis import given, settings

from artifact.boundary import (build_kminus_c, build_kplus_c, check_dual_reflection, check_dual_reflection_transposed,
                               check_reflection, check_reflection_transposed, dress, dressed_k_of, dual_boundary_map,
                               dualize, sixteen_components, sixteen_equations)
from artifact.linalg_core import rel_residual
from artifact.params import sample_boundary, sample_model
from conftest import BOUNDARY, Q, TWO_SITE, U, generic_q, phase, spectral


def test_k_frozen_entries():
    km = build_kminus_c(U, BOUNDARY, Q).ravel()
    kp = build_kplus_c(U, BOUNDARY, Q).ravel()
    assert np.allclose(km, [2.027058823529412 - 0.0115686274509804j, -1.7532095090697792 - 2.355812935599185j,
                            -3.7547404914871128 - 1.1102995240499747j, 1.7535294117647058 + 0.01254901960784321j],
                       atol=1e-13)
    assert np.allclose(kp, [1.9449230793335286 + 0.45772026698919543j, 1.017746257691913 - 0.01970231223150443j,
                            1.2963571978052466 - 1.2633592590067106j, 2.141252647316878 + 0.12492638943445206j],
                       atol=1e-13)


def test_k_at_one_is_scalar():
    b = BOUNDARY
    assert np.allclose(build_kminus_c(1.0, b, Q), (b.eps_plus + b.eps_minus) * np.eye(2))


@settings(max_examples=25, deadline=None)
@given(generic_q(), phase(), spectral(), spectral())
def test_reflection_any_twist(q, t, u, v):
    b = sample_boundary(np.random.default_rng(abs(hash((q, t))) % 2 ** 32))
    k = lambda x: build_kminus_c(x, b, q)
    assert check_reflection(k, q, t, u, v) < 1e-10
    assert check_reflection_transposed(k, q, 1.0, u, v) < 1e-10
    assert max(sixteen_components(k, q, t, u, v)) < 1e-12


def test_transposed_arrangement_fails_when_twisted():
    k = lambda x: build_kminus_c(x, BOUNDARY, Q)
    assert check_reflection_transposed(k, Q, np.exp(0.9j), U, 0.8 + 0.5j) > 1e-3


@settings(max_examples=25, deadline=None)
@given(generic_q(), phase(), spectral(), spectral())
def test_dual_reflection(q, t, u, v):
    b = sample_boundary(np.random.default_rng(abs(hash((u, v))) % 2 ** 32))
    kp = dualize(lambda x: build_kminus_c(x, b, q), q)
    assert check_dual_reflection(kp, q, t, u, v) < 1e-10
    assert rel_residual(kp(u), build_kplus_c(u, dual_boundary_map(b, q), q)) < 1e-12
    assert check_dual_reflection(lambda x: build_kplus_c(x, b, q), q, t, u, v) < 1e-10


def test_dual_transposed_form_only_at_t1():
    kp = lambda x: build_kplus_c(x, BOUNDARY, Q)
    assert check_dual_reflection_transposed(kp, Q, 1.0, U, 0.8 + 0.5j) < 1e-12
    assert check_dual_reflection_transposed(kp, Q, np.exp(0.9j), U, 0.8 + 0.5j) > 1e-3


def test_sixteen_equations_on_operator_valued_k(rng):
    p = sample_model(rng, 1)
    k = dressed_k_of(p)
    u, v = 0.9 + 0.4j, 1.2 - 0.2j
    ordered = sixteen_equations(k(u), k(v), p.q, u, v)
    alt = sixteen_equations(k(u), k(v), p.q, u, v, ordered=False)
    assert max(ordered) < 1e-12
    assert min(alt[i] for i in (4, 5, 12, 13)) > 1e-4
    # the other twelve components do not depend on the ordering choice
    assert max(alt[i] for i in range(16) if i not in (4, 5, 12, 13)) < 1e-12


def test_sixteen_scalar_k_matches_matrix_entries():
    k = lambda x: build_kminus_c(x, BOUNDARY, Q)
    assert max(sixteen_equations(k(U), k(0.8 + 0.5j), Q, U, 0.8 + 0.5j)) < 1e-13


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dressed_reflection(rng, n):
    p = sample_model(rng, n)
    assert check_reflection(dressed_k_of(p), p.q, np.exp(0.5j), 1.1 + 0.2j, 0.8 - 0.3j) < 1e-9


def test_dress_zero_sites_returns_seed():
    p = TWO_SITE.truncated(0)
    assert np.allclose(dress(U, p).K, build_kminus_c(U, BOUNDARY, Q))
    assert dress(U, TWO_SITE).K.shape == (8, 8)
    with pytest.raises(ValueError):
        dress(0, TWO_SITE)
