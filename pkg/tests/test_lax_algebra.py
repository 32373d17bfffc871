import numpy as np
import pytest
from hypothesis import given, settings

from artifact.lax_algebra import (build_lax, build_lax_tilde, casimirs, check_lax_inverse, check_rll, check_tdef_etsa,
                                  check_unetsa, lax_at_one, lax_tilde_at_one, rho, spin_half_casimirs, spin_half_rep)
from artifact.linalg_core import rel_residual
from conftest import Q, U, generic_q, phase, spectral


def test_casimir_values():
    cas, scalar = casimirs(spin_half_rep(Q, np.exp(0.4j)))
    sq = np.sqrt(Q)
    assert scalar < 1e-14
    assert cas.w_plus == pytest.approx(1 / sq, abs=1e-14)
    assert cas.w_minus == pytest.approx(sq, abs=1e-14)
    assert cas.w01 == pytest.approx(-1, abs=1e-14)
    assert cas.w02 == pytest.approx(-1, abs=1e-14)
    assert cas.w == pytest.approx(Q + 1 / Q, abs=1e-14)


@settings(max_examples=25, deadline=None)
@given(generic_q(), phase())
def test_relations(q, t):
    rep = spin_half_rep(q, t)
    rel, controls = check_tdef_etsa(rep)
    assert max(rel.values()) < 1e-12
    assert min(controls.values()) > 1e-3
    assert max(check_unetsa(rep).values()) < 1e-12


@settings(max_examples=25, deadline=None)
@given(generic_q(), phase(), spectral(), spectral())
def test_rll_needs_inverse_twist(q, t, u, v):
    rep = spin_half_rep(q, t)
    assert check_rll(u, v, rep) < 1e-10
    if abs(t - 1) > 0.2 and abs(u - v) > 0.2:
        assert check_rll(u, v, rep, r_twist=1.0) > 1e-4


@settings(max_examples=25, deadline=None)
@given(generic_q(), phase(), spectral())
def test_lax_inverse(q, t, u):
    assert check_lax_inverse(u, spin_half_rep(q, t)) < 1e-12


def test_rho_vanishes_at_shifted_points():
    cas = spin_half_casimirs(Q)
    # rho(u) = q + 1/q - u^2 - u^-2 for spin 1/2
    assert rho(U, cas, Q) == pytest.approx(Q + 1 / Q - U ** 2 - U ** -2, abs=1e-14)
    assert abs(rho(np.sqrt(Q), cas, Q)) < 1e-14


def test_lax_at_one_permutation_forms():
    rep = spin_half_rep(Q, np.exp(1.3j))
    assert rel_residual(build_lax(1.0, rep), lax_at_one(rep)) < 1e-15
    assert rel_residual(build_lax_tilde(1.0, rep), lax_tilde_at_one(rep)) < 1e-15


def test_rejects_zero():
    with pytest.raises(ValueError):
        spin_half_rep(0.0)
    with pytest.raises(ValueError):
        build_lax(0, spin_half_rep(Q))
