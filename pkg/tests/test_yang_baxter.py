import numpy as np
import pytest
from hypothesis import given, settings

from artifact.linalg_core import SWAP, rel_residual
from artifact.yang_baxter import (build_r, build_r21, build_twist, check_m_relation, check_twist_conditions,
                                  check_twist_conjugation, check_unitarity, check_ybe, twist_from_angle, zeta)
from conftest import Q, U, generic_q, phase, spectral


def test_r_frozen_entries():
    r = build_r(U, Q, np.exp(0.7j))
    assert r[0, 0] == pytest.approx(0.41265112362156475 - 0.07323015169941335j, abs=1e-14)
    assert r[1, 1] == pytest.approx(0.6375168991675437 - 0.11162926213448071j, abs=1e-14)
    assert r[2, 2] == pytest.approx(-0.0016481003271065042 - 0.6472141628967961j, abs=1e-14)
    assert r[1, 2] == pytest.approx(-0.01489798004943943 + 0.4151950123293412j, abs=1e-14)
    assert r[3, 3] == r[0, 0] and r[2, 1] == r[1, 2]


def test_r_at_one_is_permutation():
    c = np.sqrt(Q) - 1 / np.sqrt(Q)
    assert rel_residual(build_r(1.0, Q, 0.3 + 0.2j), c * SWAP) < 1e-15


def test_r21_of_symmetric_r():
    assert np.allclose(build_r21(U, Q), build_r(U, Q))
    assert not np.allclose(build_r21(U, Q, 1j), build_r(U, Q, 1j))


def test_zero_arguments_rejected():
    with pytest.raises(ValueError):
        build_r(0, Q)
    with pytest.raises(ValueError):
        check_ybe(Q, 0, 1.0, 1.1, 1.2)


@settings(max_examples=40, deadline=None)
@given(generic_q(), phase(), spectral(), spectral(), spectral())
def test_ybe(q, t, u, v, w):
    assert check_ybe(q, t, u, v, w) < 1e-10


@settings(max_examples=30, deadline=None)
@given(generic_q(), phase(), spectral())
def test_unitarity(q, t, u):
    assert check_unitarity(u, q, t) < 1e-10


def test_zeta_value():
    assert zeta(1.0, 2.0) == pytest.approx(0.5)


@settings(max_examples=30, deadline=None)
@given(generic_q(), phase(), spectral())
def test_m_relation_identity_and_control(q, t, u):
    assert check_m_relation(q, t, u) < 1e-10
    assert check_m_relation(q, t, u, np.diag([1.0, 2.0])) > 1e-3


def test_twist_conjugation_and_cocycle():
    assert check_twist_conjugation(U, Q, 0.37) < 1e-14
    res = check_twist_conditions(U, Q, 0.37)
    assert res["r_f_f"] < 1e-14 and res["f_f_f"] < 1e-14 and res["f_inverse"] < 1e-14
    assert res["r_f12_f23"] > 1e-2
    assert twist_from_angle(0.37) == pytest.approx(np.exp(-0.74j))
    assert np.allclose(np.abs(np.diag(build_twist(0.37))), 1)
