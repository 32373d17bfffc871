"""Trigonometric R-matrix (optionally twisted), the diagonal twist and YBE-type checks."""
import numpy as np

from .linalg_core import I2, SIGMA_3, SWAP, on_pair, partial_transpose, rel_residual


def _nonzero(**kw):
    for name, val in kw.items():
        if val == 0:
            raise ValueError(f"{name} must be nonzero")


def build_r(u, q, t=1.0):
    """4x4 R(u): diag a(u), middle block [[t b(u), c], [c, b(u)/t]]."""
    _nonzero(u=u, q=q, t=t)
    sq = np.sqrt(complex(q))
    a = sq * u - 1 / (sq * u)
    b = u - 1 / u
    c = sq - 1 / sq
    r = np.zeros((4, 4), dtype=complex)
    r[0, 0] = r[3, 3] = a
    r[1, 1] = t * b
    r[2, 2] = b / t
    r[1, 2] = r[2, 1] = c
    return r


def build_r21(u, q, t=1.0):
    return SWAP @ build_r(u, q, t) @ SWAP


def twist_from_angle(theta_z):
    """The scalar twist t = exp(-2 i theta_z) produced by build_twist(theta_z)."""
    return np.exp(-2j * theta_z)


def build_twist(theta_z):
    """F_12 = exp(i theta_z/2 (sigma_3 x 1 - 1 x sigma_3)), a diagonal 4x4 matrix."""
    gen = 0.5j * theta_z * (np.kron(SIGMA_3, I2) - np.kron(I2, SIGMA_3))
    return np.diag(np.exp(np.diag(gen)))


def check_twist_conjugation(u, q, theta_z):
    f_inv = np.linalg.inv(build_twist(theta_z))
    return rel_residual(f_inv @ build_r(u, q) @ f_inv, build_r(u, q, twist_from_angle(theta_z)))


def check_twist_conditions(u, q, theta_z):
    """Residuals of the twist cocycle conditions on three 2-dim spaces.

    ``r_f12_f23`` is the variant R12 F12 F23 = F23 F13 R12, which fails;
    ``r_f_f`` is the standard form R12 F13 F23 = F23 F13 R12.
    """
    f = build_twist(theta_z)
    f12, f13, f23 = on_pair(f, (1, 2)), on_pair(f, (1, 3)), on_pair(f, (2, 3))
    r12 = on_pair(build_r(u, q), (1, 2))
    f21 = SWAP @ f @ SWAP
    return {
        "r_f_f": rel_residual(r12 @ f13 @ f23, f23 @ f13 @ r12),
        "r_f12_f23": rel_residual(r12 @ f12 @ f23, f23 @ f13 @ r12),
        "f_f_f": rel_residual(f12 @ f13 @ f23, f23 @ f13 @ f12),
        "f_inverse": rel_residual(f, np.linalg.inv(f21)),
    }


def check_ybe(q, t, u, v, w):
    """R12(u/v) R13(u/w) R23(v/w) = R23(v/w) R13(u/w) R12(u/v)."""
    _nonzero(q=q, t=t, u=u, v=v, w=w)
    r12 = on_pair(build_r(u / v, q, t), (1, 2))
    r13 = on_pair(build_r(u / w, q, t), (1, 3))
    r23 = on_pair(build_r(v / w, q, t), (2, 3))
    return rel_residual(r12 @ r13 @ r23, r23 @ r13 @ r12)


def zeta(u, q):
    _nonzero(u=u, q=q)
    return q + 1 / q - u * u - 1 / (u * u)


def check_unitarity(u, q, t=1.0):
    """R12(u) R21(1/u) = zeta(u) I."""
    lhs = build_r(u, q, t) @ build_r21(1 / u, q, t)
    return rel_residual(lhs, zeta(u, q) * np.eye(4))


def check_m_relation(q, t, u, m=None):
    """{{{R^{t2}(u)}^{-1}}^{t2}}^{-1} = zeta(q^{1/2}u)/zeta(qu) (1xM) R(qu) (1xM)^{-1}."""
    m = I2 if m is None else np.asarray(m, dtype=complex)
    r = build_r(u, q, t)
    inner = np.linalg.inv(partial_transpose(r, 2))
    if np.linalg.cond(inner) > 1e12:
        raise np.linalg.LinAlgError("degenerate sample: partial transpose nearly singular")
    lhs = np.linalg.inv(partial_transpose(inner, 2))
    sq = np.sqrt(complex(q))
    one_m = np.kron(I2, m)
    rhs = zeta(sq * u, q) / zeta(q * u, q) * one_m @ build_r(q * u, q, t) @ np.linalg.inv(one_m)
    return rel_residual(lhs, rhs)
