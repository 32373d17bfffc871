"""Spin-1/2 realization of the (t-deformed) extended trigonometric Sklyanin algebra and the Lax operators."""
from dataclasses import dataclass

import numpy as np

from .linalg_core import I2, SIGMA_MINUS, SIGMA_PLUS, SWAP, commutator, embed_aux, rel_residual
from .yang_baxter import build_r


def _qpow(q, e):
    return np.exp(e * np.log(complex(q)))


@dataclass(frozen=True)
class SklyaninRep:
    q: complex
    t: complex
    tau1_plus: np.ndarray
    tau1_minus: np.ndarray
    tau2_plus: np.ndarray
    tau2_minus: np.ndarray
    tau12: np.ndarray
    tau21: np.ndarray
    tau_g: np.ndarray

    @property
    def sq(self):
        return np.sqrt(complex(self.q))

    @property
    def c(self):
        return self.sq - 1 / self.sq

    @property
    def st(self):
        return np.sqrt(complex(self.t))


@dataclass(frozen=True)
class CasimirSet:
    w_plus: complex
    w_minus: complex
    w01: complex
    w02: complex
    w: complex


def spin_half_rep(q, t=1.0):
    """tau1^{+-} = -+q^{-+1/4} q^{-+sigma3/4}, tau2^{+-} = -+q^{-+1/4} q^{+-sigma3/4}, tau_g = diag(t^{1/2}, t^{-1/2})."""
    if q == 0 or t == 0:
        raise ValueError("q and t must be nonzero")
    q_sig = lambda e: np.diag([_qpow(q, e), _qpow(q, -e)])  # q^{e sigma3}
    q4 = _qpow(q, 0.25)
    c = np.sqrt(complex(q)) - 1 / np.sqrt(complex(q))
    st = np.sqrt(complex(t))
    return SklyaninRep(
        q=complex(q), t=complex(t),
        tau1_plus=-(1 / q4) * q_sig(-0.25),
        tau1_minus=q4 * q_sig(0.25),
        tau2_plus=-(1 / q4) * q_sig(0.25),
        tau2_minus=q4 * q_sig(-0.25),
        tau12=c * SIGMA_MINUS,
        tau21=c * SIGMA_PLUS,
        tau_g=np.diag([st, 1 / st]),
    )


def spin_half_casimirs(q):
    sq = np.sqrt(complex(q))
    return CasimirSet(w_plus=1 / sq, w_minus=sq, w01=-1.0, w02=-1.0, w=q + 1 / q)


def casimirs(rep):
    """Evaluate the five Casimir elements on ``rep``; each must be a scalar multiple of I."""
    sq = rep.sq
    ops = {
        "w_plus": rep.tau1_plus @ rep.tau2_plus,
        "w_minus": rep.tau1_minus @ rep.tau2_minus,
        "w01": rep.tau1_minus @ rep.tau1_plus,
        "w02": rep.tau2_minus @ rep.tau2_plus,
        "w": rep.tau12 @ rep.tau21 - sq * rep.tau1_minus @ rep.tau2_plus - rep.tau1_plus @ rep.tau2_minus / sq,
    }
    alt_w = rep.tau21 @ rep.tau12 - rep.tau1_minus @ rep.tau2_plus / sq - sq * rep.tau1_plus @ rep.tau2_minus
    vals = {k: v[0, 0] for k, v in ops.items()}
    scalar_res = max(rel_residual(v, vals[k] * I2) for k, v in ops.items())
    scalar_res = max(scalar_res, rel_residual(alt_w, vals["w"] * I2))
    return CasimirSet(**vals), scalar_res


def twisted_generators(rep):
    """tau_i^{+-} = tau~ tau_g, tau12 = t^{-1/2} tau~12 tau_g, tau21 = t^{1/2} tau~21 tau_g."""
    g = rep.tau_g
    return {
        "1+": rep.tau1_plus @ g, "1-": rep.tau1_minus @ g,
        "2+": rep.tau2_plus @ g, "2-": rep.tau2_minus @ g,
        "12": rep.tau12 @ g / rep.st, "21": rep.st * rep.tau21 @ g,
    }


def check_tdef_etsa(rep):
    """Residuals of the t-deformed relations on the twisted generators.

    The key ``tau2_tau12_mixed`` evaluates the mixed form
    tau2 tau12 = t q^{+-1/2} tau21 tau2, which does not hold; the
    valid relation is ``tau2_tau21``.  It is excluded from ``relations``.
    """
    g = twisted_generators(rep)
    q, t, c = rep.q, rep.t, rep.c
    out = {}
    out["diagonal_commute"] = max(
        rel_residual(commutator(g[a], g[b]), 0 * I2) for a in ("1+", "1-", "2+", "2-") for b in ("1+", "1-", "2+", "2-")
    )
    for sgn, e in (("+", 1), ("-", -1)):
        t1, t2 = g["1" + sgn], g["2" + sgn]
        out[f"tau1{sgn}_tau12"] = rel_residual(t1 @ g["12"], _qpow(q, e / 2) / t * g["12"] @ t1)
        out[f"tau2{sgn}_tau12"] = rel_residual(t2 @ g["12"], _qpow(q, -e / 2) / t * g["12"] @ t2)
        out[f"tau1{sgn}_tau21"] = rel_residual(t1 @ g["21"], t * _qpow(q, -e / 2) * g["21"] @ t1)
        out[f"tau2{sgn}_tau21"] = rel_residual(t2 @ g["21"], t * _qpow(q, e / 2) * g["21"] @ t2)
        out[f"tau2{sgn}_tau12_mixed"] = rel_residual(t2 @ g["12"], t * _qpow(q, e / 2) * g["21"] @ t2)
    out["exchange"] = rel_residual(
        t * g["21"] @ g["12"] - g["12"] @ g["21"] / t, c * (g["1+"] @ g["2-"] - g["1-"] @ g["2+"])
    )
    relations = {k: v for k, v in out.items() if not k.endswith("_mixed")}
    controls = {k: v for k, v in out.items() if k.endswith("_mixed")}
    return relations, controls


def check_unetsa(rep):
    """Residuals of the untwisted relations (superscripts read by pattern) and the tau_g relations."""
    q, c = rep.q, rep.c
    a = {"1+": rep.tau1_plus, "1-": rep.tau1_minus, "2+": rep.tau2_plus, "2-": rep.tau2_minus}
    out = {}
    for sgn, e in (("+", 1), ("-", -1)):
        out[f"tau1{sgn}_tau12"] = rel_residual(a["1" + sgn] @ rep.tau12, _qpow(q, e / 2) * rep.tau12 @ a["1" + sgn])
        out[f"tau2{sgn}_tau12"] = rel_residual(a["2" + sgn] @ rep.tau12, _qpow(q, -e / 2) * rep.tau12 @ a["2" + sgn])
        out[f"tau1{sgn}_tau21"] = rel_residual(a["1" + sgn] @ rep.tau21, _qpow(q, -e / 2) * rep.tau21 @ a["1" + sgn])
        out[f"tau2{sgn}_tau21"] = rel_residual(a["2" + sgn] @ rep.tau21, _qpow(q, e / 2) * rep.tau21 @ a["2" + sgn])
    out["exchange"] = rel_residual(
        commutator(rep.tau21, rep.tau12), c * (a["1+"] @ a["2-"] - a["1-"] @ a["2+"])
    )
    g = rep.tau_g
    out["tau_g_tau12"] = rel_residual(g @ rep.tau12, rep.tau12 @ g / rep.t)
    out["tau_g_tau21"] = rel_residual(g @ rep.tau21, rep.t * rep.tau21 @ g)
    out["tau_g_diagonal"] = max(rel_residual(commutator(g, x), 0 * I2) for x in a.values())
    return out


def build_lax(u, rep):
    """L(u) = [[u tau1^- + tau1^+/u, t^{-1/2} tau12], [t^{1/2} tau21, u tau2^- + tau2^+/u]] tau_g."""
    if u == 0:
        raise ValueError("u must be nonzero")
    st, g = rep.st, rep.tau_g
    blocks = [[u * rep.tau1_minus + rep.tau1_plus / u, rep.tau12 / st],
              [st * rep.tau21, u * rep.tau2_minus + rep.tau2_plus / u]]
    return np.block([[b @ g for b in row] for row in blocks])


def build_lax_tilde(u, rep):
    """L~(u) = tau_g^{-1} [[-(q^{-1/2}u tau2^- + q^{1/2}tau2^+/u), t^{-1/2} tau12], [t^{1/2} tau21, -(q^{-1/2}u tau1^- + q^{1/2}tau1^+/u)]]."""
    if u == 0:
        raise ValueError("u must be nonzero")
    st, sq = rep.st, rep.sq
    gi = np.linalg.inv(rep.tau_g)
    blocks = [[-(u / sq * rep.tau2_minus + sq / u * rep.tau2_plus), rep.tau12 / st],
              [st * rep.tau21, -(u / sq * rep.tau1_minus + sq / u * rep.tau1_plus)]]
    return np.block([[gi @ b for b in row] for row in blocks])


def rho(u, cas, q):
    """rho(u) = w - (q^{-1/2} w_- u^2 + q^{1/2} w_+ u^{-2})."""
    sq = np.sqrt(complex(q))
    return cas.w - (cas.w_minus * u * u / sq + sq * cas.w_plus / (u * u))


def check_lax_inverse(u, rep):
    cas = spin_half_casimirs(rep.q)
    return rel_residual(build_lax(u, rep) @ build_lax_tilde(u, rep), rho(u, cas, rep.q) * np.eye(4))


def lax_at_one(rep):
    """c * diag-block(P_, P^+) * P_{0i} * tau_g, the permutation form of L(1)."""
    st = rep.st
    up = np.diag([1.0, 0.0])
    dn = np.diag([0.0, 1.0])
    left = np.block([[up + dn / st, np.zeros((2, 2))], [np.zeros((2, 2)), st * up + dn]])
    return rep.c * left @ SWAP @ np.kron(I2, rep.tau_g)


def lax_tilde_at_one(rep):
    st = rep.st
    up = np.diag([1.0, 0.0])
    dn = np.diag([0.0, 1.0])
    right = np.block([[up + st * dn, np.zeros((2, 2))], [np.zeros((2, 2)), up / st + dn]])
    return rep.c * np.kron(I2, np.linalg.inv(rep.tau_g)) @ SWAP @ right


def check_rll(u, v, rep, r_twist=None):
    """R(u/v) L^1(u) L^2(v) = L^2(v) L^1(u) R(u/v) on aux1 x aux2 x site.

    The R-matrix compatible with the Lax operator of twist t is the one
    built with twist parameter 1/t (equivalently R21 with twist t).
    ``r_twist`` overrides that choice, e.g. 1.0 for the untwisted control.
    """
    tr = 1 / rep.t if r_twist is None else r_twist
    r = np.kron(build_r(u / v, rep.q, tr), I2)
    l1 = embed_aux(build_lax(u, rep), 1, 2)
    l2 = embed_aux(build_lax(v, rep), 2, 2)
    return rel_residual(r @ l1 @ l2, l2 @ l1 @ r)
