"""Generators of the alternating q-Onsager algebra built from the dressed K-matrix.

The dressed matrix K^{(N)}(u) is a polynomial in u whose quantum-space
coefficients are the generators W_{-k}, W_{k+1}, G_{k+1}, G~_{k+1}.  They are
obtained by a site-by-site recursion (``build_generators``) and checked
against the blocks extracted from the dressed matrix itself.

Index conventions used throughout: a ``GeneratorFamily`` stores
``w_minus[k] = W_{-k}``, ``w_plus[k] = W_{k+1}``, ``g[k] = G_{k+1}`` and
``g_tilde[k] = G~_{k+1}`` for k = 0, 1, ...
"""
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .boundary import dress
from .lax_algebra import spin_half_casimirs, spin_half_rep
from .linalg_core import SIGMA_MINUS, SIGMA_PLUS, aux_blocks, commutator, rel_residual
from .params import ModelParams


def q_commutator(x, y, q, e=1):
    """[x, y]_{q^e} = q^{e/2} x y - q^{-e/2} y x."""
    sq = np.sqrt(complex(q))
    return sq ** e * x @ y - sq ** (-e) * y @ x


def q_bracket(q):
    return lambda x, y, e=1: q_commutator(x, y, q, e)


def _esym(xs, m):
    if m < 0:
        return 0.0
    if m == 0:
        return 1.0
    return sum(np.prod(c) for c in combinations(xs, m))


class CoefficientTower:
    """Scalar data of the N-site dressed matrix: epsilon^{(N)}, alpha_k, C_n, P_{-k}(u), J(u), omega_0."""

    def __init__(self, params: ModelParams, n_sites=None):
        self.params = params
        self.n = params.n_sites if n_sites is None else n_sites
        if self.n > params.n_sites:
            raise ValueError("n_sites exceeds the number of model sites")
        b = params.boundary
        if b.k_plus == 0 or b.k_minus == 0:
            raise ValueError("k_plus and k_minus must be nonzero")
        self.q, self.sq, self.s, self.c = params.q, params.sq, params.s, params.c
        self.cas = spin_half_casimirs(self.q)
        self.b = b
        self.kk = b.k_plus * b.k_minus

    def x_site(self, n):
        """X_n = q^{-1/2} w_- v_n^2 + q^{1/2} w_+ v_n^{-2} (= v_n^2 + v_n^-2 for spin 1/2)."""
        v = self.params.vs[n - 1]
        return self.cas.w_minus / self.sq * v * v + self.cas.w_plus * self.sq / (v * v)

    @property
    def w0_product(self):
        return (-self.cas.w01) * (-self.cas.w02)

    def alpha(self, n):
        a = self.x_site(n) * self.cas.w / (self.s * self.cas.w01 * self.cas.w02)
        if n == 1:
            a += self.b.eps_plus * self.b.eps_minus * self.c ** 2 / (self.kk * self.s)
        return a

    def eps(self, n=None):
        """(eps_+^{(n)}, eps_-^{(n)})."""
        n = self.n if n is None else n
        e = (self.b.eps_plus, self.b.eps_minus)
        w = self.cas.w
        for k in range(1, n + 1):
            x = self.x_site(k)
            e = (w * e[1] - x * e[0], w * e[0] - x * e[1])
        return e

    def omega0(self):
        pw = self.w0_product
        return (-1) ** self.n * self.kk / self.c * np.prod([self.alpha(k) * pw for k in range(1, self.n + 1)])

    def rho0(self):
        return self.s ** 2 * self.kk * self.cas.w_plus * self.cas.w_minus

    def c_coeff(self, n):
        al = [self.alpha(k) for k in range(1, self.n + 1)]
        return (-1) ** (self.n - n) * self.s * _esym(al, self.n - n - 1)

    def g_of(self, u):
        return self.sq * u * u + 1 / (self.sq * u * u)

    def p_coeffs(self, k):
        """Coefficients of P_{-k} as a polynomial in g(u), lowest power first."""
        p = np.zeros(self.n, dtype=complex)
        for n in range(k, self.n):
            p[n - k] = -self.s ** (k - 1) * self.c_coeff(n)
        return p

    def p(self, k, u):
        return np.polynomial.polynomial.polyval(self.g_of(u), self.p_coeffs(k))

    def j(self, u):
        pw = self.w0_product ** self.n
        return self.kk * pw / self.c * self.g_of(u) * self.p(0, u) + self.omega0()

    def closure_coeffs(self):
        """a_0 and (a_1..a_N) of a_0 F_l + sum_k a_k F_{k+l} + eps = 0."""
        a0 = -self.c * self.omega0() / (self.kk * self.w0_product ** self.n)
        return a0, [self.s ** (k - 1) * self.c_coeff(k - 1) for k in range(1, self.n + 1)]


@dataclass
class GeneratorFamily:
    n_sites: int
    w_minus: list
    w_plus: list
    g: list
    g_tilde: list

    def W(self, j):
        """W_j for integer j (j <= 0 from w_minus, j >= 1 from w_plus)."""
        return self.w_plus[j - 1] if j >= 1 else self.w_minus[-j]

    def G(self, l):
        return self.g[l - 1]

    def Gt(self, l):
        return self.g_tilde[l - 1]

    def truncated(self, depth):
        return GeneratorFamily(self.n_sites, self.w_minus[:depth], self.w_plus[:depth], self.g[:depth], self.g_tilde[:depth])


def seed_family(params: ModelParams, length):
    """Level-0 scalar generators.

    G_{l+1} = G~_{l+1} = c eps_+ eps_- (alpha_1/s)^l, W_0 = eps_+, W_1 = eps_-, and
    the rest follows from the scalar form of the lowest-order relations.  The
    seed depends on the first site through alpha_1.
    """
    tw = CoefficientTower(params, min(1, params.n_sites)) if params.n_sites else None
    b = params.boundary
    c, s = params.c, params.s
    kk = b.k_plus * b.k_minus
    if kk == 0:
        raise ValueError("k_plus and k_minus must be nonzero")
    rho = s * s * kk
    ratio = tw.alpha(1) / s if tw is not None else 0.0
    g = [c * b.eps_plus * b.eps_minus * ratio ** l for l in range(length)]
    wm, wp = [complex(b.eps_plus)], [complex(b.eps_minus)]
    for k in range(length - 1):
        wm.append(wp[k] + c * b.eps_plus * g[k] / rho)
        wp.append(wm[k] + c * g[k] * b.eps_minus / rho)
    return GeneratorFamily(0, wm, wp, g, list(g))


def build_generators(params: ModelParams, n_sites=None, depth=None):
    """Generators for the first ``n_sites`` sites, ``depth`` of each family (default n_sites + 1)."""
    N = params.n_sites if n_sites is None else n_sites
    if N < 1:
        raise ValueError("need at least one site")
    p = params.truncated(N)
    depth = N + 1 if depth is None else depth
    tower = CoefficientTower(p, N)
    cas, q, sq, s, c = tower.cas, p.q, p.sq, p.s, p.c
    b = p.boundary
    kp, km = b.k_plus, b.k_minus
    w01, w02, w0 = cas.w01, cas.w02, cas.w
    seed = seed_family(p, depth + 2 * N + 4)
    wm, wp, gg, ggt = seed.w_minus, seed.w_plus, seed.g, seed.g_tilde
    dim = 1
    for n in range(1, N + 1):
        rep = spin_half_rep(q, p.ts[n - 1])
        tn, st, v = rep.t, rep.st, p.vs[n - 1]
        x = tower.x_site(n)
        a1p, a1m, a2p, a2m = rep.tau1_plus, rep.tau1_minus, rep.tau2_plus, rep.tau2_minus
        a12, a21 = rep.tau12, rep.tau21
        pr1, pr2 = (-w01) ** (n - 1), (-w02) ** (n - 1)
        pn1, pn2 = (-w01) ** n, (-w02) ** n
        g_prev = kp * km * s * s * tower.w0_product ** (n - 1) / c  # G_0 at level n-1
        g_new = kp * km * s * s * tower.w0_product ** n / c
        lam = x * w0 / (w01 * w02 * s * s)
        pref = 1 / (kp * km * s * s * tower.w0_product ** (n - 1))
        eye = np.eye(dim)
        kr = lambda a, y: np.kron(a, y * eye if np.isscalar(y) else y)
        get = lambda lst, k, init: lst[k] if k >= 0 else init
        nm, npl, ng, ngt = [], [], [], []
        for k in range(len(wm) - 1):
            pm1, nm1 = get(wp, k - 1, 0.0), get(wm, k - 1, 0.0)
            gm1, gtm1 = get(gg, k - 1, g_prev), get(ggt, k - 1, g_prev)
            val = (kr(a1m @ a2p, pm1 - wm[k]) + w0 / s * kr(np.eye(2), pm1) - x / s * kr(np.eye(2), nm1)
                   + pref * (kp * st * v * kr(a21 @ a1m, pr1 * gm1) - km / st / v * kr(a12 @ a2p, pr2 * gtm1)))
            nm.append(val + (lam * nm[k - 1] if k else 0))
            val = (kr(a1p @ a2m, nm1 - wp[k]) + w0 / s * kr(np.eye(2), nm1) - x / s * kr(np.eye(2), pm1)
                   + pref * (km / st * v * kr(a12 @ a2m, pr2 * gtm1) - kp * st / v * kr(a21 @ a1p, pr1 * gm1)))
            npl.append(val + (lam * npl[k - 1] if k else 0))
            val = (km / tn * pn2 / (kp * s * pr1) * kr(a12 @ a12, gtm1)
                   + w02 / s * kr(v * v / sq * a1m @ a1m + sq / (v * v) * a1p @ a1p, gm1) + w01 * w02 * kr(np.eye(2), gg[k])
                   + km / st * s * pn2 * (sq / v * kr(a12 @ a1p, nm1 - wp[k]) - v / sq * kr(a12 @ a1m, pm1 - wm[k])))
            ng.append(val + (lam * ng[k - 1] if k else lam * g_new * np.eye(2 * dim)))
            # the a21^2 term vanishes in spin 1/2, so its prefactor is immaterial here
            val = (kp * tn * pn1 / (km * s * pr2) * kr(a21 @ a21, gm1)
                   + w01 / s * kr(v * v / sq * a2m @ a2m + sq / (v * v) * a2p @ a2p, gtm1) + w01 * w02 * kr(np.eye(2), ggt[k])
                   + kp * st * s * pn1 * (sq / v * kr(a21 @ a2p, pm1 - wm[k]) - v / sq * kr(a21 @ a2m, nm1 - wp[k])))
            ngt.append(val + (lam * ngt[k - 1] if k else lam * g_new * np.eye(2 * dim)))
        wm, wp, gg, ggt = nm, npl, ng, ngt
        dim *= 2
    return GeneratorFamily(N, wm[:depth + N], wp[:depth + N], gg[:depth + N], ggt[:depth + N])


def blocks_from_generators(tower: CoefficientTower, gens: GeneratorFamily, u):
    """Reassemble the 2x2 blocks (A, B, C, D) of K^{(N)}(u) from the generators."""
    N, sq, s = tower.n, tower.sq, tower.s
    eye = np.eye(2 ** N)
    ep, em = tower.eps()
    f = u * u - 1 / (u * u)
    ps = [tower.p(k, u) for k in range(N)]
    sn = sum(ps[k] * gens.w_minus[k] for k in range(N))
    sp = sum(ps[k] * gens.w_plus[k] for k in range(N))
    a = (u * ep + em / u) * eye + f * (u * sq * sn - sp / (u * sq))
    d = (u * em + ep / u) * eye + f * (u * sq * sp - sn / (u * sq))
    j = tower.j(u)
    cas, b = tower.cas, tower.b
    bb = f / (b.k_minus * (-cas.w02) ** N) * (j * eye + sum(ps[k] * gens.g[k] for k in range(N)) / s)
    cc = f / (b.k_plus * (-cas.w01) ** N) * (j * eye + sum(ps[k] * gens.g_tilde[k] for k in range(N)) / s)
    return a, bb, cc, d


def check_dressed_blocks(params: ModelParams, us, gens=None):
    """Max residual between dressed-matrix blocks and their generator reconstruction."""
    tower = CoefficientTower(params)
    gens = build_generators(params) if gens is None else gens
    worst = 0.0
    for u in us:
        blocks = aux_blocks(dress(u, params).K)
        rec = blocks_from_generators(tower, gens, u)
        worst = max(worst, max(rel_residual(x, y) for x, y in zip(blocks, rec)))
    return worst


def n1_closed_form(params: ModelParams):
    """Explicit one-site generators W_0, W_1, G_1, G~_1."""
    p = params.truncated(1)
    rep = spin_half_rep(p.q, p.ts[0])
    cas = spin_half_casimirs(p.q)
    b = p.boundary
    ep, em, kp, km = b.eps_plus, b.eps_minus, b.k_plus, b.k_minus
    sq, c, s, st, t1, v1 = p.sq, p.c, p.s, rep.st, rep.t, p.vs[0]
    a1p, a1m, a2p, a2m, a12, a21 = (rep.tau1_plus, rep.tau1_minus, rep.tau2_plus, rep.tau2_minus, rep.tau12, rep.tau21)
    w01, w02, w = cas.w01, cas.w02, cas.w
    x = CoefficientTower(p).x_site(1)
    eye = np.eye(2)
    w0 = st * kp * v1 * a21 @ a1m / c - km / (st * v1) * a12 @ a2p / c - ep * a1m @ a2p
    w1 = -st * kp / v1 * a21 @ a1p / c + km * v1 / st * a12 @ a2m / c - em * a1p @ a2m
    common = c * w01 * w02 * em * ep * eye + kp * km * w * x / (w01 * w02 * c) * eye
    g1 = (-w02 / t1 * s * km ** 2 / c * a12 @ a12
          + w02 * s * kp * km / c * (v1 ** 2 / sq * a1m @ a1m + sq / v1 ** 2 * a1p @ a1p)
          - w02 * km / st * s * (-sq / v1 * em * a12 @ a1p + v1 / sq * ep * a12 @ a1m) + common)
    gt1 = (-w01 * t1 * s * kp ** 2 / c * a21 @ a21
           + w01 * s * kp * km / c * (v1 ** 2 / sq * a2m @ a2m + sq / v1 ** 2 * a2p @ a2p)
           - w01 * kp * st * s * (-sq / v1 * ep * a21 @ a2p + v1 / sq * em * a21 @ a2m) + common)
    return w0, w1, g1, gt1


def n1_omega0(params: ModelParams):
    """-(k+ k- w X + c^2 eps+ eps- w_- w_+)/(q - q^-1) for one site."""
    p = params.truncated(1)
    cas = spin_half_casimirs(p.q)
    b = p.boundary
    x = CoefficientTower(p).x_site(1)
    return -(b.k_plus * b.k_minus * cas.w * x + p.c ** 2 * b.eps_plus * b.eps_minus * cas.w_minus * cas.w_plus) / (p.q - 1 / p.q)


def n1_blocks(u, params: ModelParams):
    """Closed-form blocks (A, B, C, D) of the one-site dressed matrix."""
    p = params.truncated(1)
    w0, w1, g1, gt1 = n1_closed_form(p)
    tower = CoefficientTower(p)
    cas, b = tower.cas, p.boundary
    sq, s, c = p.sq, p.s, p.c
    ep1, em1 = tower.eps(1)
    om = n1_omega0(p)
    f = u * u - 1 / (u * u)
    g = tower.g_of(u)
    eye = np.eye(2)
    kk = b.k_plus * b.k_minus * cas.w_minus * cas.w_plus
    a = (u * ep1 + em1 / u) * eye + f * (sq * u * w0 - w1 / (sq * u))
    d = (u * em1 + ep1 / u) * eye + f * (sq * u * w1 - w0 / (sq * u))
    bb = -f / (b.k_minus * cas.w02) * (kk * g / c * eye + g1 / s + om * eye)
    cc = -f / (b.k_plus * cas.w01) * (kk * g / c * eye + gt1 / s + om * eye)
    return a, bb, cc, d


def check_askey_wilson(params: ModelParams, swap_eps=False):
    """Residuals of the two cubic one-site relations.

    [W1,[W1,W0]_q]_{q^-1} = rho W0 + (q - q^-1) omega0 W1 - s k+ k- eps_-^{(1)}
    and its mirror.  ``swap_eps`` exchanges eps_+^{(1)} and eps_-^{(1)} (a control
    that must fail).
    """
    p = params.truncated(1)
    w0, w1, _, _ = n1_closed_form(p)
    tower = CoefficientTower(p)
    cas, b, q, s = tower.cas, p.boundary, p.q, p.s
    qc = q_bracket(q)
    ep1, em1 = tower.eps(1)
    if swap_eps:
        ep1, em1 = em1, ep1
    om = n1_omega0(p)
    kk = b.k_plus * b.k_minus * cas.w_minus * cas.w_plus
    rho = s * s * kk
    eye = np.eye(2)
    r1 = rel_residual(qc(w1, qc(w1, w0), -1), rho * w0 + (q - 1 / q) * om * w1 - s * kk * em1 * eye)
    r2 = rel_residual(qc(w0, qc(w0, w1), -1), rho * w1 + (q - 1 / q) * om * w0 - s * kk * ep1 * eye)
    return max(r1, r2)


def q_dolan_grady_residual(gens: GeneratorFamily, q, rho0):
    """[A,[A,[A,B]_q]_{q^-1}] = rho0 [A,B] for (A,B) = (W0,W1) and (W1,W0)."""
    qc = q_bracket(q)
    w0, w1 = gens.W(0), gens.W(1)
    r1 = rel_residual(commutator(w0, qc(w0, qc(w0, w1), -1)), rho0 * commutator(w0, w1))
    r2 = rel_residual(commutator(w1, qc(w1, qc(w1, w0), -1)), rho0 * commutator(w1, w0))
    return max(r1, r2)


def commutator_residual(a, b):
    """||[a, b]|| / max(1, ||a|| ||b||)."""
    return float(np.linalg.norm(commutator(a, b)) / max(1.0, np.linalg.norm(a) * np.linalg.norm(b)))


def relation_residuals(gens: GeneratorFamily, params: ModelParams, depth=None):
    """Residual groups of the algebra relations among generators up to ``depth``.

    Groups: ``commuting`` (within each family), ``exchange`` (symmetric
    commutator exchange between families), ``q_brackets``, ``g_tilde_g``
    (G~ G identity with prefactor s rho/c), ``lowest_order`` and ``closure``.
    ``g_tilde_g_s3_prefactor`` repeats the G~ G identity with prefactor
    s^3/c, which is off by k+ k-, and is reported but not a relation.
    """
    N = gens.n_sites
    K = N + 1 if depth is None else depth
    tower = CoefficientTower(params.truncated(N))
    q, s, c = params.q, params.s, params.c
    qc = q_bracket(q)
    cm = commutator
    W, G, Gt = gens.W, gens.G, gens.Gt
    out = {}
    fams = (gens.w_minus, gens.w_plus, gens.g, gens.g_tilde)
    out["commuting"] = max(commutator_residual(f[k], f[l]) for f in fams for k in range(K) for l in range(K))
    pairs = []
    for k in range(K):
        for l in range(K):
            pairs += [
                (cm(W(-k), W(l + 1)), cm(W(-l), W(k + 1))),
                (cm(W(-k), G(l + 1)), cm(W(-l), G(k + 1))),
                (cm(W(-k), Gt(l + 1)), cm(W(-l), Gt(k + 1))),
                (cm(W(k + 1), G(l + 1)), cm(W(l + 1), G(k + 1))),
                (cm(W(k + 1), Gt(l + 1)), cm(W(l + 1), Gt(k + 1))),
                (cm(G(k + 1), Gt(l + 1)), cm(G(l + 1), Gt(k + 1))),
            ]
    out["exchange"] = max(rel_residual(a, b) for a, b in pairs)
    qb = []
    for k in range(1, K):
        for l in range(1, K):
            qb += [
                rel_residual(qc(W(k) - W(-k), G(l)), qc(W(l) - W(-l), G(k))),
                rel_residual(qc(W(k) - W(-k), Gt(l), -1), qc(W(l) - W(-l), Gt(k), -1)),
                rel_residual(qc(W(1 - k) - W(k + 1), G(l), -1), qc(W(1 - l) - W(l + 1), G(k), -1)),
                rel_residual(qc(W(1 - k) - W(k + 1), Gt(l)), qc(W(1 - l) - W(l + 1), Gt(k))),
            ]
    out["q_brackets"] = max(qb) if qb else 0.0
    rho = tower.rho0()
    for key, pref in (("g_tilde_g", s * rho / c), ("g_tilde_g_s3_prefactor", s ** 3 / c)):
        out[key] = max((rel_residual(Gt(l) @ G(k) - Gt(k) @ G(l), pref * (cm(W(k), W(-l)) + cm(W(-k), W(l))))
                        for k in range(1, K) for l in range(1, K) if k != l), default=0.0)
    out["lowest_order"] = max(
        rel_residual(W(2), W(0) - qc(W(1), G(1), -1) / rho),
        rel_residual(W(-1), W(1) + qc(W(0), G(1)) / rho),
        rel_residual(G(1), qc(W(1), W(0))),
        rel_residual(Gt(1), qc(W(0), W(1))),
    )
    out["closure"] = closure_residual(gens, tower)
    return out


def closure_residual(gens: GeneratorFamily, tower: CoefficientTower, n_shifts=None):
    """a_0 F_l + sum_k s^{k-1} C_{k-1} F_{k+l} + eps = 0 for each family F and shift l."""
    N = tower.n
    a0, ak = tower.closure_coeffs()
    eps = tower.eps()
    eye = np.eye(2 ** N)
    L = len(gens.w_minus) - N if n_shifts is None else n_shifts
    worst = 0.0
    for fam, e_of in ((gens.w_minus, lambda l: eps[l % 2]), (gens.w_plus, lambda l: eps[(l + 1) % 2]),
                      (gens.g, lambda l: 0.0), (gens.g_tilde, lambda l: 0.0)):
        for l in range(L):
            terms = [a0 * fam[l]] + [ak[k - 1] * fam[k + l] for k in range(1, N + 1)] + [e_of(l) * eye]
            scale = max(1.0, max(np.linalg.norm(t) for t in terms))
            worst = max(worst, float(np.linalg.norm(sum(terms)) / scale))
    return worst


def charges(gens: GeneratorFamily, params: ModelParams):
    """I_{2k+1} = kappa W_{-k} + kappa* W_{k+1} + (kappa_+/k_+) G~_{k+1} + (kappa_-/k_-) G_{k+1}, k < N."""
    b = params.boundary
    return [b.kappa * gens.w_minus[k] + b.kappa_star * gens.w_plus[k]
            + b.kappa_plus / b.k_plus * gens.g_tilde[k] + b.kappa_minus / b.k_minus * gens.g[k]
            for k in range(gens.n_sites)]


def two_term_w(params: ModelParams, which=0):
    """W_0 (which=0) or W_1 (which=1) at v_n = 1 by the two-term site recursion.

    W^{(n)} = (k_+ t_n^{1/2} sigma_+ + k_-/t_n^{1/2} sigma_-) x 1 + q^{+-sigma_3/2} x W^{(n-1)}.
    """
    b = params.boundary
    sq = params.sq
    x = np.array([[b.eps_plus if which == 0 else b.eps_minus]], dtype=complex)
    qs = np.diag([sq, 1 / sq]) if which == 0 else np.diag([1 / sq, sq])
    for t in params.ts:
        st = np.sqrt(complex(t))
        loc = b.k_plus * st * SIGMA_PLUS + b.k_minus / st * SIGMA_MINUS
        x = np.kron(loc, np.eye(x.shape[0])) + np.kron(qs, x)
    return x
