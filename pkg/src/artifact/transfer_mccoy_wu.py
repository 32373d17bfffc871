"""Double-row transfer matrix, its charge decomposition and the open twisted XXZ Hamiltonian."""
import numpy as np

from .boundary import build_kplus_c, dress
from .linalg_core import SIGMA_3, SIGMA_MINUS, SIGMA_PLUS, aux_blocks, embed_site, rel_residual, scaled_residual
from .params import ModelParams
from .q_onsager import CoefficientTower, build_generators, charges, commutator_residual


def transfer(u, params: ModelParams):
    """t(u) = tr_aux K_+^c(u) K_-^{(N)}(u)."""
    k = dress(u, params).K
    kp = build_kplus_c(u, params.boundary, params.q)
    blocks = aux_blocks(k)  # A, B, C, D
    return kp[0, 0] * blocks[0] + kp[0, 1] * blocks[2] + kp[1, 0] * blocks[1] + kp[1, 1] * blocks[3]


def check_commuting(params: ModelParams, u, v):
    return commutator_residual(transfer(u, params), transfer(v, params))


def scalar_part(u, tower: CoefficientTower):
    """Identity coefficient F(u) of the charge decomposition."""
    b, s, q, N = tower.b, tower.s, tower.q, tower.n
    ep, em = tower.eps()
    f = u * u - 1 / (u * u)
    h = q * u * u - 1 / (q * u * u)
    g = tower.g_of(u)
    cas = tower.cas
    bnd = b.kappa_plus / (b.k_plus * (-cas.w01) ** N) + b.kappa_minus / (b.k_minus * (-cas.w02) ** N)
    return (s * (b.kappa_star * ep + b.kappa * em) + g * (b.kappa * ep + b.kappa_star * em)
            + s * f * h * bnd * tower.j(u))


def decomposition(u, params: ModelParams, gens=None, h_exponent=1):
    """F(u) I + f(u) h(u) sum_k P_{-k}(u) I_{2k+1}, h(u) = q u^2 - q^{-e} u^{-2}.

    ``h_exponent`` = 1 gives the correct weight; 2 is kept as a control.
    """
    tower = CoefficientTower(params)
    gens = build_generators(params) if gens is None else gens
    qs = charges(gens, params)
    N, q = tower.n, params.q
    f = u * u - 1 / (u * u)
    h = q * u * u - q ** (-h_exponent) / (u * u)
    return scalar_part(u, tower) * np.eye(2 ** N) + f * h * sum(tower.p(k, u) * qs[k] for k in range(N))


def check_decomposition(params: ModelParams, us, h_exponent=1):
    gens = build_generators(params)
    return max(rel_residual(transfer(u, params), decomposition(u, params, gens, h_exponent)) for u in us)


def t_at_one_expected(params: ModelParams):
    """c^{2N} s (eps_+ + eps_-)(kappa + kappa*) for v_n = 1."""
    b = params.boundary
    return params.c ** (2 * params.n_sites) * params.s * (b.eps_plus + b.eps_minus) * (b.kappa + b.kappa_star)


def homogeneous(params: ModelParams):
    return ModelParams(q=params.q, ts=params.ts, vs=(1.0,) * params.n_sites, boundary=params.boundary)


def check_t_at_one(params: ModelParams):
    """Scaled residual of t(1) against a multiple of I (t(1) has a small norm)."""
    p = homogeneous(params)
    return scaled_residual(transfer(1.0, p), t_at_one_expected(p) * np.eye(2 ** p.n_sites))


def anisotropy(q):
    sq = np.sqrt(complex(q))
    return (sq + 1 / sq) / 2


def _check_denominators(b):
    if b.eps_plus + b.eps_minus == 0:
        raise ValueError("degenerate boundary: eps_plus + eps_minus = 0 (site-1 field denominator)")
    if b.kappa + b.kappa_star == 0:
        raise ValueError("degenerate boundary: kappa + kappa_star = 0 (site-N field denominator)")


def mccoy_wu_hamiltonian(params: ModelParams, with_boundary=True):
    """Open XXZ chain with site twists t_n and non-diagonal boundary fields (site 1 rightmost)."""
    N = params.n_sites
    if N < 1:
        raise ValueError("need at least one site")
    b = params.boundary
    c, s = params.c, params.s
    delta = (params.sq + 1 / params.sq) / 2
    st = np.sqrt(np.asarray(params.ts, dtype=complex))
    op = lambda m, k: embed_site(m, k, N)
    h = np.zeros((2 ** N, 2 ** N), dtype=complex)
    for k in range(1, N):
        h += (2 * st[k] / st[k - 1] * op(SIGMA_PLUS, k + 1) @ op(SIGMA_MINUS, k)
              + 2 * st[k - 1] / st[k] * op(SIGMA_MINUS, k + 1) @ op(SIGMA_PLUS, k)
              + delta * op(SIGMA_3, k + 1) @ op(SIGMA_3, k))
    if not with_boundary:
        return h
    _check_denominators(b)
    h += c / (b.kappa + b.kappa_star) * ((b.kappa - b.kappa_star) / 2 * op(SIGMA_3, N)
                                         + 2 * s * (st[-1] * b.kappa_plus * op(SIGMA_PLUS, N)
                                                    + b.kappa_minus / st[-1] * op(SIGMA_MINUS, N)))
    h += c / (b.eps_plus + b.eps_minus) * ((b.eps_plus - b.eps_minus) / 2 * op(SIGMA_3, 1)
                                           + 2 / c * (st[0] * b.k_plus * op(SIGMA_PLUS, 1)
                                                      + b.k_minus / st[0] * op(SIGMA_MINUS, 1)))
    return h


def boundary_fields(params: ModelParams):
    """(hz, h+, h-) on site N and on site 1 at t_n = 1, as fed to ``open_xxz_reference``."""
    b, c, s = params.boundary, params.c, params.s
    _check_denominators(b)
    right = c / (b.kappa + b.kappa_star)
    left = c / (b.eps_plus + b.eps_minus)
    return ((right * (b.kappa - b.kappa_star) / 2, right * 2 * s * b.kappa_plus, right * 2 * s * b.kappa_minus),
            (left * (b.eps_plus - b.eps_minus) / 2, 2 * b.k_plus / (b.eps_plus + b.eps_minus),
             2 * b.k_minus / (b.eps_plus + b.eps_minus)))


def open_xxz_reference(n_sites, delta, field_last=(0, 0, 0), field_first=(0, 0, 0)):
    """Open XXZ Hamiltonian assembled from matrix elements on basis states.

    H = sum_k (sx sx + sy sy + delta sz sz)_{k,k+1} + hz sz + h+ s+ + h- s- on the
    last and first sites.  Bit (k-1) of a basis index (counted from the
    least significant end) is site k; bit value 0 means spin up.
    """
    dim = 2 ** n_sites
    h = np.zeros((dim, dim), dtype=complex)
    spin = lambda x, k: 1 - 2 * ((x >> (k - 1)) & 1)
    for x in range(dim):
        for k in range(1, n_sites):
            a, b = spin(x, k), spin(x, k + 1)
            h[x, x] += delta * a * b
            if a != b:
                h[x ^ (1 << (k - 1)) ^ (1 << k), x] += 2.0
        for site, (hz, hp, hm) in ((n_sites, field_last), (1, field_first)):
            sg = spin(x, site)
            h[x, x] += hz * sg
            flipped = x ^ (1 << (site - 1))
            if sg == -1:
                h[flipped, x] += hp  # sigma_+ raises down to up
            else:
                h[flipped, x] += hm
    return h


def check_open_xxz_limit(params: ModelParams):
    """McCoy-Wu Hamiltonian at t_n = 1 against the independent basis-state construction."""
    p = ModelParams(q=params.q, ts=(1.0,) * params.n_sites, vs=params.vs, boundary=params.boundary)
    right, left = boundary_fields(p)
    ref = open_xxz_reference(p.n_sites, anisotropy(p.q), right, left)
    return rel_residual(mccoy_wu_hamiltonian(p), ref)


def log_derivative_at_one(params: ModelParams, steps=(1e-3, 5e-4)):
    """t(1)^{-1} dt/du at u = 1 by Richardson-extrapolated central differences."""
    p = homogeneous(params)
    t1 = transfer(1.0, p)
    d = [np.linalg.solve(t1, (transfer(1 + h, p) - transfer(1 - h, p)) / (2 * h)) for h in steps]
    r = (steps[0] / steps[1]) ** 2
    return (r * d[1] - d[0]) / (r - 1)


def check_hamiltonian_derivation(params: ModelParams, steps=(1e-3, 5e-4)):
    """t(1)^{-1} t'(1) = (c/s + 2 N delta/c) I + (2/c) H."""
    p = homogeneous(params)
    N, c, s = p.n_sites, p.c, p.s
    h = mccoy_wu_hamiltonian(p)
    rhs = (c / s + 2 * N * anisotropy(p.q) / c) * np.eye(2 ** N) + 2 / c * h
    return rel_residual(log_derivative_at_one(p, steps), rhs)


def check_charge_conservation(params: ModelParams):
    """max_k ||[H, I_{2k+1}]|| relative to ||H|| ||I||, at v_n = 1."""
    p = homogeneous(params)
    h = mccoy_wu_hamiltonian(p)
    return max(commutator_residual(h, x) for x in charges(build_generators(p), p))


def diagonalize(h):
    """Eigenvalues sorted by real part, then imaginary part."""
    ev = np.linalg.eigvals(h)
    return ev[np.lexsort((ev.imag, ev.real))]


def check_twist_gauge(params: ModelParams):
    """Spectrum with twists t_n equals the spectrum at t_n = 1 (diagonal gauge)."""
    p1 = ModelParams(q=params.q, ts=(1.0,) * params.n_sites, vs=params.vs, boundary=params.boundary)
    a = diagonalize(mccoy_wu_hamiltonian(params))
    b = diagonalize(mccoy_wu_hamiltonian(p1))
    return rel_residual(a, b)
