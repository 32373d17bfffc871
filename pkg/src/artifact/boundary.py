"""c-number boundary matrices, reflection-equation checks and Sklyanin dressing."""
from dataclasses import dataclass

import numpy as np

from .lax_algebra import build_lax, build_lax_tilde, spin_half_rep
from .linalg_core import I2, attach_site, aux_blocks, embed_aux, rel_residual
from .params import BoundaryParams, ModelParams
from .yang_baxter import build_r, build_r21


def _c(q):
    sq = np.sqrt(complex(q))
    return sq - 1 / sq


def build_kminus_c(u, p: BoundaryParams, q):
    """[[u e+ + e-/u, (k+/c) f], [(k-/c) f, u e- + e+/u]] with f = u^2 - u^-2."""
    if u == 0:
        raise ValueError("u must be nonzero")
    c = _c(q)
    if abs(c) < 1e-14:
        raise ValueError("q = +-1 makes q^{1/2} - q^{-1/2} vanish")
    f = u * u - 1 / (u * u)
    return np.array([[u * p.eps_plus + p.eps_minus / u, p.k_plus / c * f],
                     [p.k_minus / c * f, u * p.eps_minus + p.eps_plus / u]], dtype=complex)


def build_kplus_c(u, p: BoundaryParams, q):
    """Diagonal q^{1/2}u kappa + q^{-1/2}kappa*/u (and mirror), off-diagonal kappa_{+-} s (q u^2 - q^-1 u^-2)."""
    if u == 0:
        raise ValueError("u must be nonzero")
    sq = np.sqrt(complex(q))
    h = (sq + 1 / sq) * (q * u * u - 1 / (q * u * u))
    return np.array([[sq * u * p.kappa + p.kappa_star / (sq * u), p.kappa_plus * h],
                     [p.kappa_minus * h, sq * u * p.kappa_star + p.kappa / (sq * u)]], dtype=complex)


def dualize(kminus_of, q, m=None):
    """Return u -> K_-^T(q^{-1/2} u^{-1}) M."""
    m = I2 if m is None else np.asarray(m, dtype=complex)
    sq = np.sqrt(complex(q))
    return lambda u: kminus_of(1 / (sq * u)).T @ m


def dual_boundary_map(p: BoundaryParams, q):
    """Plus-boundary constants reproducing dualize(K_-^c) exactly as a K_+^c."""
    sq = np.sqrt(complex(q))
    cs = (sq - 1 / sq) * (sq + 1 / sq)
    return BoundaryParams(eps_plus=p.eps_plus, eps_minus=p.eps_minus, k_plus=p.k_plus, k_minus=p.k_minus,
                          kappa=p.eps_minus, kappa_star=p.eps_plus,
                          kappa_plus=-p.k_minus / cs, kappa_minus=-p.k_plus / cs)


def _re_sides(ku, kv, ra, rb, rc, rd):
    dq = ku.shape[0] // 2
    lift = lambda r: np.kron(r, np.eye(dq))
    k1 = embed_aux(ku, 1, dq)
    k2 = embed_aux(kv, 2, dq)
    return lift(ra) @ k1 @ lift(rb) @ k2, k2 @ lift(rc) @ k1 @ lift(rd)


def reflection_sides(k_of, q, t, u, v):
    """Both sides of R12(u/v) K^1(u) R21(uv) K^2(v) = K^2(v) R12(uv) K^1(u) R21(u/v)."""
    return _re_sides(k_of(u), k_of(v), build_r(u / v, q, t), build_r21(u * v, q, t),
                     build_r(u * v, q, t), build_r21(u / v, q, t))


def check_reflection(k_of, q, t, u, v):
    """Relative residual of the reflection equation; ``k_of`` maps u to a (2d, 2d) array."""
    lhs, rhs = reflection_sides(k_of, q, t, u, v)
    return rel_residual(lhs, rhs)


def check_reflection_transposed(k_of, q, t, u, v):
    """Arrangement with R^{t1 t2} in the second and fourth slots (R12 only).

    The twisted R is a symmetric matrix, so R^{t1 t2} = R12; this form
    therefore agrees with the standard one only when t = 1.
    """
    full_t = lambda x: build_r(x, q, t).T
    lhs, rhs = _re_sides(k_of(u), k_of(v), build_r(u / v, q, t), full_t(u * v),
                         build_r(u * v, q, t), full_t(u / v))
    return rel_residual(lhs, rhs)


def check_dual_reflection(kplus_of, q, t, u, v):
    """R12(v/u) K^{t}_1(u) R21(1/(quv)) K^{t}_2(v) = K^{t}_2(v) R12(1/(quv)) K^{t}_1(u) R21(v/u), M = I."""
    x = 1 / (q * u * v)
    a = np.kron(kplus_of(u).T, I2)
    b = np.kron(I2, kplus_of(v).T)
    lhs = build_r(v / u, q, t) @ a @ build_r21(x, q, t) @ b
    rhs = b @ build_r(x, q, t) @ a @ build_r21(v / u, q, t)
    return rel_residual(lhs, rhs)


def check_dual_reflection_transposed(kplus_of, q, t, u, v):
    """Dual equation with R^{t1 t2} in the transposed slots and K_+ on both sides."""
    x = 1 / (q * u * v)
    a = np.kron(kplus_of(u).T, I2)
    b = np.kron(I2, kplus_of(v).T)
    lhs = build_r(v / u, q, t) @ a @ build_r(x, q, t).T @ b
    rhs = b @ build_r(x, q, t) @ a @ build_r(v / u, q, t).T
    return rel_residual(lhs, rhs)


# (row, col) of the 4x4 reflection-equation residual carrying each scalar component
SIXTEEN_ENTRIES = [(0, 0), (3, 3), (1, 1), (2, 2), (1, 2), (2, 1), (1, 0), (2, 3),
                   (0, 1), (3, 2), (1, 3), (2, 0), (0, 2), (3, 1), (0, 3), (3, 0)]


def sixteen_components(k_of, q, t, u, v):
    """Sixteen block residuals of the reflection equation, in the scalar-equation order."""
    lhs, rhs = reflection_sides(k_of, q, t, u, v)
    d = lhs.shape[0] // 4
    scale = max(1.0, np.linalg.norm(lhs), np.linalg.norm(rhs))
    diff = lhs - rhs
    return [float(np.linalg.norm(diff[i * d:(i + 1) * d, j * d:(j + 1) * d]) / scale) for i, j in SIXTEEN_ENTRIES]


def sixteen_equations(ku, kv, q, u, v, ordered=True):
    """Evaluate the sixteen component equations written in block entries.

    Components are numbered 1..16 in ``SIXTEEN_ENTRIES`` order.  With
    ``ordered=False`` an alternative operator ordering is used: components 5
    and 6 take D D' and A A' in place of D' D and A' A, and 13 and 14 take B'A
    and C'D in place of B A' and C D'.  The alternatives agree for c-number K
    but fail for operator-valued K.
    """
    sq = np.sqrt(complex(q))
    c = sq - 1 / sq
    a = lambda x: sq * x - 1 / (sq * x)
    b = lambda x: x - 1 / x
    am, ap, bm, bp = a(u / v), a(u * v), b(u / v), b(u * v)
    A, B, C, D = aux_blocks(ku)
    A_, B_, C_, D_ = aux_blocks(kv)
    cm = lambda x, y: x @ y - y @ x
    if ordered:
        e5 = [c * bp * (D @ A_ - D_ @ A), bm * c * (A @ A_ - D_ @ D), bm * ap * cm(B, C_)]
        e6 = [c * bp * (A @ D_ - A_ @ D), bm * c * (D @ D_ - A_ @ A), bm * ap * cm(C, B_)]
        last13, last14 = B @ A_, C @ D_
    else:
        e5 = [c * bp * (D @ A_ - D_ @ A), bm * c * (A @ A_ - D @ D_), bm * ap * cm(B, C_)]
        e6 = [c * bp * (A @ D_ - A_ @ D), bm * c * (D @ D_ - A @ A_), bm * ap * cm(C, B_)]
        last13, last14 = B_ @ A, C_ @ D
    eqs = [
        [am * c * (B @ C_ - B_ @ C), am * ap * cm(A, A_)],
        [am * c * (C @ B_ - C_ @ B), am * ap * cm(D, D_)],
        [bm * bp * cm(A, D_), c * c * cm(D, D_), c * ap * (C @ B_ - C_ @ B)],
        [bm * bp * cm(D, A_), c * c * cm(A, A_), c * ap * (B @ C_ - B_ @ C)],
        e5, e6,
        [bm * bp * A @ C_, c * c * D @ C_, c * ap * C @ A_, -am * ap * C_ @ A, -am * c * D_ @ C],
        [bm * bp * D @ B_, c * c * A @ B_, c * ap * B @ D_, -am * ap * B_ @ D, -am * c * A_ @ B],
        [bm * bp * B_ @ A, c * c * B_ @ D, c * ap * A_ @ B, -am * ap * A @ B_, -am * c * B @ D_],
        [bm * bp * C_ @ D, c * c * C_ @ A, c * ap * D_ @ C, -am * ap * D @ C_, -am * c * C @ A_],
        [bm * ap * B @ D_, c * bp * D @ B_, bm * c * A @ B_, -am * bp * D_ @ B],
        [bm * ap * C @ A_, c * bp * A @ C_, bm * c * D @ C_, -am * bp * A_ @ C],
        [bm * ap * A_ @ B, c * bp * B_ @ A, bm * c * B_ @ D, -am * bp * last13],
        [bm * ap * D_ @ C, c * bp * C_ @ D, bm * c * C_ @ A, -am * bp * last14],
        [am * bp * cm(B, B_)],
        [am * bp * cm(C, C_)],
    ]
    out = []
    for terms in eqs:
        scale = max(1.0, max(np.linalg.norm(x) for x in terms))
        out.append(float(np.linalg.norm(sum(terms)) / scale))
    return out


@dataclass(frozen=True)
class DressedK:
    n_sites: int
    u: complex
    K: np.ndarray

    def blocks(self):
        return aux_blocks(self.K)


def dress_matrix(k0, u, params: ModelParams):
    """L_N(u v_N) ... L_1(u v_1) K0 L~_1(v_1/u) ... L~_N(v_N/u); site N is the leftmost quantum factor."""
    x = np.asarray(k0, dtype=complex)
    dq = x.shape[0] // 2
    for t, v in zip(params.ts, params.vs):
        rep = spin_half_rep(params.q, t)
        lax = np.kron(build_lax(u * v, rep), np.eye(dq))
        lax_t = np.kron(build_lax_tilde(v / u, rep), np.eye(dq))
        x = lax @ attach_site(x, dq) @ lax_t
        dq *= 2
    return x


def dress(u, params: ModelParams, k0=None):
    """Dressed K_-^{(N)}(u) with N = params.n_sites; ``k0`` defaults to K_-^c(u)."""
    if u == 0:
        raise ValueError("u must be nonzero")
    k0 = build_kminus_c(u, params.boundary, params.q) if k0 is None else k0
    return DressedK(n_sites=params.n_sites, u=complex(u), K=dress_matrix(k0, u, params))


def dressed_k_of(params: ModelParams):
    return lambda u: dress(u, params).K
