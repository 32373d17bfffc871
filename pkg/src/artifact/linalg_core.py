"""Dense complex matrix helpers shared by every other module.

Conventions
-----------
* Site 1 is the rightmost Kronecker factor of the quantum space, so a
  product L_N ... L_1 reads left to right as written.
* An operator on (auxiliary 2-dim space) x (quantum space) is stored as one
  dense array of shape (2d, 2d) whose 2x2 grid of d x d blocks are the
  quantum-space entries, i.e. the auxiliary space is the leftmost factor.
"""
from functools import reduce

import numpy as np

SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_3 = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)

# swap of two 2-dim factors
SWAP = np.zeros((4, 4), dtype=complex)
for _i in range(2):
    for _j in range(2):
        SWAP[2 * _i + _j, 2 * _j + _i] = 1.0


def kron(*mats):
    """Kronecker product of any number of matrices (left to right)."""
    return reduce(np.kron, [np.asarray(m, dtype=complex) for m in mats])


def embed_site(op, site, n_sites):
    """Place a 2x2 ``op`` on ``site`` (1-based) of an ``n_sites`` chain."""
    if not 1 <= site <= n_sites:
        raise ValueError(f"site {site} out of range 1..{n_sites}")
    factors = [I2] * n_sites
    factors[n_sites - site] = np.asarray(op, dtype=complex)
    return kron(*factors)


def identity(n_sites):
    return np.eye(2 ** n_sites, dtype=complex)


def rel_residual(a, b):
    """||a - b||_F / max(1, ||a||_F, ||b||_F)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    diff = np.linalg.norm(a - b)
    if diff == 0.0:
        return 0.0
    return float(diff / max(1.0, np.linalg.norm(a), np.linalg.norm(b)))


def scaled_residual(a, b):
    """||a - b||_F / max(||a||_F, ||b||_F); for quantities with tiny norm."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(a - b) / scale)


def commutator(a, b):
    return a @ b - b @ a


def permute_factors(dims, perm):
    """Permutation matrix sending factor ``perm[k]`` of ``dims`` to slot k."""
    n = int(np.prod(dims))
    x = np.eye(n, dtype=complex).reshape(list(dims) + [n])
    return x.transpose(list(perm) + [len(dims)]).reshape(n, n)


def aux_blocks(x):
    """Split a (2d, 2d) auxiliary-space operator into its four d x d blocks."""
    d = x.shape[0] // 2
    return x[:d, :d], x[:d, d:], x[d:, :d], x[d:, d:]


def from_blocks(a, b, c, d):
    return np.block([[a, b], [c, d]])


def aux_trace(x):
    """Partial trace over the auxiliary (leftmost, 2-dim) factor."""
    a, _, _, d = aux_blocks(x)
    return a + d


def embed_aux(x, slot, dq):
    """Lift an operator on aux x Q(dq) to aux1 x aux2 x Q, acting in ``slot``."""
    full = np.kron(x, I2)  # aux, Q, aux'
    perm = permute_factors([2, dq, 2], [0, 2, 1])
    full = perm @ full @ perm.T
    if slot == 2:
        swap = np.kron(SWAP, np.eye(dq))
        full = swap @ full @ swap
    elif slot != 1:
        raise ValueError("slot must be 1 or 2")
    return full


def attach_site(x, dq):
    """Lift an operator on aux x Q(dq) to aux x site x Q (new site leftmost in Q)."""
    full = np.kron(x, I2)
    perm = permute_factors([2, dq, 2], [0, 2, 1])
    return perm @ full @ perm.T


def partial_transpose(m, which):
    """Transpose a 4x4 two-factor matrix in factor 1 or 2."""
    t = m.reshape(2, 2, 2, 2)
    if which == 1:
        t = t.transpose(2, 1, 0, 3)
    elif which == 2:
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError("which must be 1 or 2")
    return t.reshape(4, 4)


def on_pair(m, pair):
    """Embed a 4x4 matrix on factors (1,2), (1,3) or (2,3) of three 2-dim spaces."""
    if pair == (1, 2):
        return np.kron(m, I2)
    if pair == (2, 3):
        return np.kron(I2, m)
    if pair == (1, 3):
        p23 = np.kron(I2, SWAP)
        return p23 @ np.kron(m, I2) @ p23
    raise ValueError(f"unsupported pair {pair}")
