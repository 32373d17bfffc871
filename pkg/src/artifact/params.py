"""Model parameters and generic random sampling."""
from dataclasses import dataclass, field, replace

import numpy as np


@dataclass(frozen=True)
class BoundaryParams:
    eps_plus: complex = 1.0
    eps_minus: complex = 1.0
    k_plus: complex = 0.0
    k_minus: complex = 0.0
    kappa: complex = 1.0
    kappa_star: complex = 1.0
    kappa_plus: complex = 0.0
    kappa_minus: complex = 0.0

    def as_dict(self):
        return {k: complex(v) for k, v in self.__dict__.items()}


@dataclass(frozen=True)
class ModelParams:
    """q, per-site twists t_n and inhomogeneities v_n (site 1 first), boundary."""
    q: complex
    ts: tuple = ()
    vs: tuple = ()
    boundary: BoundaryParams = field(default_factory=BoundaryParams)

    def __post_init__(self):
        if self.q == 0:
            raise ValueError("q must be nonzero")
        if len(self.ts) != len(self.vs):
            raise ValueError("ts and vs must have equal length")
        if any(x == 0 for x in self.ts) or any(x == 0 for x in self.vs):
            raise ValueError("twists and inhomogeneities must be nonzero")

    @property
    def n_sites(self):
        return len(self.ts)

    @property
    def sq(self):
        return np.sqrt(complex(self.q))

    @property
    def s(self):
        """q^{1/2} + q^{-1/2}"""
        return self.sq + 1 / self.sq

    @property
    def c(self):
        """q^{1/2} - q^{-1/2}"""
        return self.sq - 1 / self.sq

    def truncated(self, n):
        return replace(self, ts=tuple(self.ts[:n]), vs=tuple(self.vs[:n]))

    def with_boundary(self, **kw):
        return replace(self, boundary=replace(self.boundary, **kw))


def generic_complex(rng, lo=0.7, hi=1.4):
    """Random complex number with modulus in [lo, hi] and uniform phase."""
    return complex(rng.uniform(lo, hi) * np.exp(1j * rng.uniform(0, 2 * np.pi)))


def sample_q(rng, lo=0.7, hi=1.4):
    """Generic q away from q = 1 and from zeros of q^{1/2} +- q^{-1/2}."""
    while True:
        q = generic_complex(rng, lo, hi)
        sq = np.sqrt(q)
        if abs(q - 1) > 0.05 and abs(sq + 1 / sq) > 0.3 and abs(sq - 1 / sq) > 0.1:
            return q


def sample_spectral(rng, lo=0.7, hi=1.4):
    """Generic spectral parameter with |u^2 - 1| >= 0.05."""
    while True:
        u = generic_complex(rng, lo, hi)
        if abs(u * u - 1) > 0.05:
            return u


def sample_twist(rng, mode="unimodular"):
    if mode == "unimodular":
        return complex(np.exp(1j * rng.uniform(0, 2 * np.pi)))
    if mode == "generic":
        return generic_complex(rng)
    raise ValueError(f"unknown twist mode {mode!r}")


def sample_boundary(rng):
    vals = [generic_complex(rng) for _ in range(8)]
    return BoundaryParams(*vals)


def sample_model(rng, n_sites, twist_mode="unimodular", inhomogeneous=True, q=None):
    q = sample_q(rng) if q is None else q
    ts = tuple(sample_twist(rng, twist_mode) for _ in range(n_sites))
    if inhomogeneous:
        vs = tuple(generic_complex(rng) for _ in range(n_sites))
    else:
        vs = (1.0,) * n_sites
    return ModelParams(q=q, ts=ts, vs=vs, boundary=sample_boundary(rng))
