"""Run configuration, verification suites, reports and the command-line entry point.

Every suite draws its random samples from its own generator, seeded by
(config seed, suite index), so reports do not depend on which suites run
together or on the worker count (``ARTIFACT_WORKERS``).
"""
import argparse
import csv
import json
import os
import platform
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import boundary as bd
from . import lax_algebra as lx
from . import q_onsager as qo
from . import transfer_mccoy_wu as tr
from . import yang_baxter as yb
from .linalg_core import rel_residual
from .params import BoundaryParams, ModelParams, generic_complex, sample_boundary, sample_q, sample_spectral, sample_twist

SCHEMA_VERSION = "1"
WORKERS_ENV = "ARTIFACT_WORKERS"
SUITES = ("ybe", "rll", "algebra", "reflection", "dressing", "onsager", "transfer", "hamiltonian", "spectrum")
CONFIG_KEYS = ("n_sites", "depth", "q_sampling", "twist_mode", "inhomogeneity_mode", "boundary", "seed",
               "tolerance_overrides", "suites")


class ConfigError(ValueError):
    pass


def _parse_complex(x):
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ConfigError(f"complex values are [re, im], got {x!r}")
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, (int, float)):
        return complex(x)
    raise ConfigError(f"not a number: {x!r}")


def _dump_complex(z):
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class RunConfig:
    n_sites: int = 6
    depth: int = None
    q_sampling: dict = field(default_factory=lambda: {"lo": 0.7, "hi": 1.4, "count": 20})
    twist_mode: object = "unimodular"
    inhomogeneity_mode: object = "random"
    boundary: object = "random"
    seed: int = 0
    tolerance_overrides: dict = field(default_factory=dict)
    suites: list = field(default_factory=lambda: list(SUITES))

    def __post_init__(self):
        if not isinstance(self.n_sites, int) or not 1 <= self.n_sites <= 10:
            raise ConfigError("n_sites must be an integer in 1..10")
        if self.depth is not None and (not isinstance(self.depth, int) or self.depth < 1):
            raise ConfigError("depth must be a positive integer")
        qs = dict(self.q_sampling)
        unknown = set(qs) - {"lo", "hi", "count", "value"}
        if unknown:
            raise ConfigError(f"unknown q_sampling keys {sorted(unknown)}")
        qs.setdefault("lo", 0.7)
        qs.setdefault("hi", 1.4)
        qs.setdefault("count", 20)
        if not 0 < qs["lo"] <= qs["hi"]:
            raise ConfigError("q_sampling needs 0 < lo <= hi")
        if int(qs["count"]) < 1:
            raise ConfigError("q_sampling.count must be positive")
        if "value" in qs:
            qs["value"] = _parse_complex(qs["value"])
        self.q_sampling = qs
        for name, allowed in (("twist_mode", ("unimodular", "generic")), ("inhomogeneity_mode", ("ones", "random"))):
            mode = getattr(self, name)
            if isinstance(mode, list):
                setattr(self, name, [_parse_complex(x) for x in mode])
            elif mode not in allowed:
                raise ConfigError(f"{name} must be one of {allowed} or a list")
        if isinstance(self.boundary, dict):
            unknown = set(self.boundary) - set(BoundaryParams.__dataclass_fields__)
            if unknown:
                raise ConfigError(f"unknown boundary keys {sorted(unknown)}")
            self.boundary = BoundaryParams(**{k: _parse_complex(v) for k, v in self.boundary.items()})
        elif self.boundary != "random" and not isinstance(self.boundary, BoundaryParams):
            raise ConfigError('boundary must be "random" or a mapping of constants')
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        self.tolerance_overrides = {str(k): float(v) for k, v in self.tolerance_overrides.items()}
        self.suites = list(self.suites)
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suite(s) {bad}; known: {', '.join(SUITES)}")

    @classmethod
    def from_dict(cls, d):
        unknown = set(d) - set(CONFIG_KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)

    def to_dict(self):
        enc = lambda m: [_dump_complex(x) for x in m] if isinstance(m, list) else m
        qs = dict(self.q_sampling)
        if "value" in qs:
            qs["value"] = _dump_complex(qs["value"])
        b = self.boundary
        if isinstance(b, BoundaryParams):
            b = {k: _dump_complex(v) for k, v in b.__dict__.items()}
        return {"n_sites": self.n_sites, "depth": self.depth, "q_sampling": qs,
                "twist_mode": enc(self.twist_mode), "inhomogeneity_mode": enc(self.inhomogeneity_mode),
                "boundary": b, "seed": self.seed, "tolerance_overrides": dict(self.tolerance_overrides),
                "suites": list(self.suites)}


class Sampler:
    """Draws model parameters for one suite according to the config."""

    def __init__(self, config: RunConfig, suite_index):
        self.config = config
        self.rng = np.random.default_rng(np.random.SeedSequence([config.seed, suite_index]))

    @property
    def count(self):
        return int(self.config.q_sampling["count"])

    def q(self):
        qs = self.config.q_sampling
        if "value" in qs:
            return qs["value"]
        return sample_q(self.rng, qs["lo"], qs["hi"])

    def u(self):
        return sample_spectral(self.rng)

    def twist(self):
        mode = self.config.twist_mode
        if isinstance(mode, list):
            return mode[0] if mode else 1.0
        return sample_twist(self.rng, mode)

    def boundary(self):
        b = self.config.boundary
        return sample_boundary(self.rng) if b == "random" else b

    def model(self, n, homogeneous=False):
        tm, im = self.config.twist_mode, self.config.inhomogeneity_mode
        q = self.q()
        if isinstance(tm, list):
            if len(tm) < n:
                raise ConfigError(f"twist_mode list has {len(tm)} entries, {n} sites requested")
            ts = tuple(tm[:n])
        else:
            ts = tuple(sample_twist(self.rng, tm) for _ in range(n))
        if homogeneous or im == "ones":
            vs = (1.0,) * n
        elif isinstance(im, list):
            if len(im) < n:
                raise ConfigError(f"inhomogeneity_mode list has {len(im)} entries, {n} sites requested")
            vs = tuple(im[:n])
        else:
            vs = tuple(generic_complex(self.rng) for _ in range(n))
        return ModelParams(q=q, ts=ts, vs=vs, boundary=self.boundary())


class Suite:
    """Collects check records for one suite."""

    def __init__(self, name, config: RunConfig):
        self.name = name
        self.config = config
        self.sampler = Sampler(config, SUITES.index(name))
        self.records = []

    def tol(self, check, default):
        return self.config.tolerance_overrides.get(f"{self.name}.{check}", default)

    def check(self, check, equation, fn, samples, tol, control=False):
        """Run ``fn()`` (which samples its own parameters) ``samples`` times.

        An identity passes when every residual is <= tol; a control passes when
        every residual is > tol.  Degenerate samples (singular solves) are redrawn.
        """
        self.check_group([(check, equation, None, tol, control)], lambda: {None: fn()}, samples)

    def check_group(self, specs, compute, samples, retries=20):
        """Several checks fed by one computation; ``compute()`` returns {key: residual}.

        ``specs`` holds (check, equation, key, tol, control) tuples.
        """
        values = []
        try:
            for _ in range(samples):
                for attempt in range(retries):
                    try:
                        values.append(compute())
                        break
                    except np.linalg.LinAlgError:
                        if attempt == retries - 1:
                            raise
        except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
            for check, equation, _, _, _ in specs:
                self.records.append(_error_record(f"{self.name}.{check}", equation, exc))
            return
        for check, equation, key, tol, control in specs:
            tol = self.tol(check, tol)
            res = [float(v[key]) for v in values]
            if not res:
                verdict = "nothing-run"
            elif not all(np.isfinite(r) for r in res):
                verdict = "fail"
            elif control:
                verdict = "pass" if min(res) > tol else "fail"
            else:
                verdict = "pass" if max(res) <= tol else "fail"
            self.records.append({
                "name": f"{self.name}.{check}",
                "equation": equation,
                "kind": "control" if control else "identity",
                "samples_used": len(res),
                "max_residual": _num(max(res)) if res else None,
                "min_residual": _num(min(res)) if res else None,
                "tolerance": tol,
                "verdict": verdict,
            })

    def n_cap(self, cap):
        return min(cap, self.config.n_sites)

    def depth(self, n):
        return self.config.depth if self.config.depth is not None else n + 1


def _num(x):
    return x if np.isfinite(x) else None


def _error_record(name, equation, exc):
    return {"name": name, "equation": equation, "kind": "identity", "samples_used": 0,
            "max_residual": None, "min_residual": None, "tolerance": None, "verdict": "error",
            "error": {"type": type(exc).__name__, "message": str(exc)}}


# ---------------------------------------------------------------- suites

def _suite_ybe(s: Suite):
    sm = s.sampler
    many = 5 * sm.count
    s.check("ybe", "R12(u/v) R13(u/w) R23(v/w) = R23(v/w) R13(u/w) R12(u/v)",
            lambda: yb.check_ybe(sm.q(), sm.twist(), sm.u(), sm.u(), sm.u()), many, 1e-10)
    s.check("unitarity", "R12(u) R21(1/u) = (q + 1/q - u^2 - u^-2) I",
            lambda: yb.check_unitarity(sm.u(), sm.q(), sm.twist()), many, 1e-10)
    s.check("m_relation", "{{{R^t2(u)}^-1}^t2}^-1 = zeta(q^1/2 u)/zeta(qu) M2 R(qu) M2^-1, M = I",
            lambda: yb.check_m_relation(sm.q(), sm.twist(), sm.u()), many, 1e-10)
    s.check("m_relation_diag12", "same relation with M = diag(1, 2)",
            lambda: yb.check_m_relation(sm.q(), sm.twist(), sm.u(), np.diag([1.0, 2.0])), many, 1e-6, control=True)
    theta = lambda: sm.rng.uniform(0, 2 * np.pi)
    s.check("twist_conjugation", "F^-1 R(u) F^-1 = R(u; t = exp(-2 i theta))",
            lambda: yb.check_twist_conjugation(sm.u(), sm.q(), theta()), sm.count, 1e-12)
    for key, eq in (("r_f_f", "R12 F13 F23 = F23 F13 R12"), ("f_f_f", "F12 F13 F23 = F23 F13 F12"),
                    ("f_inverse", "F12 = F21^-1")):
        s.check(f"twist_{key}", eq, lambda key=key: yb.check_twist_conditions(sm.u(), sm.q(), theta())[key],
                sm.count, 1e-12)
    s.check("twist_r_f12_f23", "R12 F12 F23 = F23 F13 R12 (variant, expected to fail)",
            lambda: yb.check_twist_conditions(sm.u(), sm.q(), theta())["r_f12_f23"], sm.count, 1e-6, control=True)


def _suite_rll(s: Suite):
    sm = s.sampler
    n = sm.count

    def rll(r_twist=None):
        rep = lx.spin_half_rep(sm.q(), sm.twist())
        return lx.check_rll(sm.u(), sm.u(), rep, r_twist)

    s.check("rll", "R(u/v; 1/t) L1(u) L2(v) = L2(v) L1(u) R(u/v; 1/t)", rll, n, 1e-10)
    s.check("rll_untwisted_r", "RLL with the untwisted R", lambda: rll(1.0), n, 1e-6, control=True)
    s.check("lax_inverse", "L(u) L~(u) = rho(u) I", lambda: lx.check_lax_inverse(sm.u(), lx.spin_half_rep(sm.q(), sm.twist())),
            n, 1e-12)

    def at_one():
        rep = lx.spin_half_rep(sm.q(), sm.twist())
        return max(rel_residual(lx.build_lax(1.0, rep), lx.lax_at_one(rep)),
                   rel_residual(lx.build_lax_tilde(1.0, rep), lx.lax_tilde_at_one(rep)))

    s.check("lax_at_one", "L(1), L~(1) as permutation operators", at_one, n, 1e-12)


def _suite_algebra(s: Suite):
    sm = s.sampler
    n = sm.count
    rep = lambda: lx.spin_half_rep(sm.q(), sm.twist())
    s.check("t_deformed_relations", "t-deformed exchange relations of the twisted generators",
            lambda: max(lx.check_tdef_etsa(rep())[0].values()), n, 1e-12)
    s.check("t_deformed_mixed_variant", "tau2 tau12 = t q^(+-1/2) tau21 tau2 (variant, expected to fail)",
            lambda: min(lx.check_tdef_etsa(rep())[1].values()), n, 1e-6, control=True)
    s.check("untwisted_relations", "untwisted exchange relations and tau_g relations",
            lambda: max(lx.check_unetsa(rep()).values()), n, 1e-12)

    def cas():
        r = rep()
        got, scalar_res = lx.casimirs(r)
        want = lx.spin_half_casimirs(r.q)
        vals = [abs(getattr(got, k) - getattr(want, k)) / max(1.0, abs(getattr(want, k))) for k in ("w_plus", "w_minus", "w01", "w02", "w")]
        return max(vals + [scalar_res])

    s.check("casimirs", "w_+- = q^-+1/2, w01 = w02 = -1, w = q + 1/q", cas, n, 1e-12)
    s.check("lax_inverse", "L(u) L~(u) = rho(u) I", lambda: lx.check_lax_inverse(sm.u(), rep()), n, 1e-12)


def _suite_reflection(s: Suite):
    sm = s.sampler
    n = sm.count

    def draw():
        q, b = sm.q(), sm.boundary()
        return q, b, (lambda u: bd.build_kminus_c(u, b, q))

    def re(arr):
        q, b, k = draw()
        return arr(k, q, sm.twist(), sm.u(), sm.u())

    s.check("reflection", "R12(u/v) K1(u) R21(uv) K2(v) = K2(v) R12(uv) K1(u) R21(u/v)",
            lambda: re(bd.check_reflection), n, 1e-10)

    def t_indep():
        q, b, k = draw()
        u, v = sm.u(), sm.u()
        return max(bd.check_reflection(k, q, t, u, v) for t in (1.0, sm.twist(), sm.twist(), sample_twist(sm.rng, "generic")))

    s.check("reflection_t_independence", "reflection residual at t = 1 and three further twists", t_indep, n, 1e-10)
    s.check("reflection_transposed_twisted", "R^(t1 t2) arrangement at t != 1",
            lambda: re(bd.check_reflection_transposed), n, 1e-6, control=True)

    def transposed_t1():
        q, b, k = draw()
        return bd.check_reflection_transposed(k, q, 1.0, sm.u(), sm.u())

    s.check("reflection_transposed_t1", "R^(t1 t2) arrangement at t = 1", transposed_t1, n, 1e-10)

    def dual():
        q, b, k = draw()
        return bd.check_dual_reflection(bd.dualize(k, q), q, sm.twist(), sm.u(), sm.u())

    s.check("dual_reflection", "R12(v/u) K1^t(u) R21(1/quv) K2^t(v) = K2^t(v) R12(1/quv) K1^t(u) R21(v/u), K+ = dualize(K-)",
            dual, n, 1e-10)

    def dual_map():
        q, b, k = draw()
        u = sm.u()
        return rel_residual(bd.dualize(k, q)(u), bd.build_kplus_c(u, bd.dual_boundary_map(b, q), q))

    s.check("dual_parameter_map", "dualize(K-)(u) = K+(u) with kappa = eps-, kappa* = eps+, kappa+- = -k-+/(c s)",
            dual_map, n, 1e-12)

    def kplus():
        q, b = sm.q(), sm.boundary()
        return bd.check_dual_reflection(lambda u: bd.build_kplus_c(u, b, q), q, sm.twist(), sm.u(), sm.u())

    s.check("dual_reflection_kplus", "dual reflection equation for K+(u)", kplus, n, 1e-10)
    s.check("sixteen_components", "16 block entries of the reflection equation",
            lambda: max(re(bd.sixteen_components)), n, 1e-12)

    def sixteen_eqs(ordered):
        p = sm.model(1)
        k = bd.dressed_k_of(p)
        u, v = sm.u(), sm.u()
        vals = bd.sixteen_equations(k(u), k(v), p.q, u, v, ordered)
        return max(vals) if ordered else min(vals[i] for i in (4, 5, 12, 13))

    s.check("sixteen_equations", "16 scalar component equations (operator-valued, one site)",
            lambda: sixteen_eqs(True), n, 1e-12)
    s.check("sixteen_equations_alt_ordering", "alternative operator ordering in components 5, 6, 13, 14",
            lambda: sixteen_eqs(False), n, 1e-6, control=True)


def _suite_dressing(s: Suite):
    sm = s.sampler
    for n in range(1, s.n_cap(5) + 1):
        def re(n=n):
            p = sm.model(n)
            return bd.check_reflection(bd.dressed_k_of(p), p.q, sm.twist(), sm.u(), sm.u())
        s.check(f"dressed_reflection_n{n}", f"reflection equation for the {n}-site dressed K", re, sm.count, 1e-9)

    def n1():
        p = sm.model(1)
        u = sm.u()
        k = bd.dress(u, p).blocks()
        return max(rel_residual(x, y) for x, y in zip(k, qo.n1_blocks(u, p)))

    s.check("n1_closed_form", "one-site dressed blocks against the closed forms", n1, sm.count, 1e-10)
    for n in range(1, s.n_cap(4) + 1):
        def blocks(n=n):
            p = sm.model(n)
            return qo.check_dressed_blocks(p, [sm.u(), sm.u()])
        s.check(f"generator_blocks_n{n}", "dressed blocks rebuilt from recursively generated W, G, G~",
                blocks, max(1, sm.count // 4), 1e-9)


def _suite_onsager(s: Suite):
    sm = s.sampler
    n = sm.count
    s.check("askey_wilson", "[W1,[W1,W0]_q]_q^-1 = rho W0 + (q - q^-1) omega0 W1 - s k+ k- eps-^(1) (and mirror)",
            lambda: qo.check_askey_wilson(sm.model(1)), n, 1e-9)
    s.check("askey_wilson_swapped_eps", "same with eps+^(1) and eps-^(1) exchanged",
            lambda: qo.check_askey_wilson(sm.model(1), swap_eps=True), n, 1e-6, control=True)
    per = max(1, n // 4)
    groups = (("commuting", "[F_k, F_l] = 0 within each family"),
              ("exchange", "[W-k, W(l+1)] = [W-l, W(k+1)] and the other symmetric exchanges"),
              ("q_brackets", "[W_k - W_-k, G_l]_q symmetric in k, l (and the three companions)"),
              ("g_tilde_g", "G~_l G_k - G~_k G_l = (s rho/c)([W_k, W_-l] + [W_-k, W_l])"),
              ("lowest_order", "W2 = W0 - [W1,G1]_q^-1/rho, W-1 = W1 + [W0,G1]_q/rho, G1 = [W1,W0]_q, G~1 = [W0,W1]_q"),
              ("closure", "a0 F_l + sum_k s^(k-1) C_(k-1) F_(k+l) + eps = 0"))
    for N in range(1, s.n_cap(4) + 1):
        def compute(N=N):
            p = sm.model(N)
            gens = qo.build_generators(p, depth=s.depth(N))
            out = qo.relation_residuals(gens, p, s.depth(N))
            out["qdg"] = qo.q_dolan_grady_residual(gens, p.q, qo.CoefficientTower(p).rho0())
            return out

        specs = [(f"q_dolan_grady_n{N}", "[W0,[W0,[W0,W1]_q]_q^-1] = rho0 [W0,W1] (and W0 <-> W1)", "qdg", 1e-8, False)]
        specs += [(f"{key}_n{N}", eq, key, 1e-8, False) for key, eq in groups]
        if N >= 2:
            specs.append((f"g_tilde_g_prefactor_s3_over_c_n{N}", "G~G identity with prefactor s^3/c",
                          "g_tilde_g_s3_prefactor", 1e-6, True))
        s.check_group(specs, compute, per)


def _suite_transfer(s: Suite):
    sm = s.sampler
    per = max(1, sm.count // 4)
    for n in range(1, s.n_cap(6) + 1):
        s.check(f"commuting_n{n}", "[t(u), t(v)] = 0",
                lambda n=n: tr.check_commuting(sm.model(n), sm.u(), sm.u()), per, 1e-9)
    for n in range(1, s.n_cap(3) + 1):
        s.check(f"decomposition_n{n}", "t(u) = F(u) I + f(u) h(u) sum_k P_-k(u) I_(2k+1)",
                lambda n=n: tr.check_decomposition(sm.model(n), [sm.u() for _ in range(2 * n + 2)]), per, 1e-8)
    s.check("decomposition_n1_q_minus2", "one-site decomposition with h = q u^2 - q^-2 u^-2",
            lambda: tr.check_decomposition(sm.model(1), [sm.u() for _ in range(4)], h_exponent=2), per, 1e-6,
            control=True)
    for n in range(1, s.n_cap(6) + 1):
        s.check(f"t_at_one_n{n}", "t(1) = c^(2N) s (eps+ + eps-)(kappa + kappa*) I",
                lambda n=n: tr.check_t_at_one(sm.model(n, homogeneous=True)), per, 1e-10)


def _suite_hamiltonian(s: Suite):
    sm = s.sampler
    per = max(1, sm.count // 4)
    for n in range(1, s.n_cap(4) + 1):
        s.check(f"derivation_n{n}", "t(1)^-1 t'(1) = (c/s + 2 N Delta/c) I + (2/c) H",
                lambda n=n: tr.check_hamiltonian_derivation(sm.model(n, homogeneous=True)), per, 1e-6)
        s.check(f"charges_conserved_n{n}", "[H, I_(2k+1)] = 0",
                lambda n=n: tr.check_charge_conservation(sm.model(n, homogeneous=True)), per, 1e-8)
    for n in range(1, s.n_cap(6) + 1):
        s.check(f"open_xxz_limit_n{n}", "H at t_i = 1 equals the open XXZ chain built from basis states",
                lambda n=n: tr.check_open_xxz_limit(sm.model(n, homogeneous=True)), per, 1e-12)

    def zero_boundary():
        p = sm.model(2, homogeneous=True)
        p = ModelParams(q=p.q, ts=(1.0, 1.0), vs=p.vs, boundary=p.boundary)
        d = tr.anisotropy(p.q)
        got = tr.diagonalize(tr.mccoy_wu_hamiltonian(p, with_boundary=False))
        want = tr.diagonalize(np.diag([d, d, -d + 2, -d - 2]))
        return rel_residual(got, want)

    s.check("two_site_bulk_spectrum", "spectrum of the 2-site chain without boundary = {D, D, -D+2, -D-2}",
            zero_boundary, per, 1e-12)


def _suite_spectrum(s: Suite):
    sm = s.sampler
    per = max(1, sm.count // 4)
    n = s.config.n_sites

    def eig():
        h = tr.mccoy_wu_hamiltonian(sm.model(n, homogeneous=True))
        ev = tr.diagonalize(h)
        scale = max(1.0, np.linalg.norm(h))
        return max(np.linalg.svd(h - lam * np.eye(len(ev)), compute_uv=False)[-1] for lam in ev) / scale

    s.check(f"eigenvalues_n{n}", "min singular value of H - lambda I for each computed eigenvalue", eig, per, 1e-10)
    s.check(f"twist_gauge_n{n}", "spectrum of H independent of the twists t_i",
            lambda: tr.check_twist_gauge(sm.model(n, homogeneous=True)), per, 1e-9)


_RUNNERS = {"ybe": _suite_ybe, "rll": _suite_rll, "algebra": _suite_algebra, "reflection": _suite_reflection,
            "dressing": _suite_dressing, "onsager": _suite_onsager, "transfer": _suite_transfer,
            "hamiltonian": _suite_hamiltonian, "spectrum": _suite_spectrum}


def _run_one(name, config):
    s = Suite(name, config)
    try:
        _RUNNERS[name](s)
    except (ConfigError, ValueError) as exc:
        s.records.append(_error_record(f"{name}.setup", "", exc))
    return s.records


def _verdict(records):
    if not records:
        return "nothing-run"
    if any(r["verdict"] == "error" for r in records):
        return "error"
    return "pass" if all(r["verdict"] == "pass" for r in records) else "fail"


def worker_count():
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}")
    return max(1, n)


def run_suite(config: RunConfig, workers=None):
    """Run the configured suites and assemble a report dictionary."""
    names = list(dict.fromkeys(config.suites))
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda nm: _run_one(nm, config), names))
    else:
        results = [_run_one(nm, config) for nm in names]
    suites = [{"name": nm, "verdict": _verdict(recs), "checks": recs} for nm, recs in zip(names, results)]
    all_recs = [r for recs in results for r in recs]
    count = lambda v: sum(r["verdict"] == v for r in all_recs)
    return {
        "schema_version": SCHEMA_VERSION,
        "environment": {"package_version": __version__, "python": platform.python_version(), "numpy": np.__version__},
        "config": config.to_dict(),
        "summary": {"checks": len(all_recs), "passed": count("pass"), "failed": count("fail"),
                    "errors": count("error"), "verdict": _verdict(all_recs)},
        "suites": suites,
    }


def emit_report(report, fmt="json"):
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for suite in report["suites"]:
        lines.append(f"== {suite['name']}: {suite['verdict']}")
        for r in suite["checks"]:
            res = "-" if r["max_residual"] is None else f"{r['max_residual']:.2e}"
            tol = "-" if r["tolerance"] is None else f"{r['tolerance']:.0e}"
            tag = " (control)" if r["kind"] == "control" else ""
            line = f"  [{r['verdict'].upper():5}] {r['name']:<44} res={res:<9} tol={tol:<6} n={r['samples_used']}{tag}  {r['equation']}"
            if "error" in r:
                line += f"  !! {r['error']['type']}: {r['error']['message']}"
            lines.append(line)
    sm = report["summary"]
    lines.append(f"overall: {sm['verdict']} ({sm['passed']}/{sm['checks']} passed, {sm['failed']} failed, {sm['errors']} errors)")
    return "\n".join(lines) + "\n"


def spectrum_rows(config: RunConfig):
    """Eigenvalues of the homogeneous Hamiltonian described by ``config`` (parameters from the seed)."""
    sm = Sampler(config, SUITES.index("spectrum"))
    p = sm.model(config.n_sites, homogeneous=True)
    ev = tr.diagonalize(tr.mccoy_wu_hamiltonian(p))
    return [(i, float(z.real), float(z.imag)) for i, z in enumerate(ev)]


def write_spectrum_csv(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "re", "im"])
        for i, re, im in rows:
            w.writerow([i, repr(re), repr(im)])


def build_parser():
    ap = argparse.ArgumentParser(prog="artifact", description="Numerical verification of the twisted open XXZ / q-Onsager identities.")
    ap.add_argument("--list-suites", action="store_true", help="print the available suites and exit")
    sub = ap.add_subparsers(dest="command")
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--config", required=True)
    v.add_argument("--suite", action="append", dest="suites", choices=SUITES, help="repeatable; overrides the config list")
    v.add_argument("--sites", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--report", help="write the JSON report here")
    v.add_argument("--format", choices=("text", "json"), default="text", help="stdout format")
    sp = sub.add_parser("spectrum", help="diagonalize the Hamiltonian and write a CSV")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--sites", type=int)
    sp.add_argument("--seed", type=int)
    return ap


def _config_from_args(args):
    cfg = RunConfig.load(args.config).to_dict()
    if getattr(args, "suites", None):
        cfg["suites"] = list(args.suites)
    if args.sites is not None:
        cfg["n_sites"] = args.sites
    if args.seed is not None:
        cfg["seed"] = args.seed
    return RunConfig.from_dict(cfg)


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.list_suites:
        print("\n".join(SUITES))
        return 0
    if args.command is None:
        ap.print_usage(sys.stderr)
        return 2
    try:
        config = _config_from_args(args)
        if args.command == "spectrum":
            rows = spectrum_rows(config)
            write_spectrum_csv(rows, args.out)
            print(f"wrote {len(rows)} eigenvalues to {args.out}")
            return 0
        t0 = time.perf_counter()
        report = run_suite(config)
        elapsed = time.perf_counter() - t0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(emit_report(report, args.format))
    if args.format == "text":
        print(f"elapsed: {elapsed:.1f} s")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(emit_report(report, "json"))
    return 0 if report["summary"]["verdict"] == "pass" else 1
