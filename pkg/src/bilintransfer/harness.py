"""Verification campaigns.

Each campaign returns a :class:`Report`. Exact identities are checked to
rounding error; operator norms are only ever *estimated* by randomized search,
so every norm figure in a report is an empirical lower bound.
"""

from __future__ import annotations

import csv
import enum
import hashlib
import io
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .bandlimited import RAISED_COSINE, BandLimitedFunction, Kind, Prototype, make_cutoff, restrict_lattice
from .lorentz import Exponents, lp_norm, norm_grid, norm_pq, norm_weak
from .operators import (
    apply_Cm,
    apply_Dm_kernel,
    apply_Dm_quadrature,
    bht_decomposition_rhs,
    bht_discrete,
    hilbert_discrete,
    kernel_c_alpha,
)
from .quadrature import QuadratureSpec, interval_rule
from .sequences import FiniteSequence
from .symbols import Constant, PeriodizedSymbol, SignLine, kernel_table

__all__ = [
    "Law",
    "TrialConfig",
    "Report",
    "draw_sequence",
    "draw_pair",
    "verify_decomposition",
    "verify_kernel",
    "verify_transfer_relation",
    "verify_restriction_extension",
    "estimate_norm",
    "uniformity_sweep",
    "weak_endpoint_probe",
    "cutoff_lattice_sum",
    "verify_cutoff_growth",
    "transference_consistency",
    "pointwise_op",
    "hilbert_op",
    "bht_op",
    "symbol_op",
]

THREADS_ENV = "BILINTRANSFER_THREADS"


class Law(enum.Enum):
    GAUSSIAN = "gaussian"
    SPARSE = "sparse"
    RADEMACHER = "rademacher"


def _holder_p(e):
    p1, _, p2, _, p3, _ = e
    inv = 1.0 / p1 + 1.0 / p2 - 1.0 / p3
    return math.inf if inv == 0 else 1.0 / inv


@dataclass(frozen=True)
class TrialConfig:
    """Random-trial settings shared by the campaigns.

    ``exponents`` holds tuples ``(p1, q1, p2, q2, p3, q3)``; the derived ``p``
    with ``1/p = 1/p1 + 1/p2 - 1/p3`` is recorded by :meth:`homogeneity`.
    """

    seed: int = 20240601
    trials: int = 200
    support_radius: int = 16
    law: Law = Law.GAUSSIAN
    sparsity: int = 4
    exponents: tuple = ((2.0, 2.0, 2.0, 2.0, 1.0, 1.0),)
    structured: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if self.support_radius < 0:
            raise ValueError("support radius must be nonnegative")
        object.__setattr__(self, "law", Law(self.law))
        object.__setattr__(self, "exponents", tuple(tuple(float(v) for v in e) for e in self.exponents))
        for e in self.exponents:
            if len(e) != 6:
                raise ValueError("exponent tuples are (p1, q1, p2, q2, p3, q3)")

    def homogeneity(self):
        return [_holder_p(e) for e in self.exponents]

    def to_json(self):
        d = asdict(self)
        d["law"] = self.law.value
        d["exponents"] = [list(e) for e in self.exponents]
        d["homogeneity_p"] = self.homogeneity()
        return d


@dataclass
class Report:
    campaign: str
    config: dict
    records: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    passed: bool | None = None
    version: str = __version__
    metadata: dict = field(default_factory=dict)

    def payload(self):
        """Deterministic part of the report (everything but ``metadata``)."""
        return {
            "campaign": self.campaign,
            "config": self.config,
            "records": self.records,
            "summary": self.summary,
            "passed": self.passed,
            "version": self.version,
        }

    def to_json(self, with_metadata=True):
        obj = self.payload()
        if with_metadata:
            obj["metadata"] = self.metadata
        return json.dumps(_clean(obj), indent=2, sort_keys=True)

    def to_csv(self):
        buf = io.StringIO()
        keys = sorted({k for r in self.records for k in r})
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in self.records:
            w.writerow({k: _csv_value(r.get(k)) for k in keys})
        return buf.getvalue()


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(obj.real), _clean(obj.imag)]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    return obj


def _csv_value(v):
    if isinstance(v, float):
        return repr(v)
    return v


def _stamp(report, started):
    report.metadata = {"timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
                       "elapsed_s": round(time.perf_counter() - started, 3)}
    return report


def _workers():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _map(fn, items):
    items = list(items)
    n = _workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(n) as pool:
        return list(pool.map(fn, items))


def _digest(*seqs):
    h = hashlib.sha1()
    for s in seqs:
        c = s.canonical()
        h.update(str(c.offset).encode())
        h.update(c.values.tobytes())
    return h.hexdigest()[:16]


# random and structured inputs

def _rng(cfg, *stream):
    return np.random.default_rng([cfg.seed & 0xFFFFFFFFFFFFFFFF, *stream])


def draw_sequence(rng, cfg, law=None):
    """A random sequence supported in ``[-R, R]`` under the configured law."""
    law = Law(law or cfg.law)
    R = cfg.support_radius
    n = 2 * R + 1
    if law is Law.GAUSSIAN:
        vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    elif law is Law.RADEMACHER:
        vals = rng.choice([-1.0, 1.0], size=n).astype(complex)
    else:
        vals = np.zeros(n, dtype=complex)
        k = min(cfg.sparsity, n)
        pos = rng.choice(n, size=k, replace=False)
        vals[pos] = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    return FiniteSequence(-R, vals)


def _structured(rng, cfg):
    """Spikes, constant blocks, modulated blocks and smooth bumps."""
    R = cfg.support_radius
    n = 2 * R + 1
    kind = ("spike", "block", "modulated", "bump")[int(rng.integers(4))]
    vals = np.zeros(n, dtype=complex)
    if kind == "spike":
        vals[int(rng.integers(n))] = 1.0
    else:
        length = int(rng.integers(max(1, n // 4), n + 1))
        start = int(rng.integers(0, n - length + 1))
        block = np.ones(length, dtype=complex)
        if kind == "modulated":
            block = block * np.exp(2j * np.pi * rng.uniform() * np.arange(length))
        elif kind == "bump":
            block = block * np.sin(np.pi * (np.arange(length) + 1) / (length + 1)) ** 2
        vals[start:start + length] = block
    return kind, FiniteSequence(-R, vals)


def draw_pair(cfg, trial):
    """Inputs for one trial; depends only on ``(seed, trial)``."""
    rng = _rng(cfg, trial)
    if cfg.structured and trial % 2 == 1:
        ka, a = _structured(rng, cfg)
        kb, b = _structured(rng, cfg)
        return f"{ka}/{kb}", a, b
    return cfg.law.value, draw_sequence(rng, cfg), draw_sequence(rng, cfg)


# exact identities

def verify_decomposition(cfg, alphas=(-2, -1, 2, 3), tol=1e-9):
    """Residual of the decomposition of ``H_alpha`` on random pairs."""
    started = time.perf_counter()
    alphas = [int(a) for a in alphas]
    for a in alphas:
        if a in (0, 1):
            raise ValueError("alpha must be an integer outside {0, 1}")

    def run(job):
        alpha, trial = job
        rng = _rng(cfg, trial, alpha & 0xFFFF)
        a = draw_sequence(rng, cfg)
        b = draw_sequence(rng, cfg)
        lhs = bht_discrete(a, b, alpha)
        rhs = bht_decomposition_rhs(a, b, alpha)
        idx = rhs.indices if len(rhs) else np.arange(0)
        res = float(np.max(np.abs(lhs.at(idx) - rhs.values), initial=0.0))
        scale = float(np.max(np.abs(lhs.values), initial=0.0))
        return {"alpha": alpha, "trial": trial, "residual": res, "lhs_sup": scale,
                "inputs": _digest(a, b)}

    records = _map(run, [(al, t) for al in alphas for t in range(cfg.trials)])
    per_alpha = {str(al): max(r["residual"] for r in records if r["alpha"] == al) for al in alphas}
    worst = max(per_alpha.values())
    rep = Report("decomposition", {"trial": cfg.to_json(), "alphas": alphas, "tol": tol}, records,
                 {"max_residual": per_alpha, "worst": worst}, worst <= tol)
    return _stamp(rep, started)


def verify_kernel(alphas=(0.5, -1 / 3, -1, 2, -2, 3), radius=6, spec=QuadratureSpec(tol=1e-10),
                  tol=1e-7):
    """Closed-form ``c_alpha`` against split quadrature on ``[-radius, radius]^2``."""
    started = time.perf_counter()
    r = np.arange(-radius, radius + 1)
    records = []
    ok = True
    for al in alphas:
        table, qerr = kernel_table(SignLine(float(al), 1.0), r, r, spec)
        closed = kernel_c_alpha(al, r[:, None], r[None, :])
        err = float(np.max(np.abs(table - closed)))
        origin = abs(kernel_c_alpha(al, 0, 0))
        # the r = 0 row of the |alpha| <= 1 form, -b/(pi i s) (sinc(s) - cos(pi s));
        # for |alpha| > 1 it is checked on the reflected kernel c_{1/alpha}
        b = al if abs(al) <= 1 else 1.0 / al
        s = r[r != 0].astype(float)
        row_form = -b / (np.pi * 1j * s) * (np.sinc(s) - np.cos(np.pi * s))
        row_err = float(np.max(np.abs(kernel_c_alpha(b, np.zeros_like(s), s) - row_form)))
        good = err <= tol and origin == 0 and row_err <= tol
        ok &= good
        records.append({"alpha": float(al), "max_abs_error": err, "quadrature_error": qerr,
                        "c00": origin, "row_error": row_err, "passed": good})
    rep = Report("kernel", {"alphas": [float(a) for a in alphas], "radius": radius,
                            "order": spec.order, "tol": tol}, records,
                 {"max_abs_error": max(r_["max_abs_error"] for r_ in records)}, bool(ok))
    return _stamp(rep, started)


def _sample_tail(f, k, N):
    """Bound on ``sum_{|n| > N} |f((n + u) / k)|`` for ``|u| <= 1/2``."""
    env = f.prototype.envelope()
    J = max(abs(f.coeffs.offset), abs(f.coeffs.last)) if len(f.coeffs) else 0
    t = (N - 0.5) / k - J
    if env.power <= 1 or t < env.knee:
        return math.inf
    l1 = float(np.sum(np.abs(f.coeffs.values)))
    return l1 * 2.0 * env.const * k * t ** (1.0 - env.power) / (env.power - 1.0)


def verify_transfer_relation(f, g, m, k, u_list=(0.0, 0.25, -0.5), spec=QuadratureSpec(tol=1e-7),
                             window=32, seq_radius=None, tol=1e-5):
    """Compare ``C_m(f, g)((n + u) / k)`` with ``D_{m_k}(a_{k,u}, b_{k,u})(n)``.

    ``a_{k,u}(n) = f((n + u) / k)`` is truncated to ``|n| <= seq_radius``
    (default ``8 * window``); the certified truncation tail is reported.
    """
    started = time.perf_counter()
    R = max(f.fourier_radius, g.fourier_radius)
    if k < 4 * R:
        raise ValueError(f"need k >= 4R = {4 * R}")
    N = seq_radius if seq_radius is not None else 8 * window
    ns = np.arange(-window, window + 1)
    msym = PeriodizedSymbol(m, float(k), 0.0)
    idx = np.arange(-N, N + 1)
    records = []
    for u in u_list:
        u = float(u)
        if abs(u) > 0.5:
            raise ValueError("u must lie in [-1/2, 1/2]")
        lhs, e1 = apply_Cm(f, g, m, (ns + u) / k, spec)
        a = FiniteSequence(-N, f((idx + u) / k))
        b = FiniteSequence(-N, g((idx + u) / k))
        rhs, e2 = apply_Dm_quadrature(a, b, msym, ns, spec)
        disc = float(np.max(np.abs(lhs - rhs.at(ns))))
        records.append({"u": u, "discrepancy": disc, "lhs_quadrature_error": e1,
                        "rhs_quadrature_error": e2, "lhs_sup": float(np.max(np.abs(lhs))),
                        "tail_a": _sample_tail(f, k, N), "tail_b": _sample_tail(g, k, N)})
    worst = max(r["discrepancy"] for r in records)
    cfg = {"k": k, "window": window, "seq_radius": N, "symbol": _symbol_name(m),
           "order": spec.order, "tol": tol}
    rep = Report("transfer", cfg, records, {"max_discrepancy": worst}, worst <= tol)
    return _stamp(rep, started)


def _symbol_name(m):
    if isinstance(m, SignLine):
        return f"sign:{m.alpha}:{m.amplitude}"
    if isinstance(m, Constant):
        return f"const:{m.c}"
    return type(m).__name__


def verify_restriction_extension(cfg, R, e, u_list=(-0.5, -0.25, 0.0, 0.25, 0.5), h=0.125,
                                 reach=256, per_trial_bound=10.0, bound=100.0):
    """Ratios ``||f||_{L^{p,q}} / ||a_u||_{l^{p,q}}`` for random ``f`` of Fourier radius ``R < 1/2``.

    ``f = sum_n c_n phi(x - n)`` with a raised-cosine ``phi`` dilated to radius
    ``R``. The function norm is a Riemann approximation over
    ``[-support - reach, support + reach]`` with spacing ``h``.
    """
    if not R < 0.5:
        raise ValueError("the equivalence of norms needs R < 1/2")
    started = time.perf_counter()
    if not isinstance(e, Exponents):
        e = Exponents(*e)
    proto = Prototype(Kind.RAISED_COSINE, float(R))
    X = cfg.support_radius + reach
    xs = np.arange(-X, X + h / 2, h)
    records = []
    trial_spread = []
    for trial in range(cfg.trials):
        rng = _rng(cfg, trial)
        c = draw_sequence(rng, cfg)
        if c.is_zero():
            continue
        f = BandLimitedFunction(c, proto)
        fn = norm_grid(f(xs), h, e)
        rhos = []
        for u in u_list:
            a = restrict_lattice(f, u, window=reach, floor=0.0)
            rho = fn / norm_pq(a, e)
            rhos.append(rho)
            records.append({"trial": trial, "u": float(u), "rho": rho})
        trial_spread.append(max(rhos) / min(rhos))
    all_rho = [r["rho"] for r in records]
    spread = max(all_rho) / min(all_rho)
    summary = {"rho_min": min(all_rho), "rho_max": max(all_rho), "across_trials": spread,
               "per_trial_max": max(trial_spread)}
    passed = spread <= bound and max(trial_spread) <= per_trial_bound
    conf = {"trial": cfg.to_json(), "R": R, "p": e.p, "q": e.q, "h": h, "reach": reach,
            "u": [float(u) for u in u_list], "bound": bound, "per_trial_bound": per_trial_bound}
    return _stamp(Report("equivalence", conf, records, summary, passed), started)


# operator-norm estimation

def pointwise_op(a, b):
    lo, hi = max(a.offset, b.offset), min(a.last, b.last)
    if hi < lo:
        return FiniteSequence.zeros()
    idx = np.arange(lo, hi + 1)
    return FiniteSequence(lo, a.at(idx) * b.at(idx))


def hilbert_op(pad=256):
    """Linear Hilbert transform as a bilinear handle ``(a, b) -> b(0) H(a)``."""
    def op(a, b):
        return hilbert_discrete(a, pad) * b[0]
    return op


def bht_op(alpha):
    def op(a, b):
        return bht_discrete(a, b, alpha)
    return op


def symbol_op(msym, reach, window=16, spec=QuadratureSpec()):
    """``D_m`` for a periodized symbol, via a precomputed kernel table.

    ``reach`` bounds the supports of the arguments (``[-reach, reach]``); the
    output is computed on the hull padded by ``window``.
    """
    L = 2 * reach + window
    rs = np.arange(-L, L + 1)
    table, _ = kernel_table(msym, rs, rs, spec)

    def K(r, s):
        return table[np.asarray(r) + L, np.asarray(s) + L]

    def op(a, b):
        return apply_Dm_kernel(a, b, K, window=window)
    op.table = table
    return op


def _ratio(op, a, b, e):
    p1, q1, p2, q2, p3, q3 = e
    na = norm_pq(a, (p1, q1))
    nb = norm_pq(b, (p2, q2))
    if na == 0 or nb == 0:
        return None
    return norm_pq(op(a, b), (p3, q3)) / (na * nb)


def _refine(op, a, b, e, rng, steps, both=True):
    best = _ratio(op, a, b, e)
    for _ in range(steps):
        which = int(rng.integers(2)) if both else 0
        base = a if which == 0 else b
        vals = base.values.copy()
        j = int(rng.integers(vals.size))
        scale = float(np.max(np.abs(vals))) or 1.0
        vals[j] += 0.25 * scale * (rng.standard_normal() + 1j * rng.standard_normal())
        cand = FiniteSequence(base.offset, vals)
        na, nb = (cand, b) if which == 0 else (a, cand)
        r = _ratio(op, na, nb, e)
        if r is not None and r > best:
            best, a, b = r, na, nb
    return best


def estimate_norm(op, cfg, exponents=None, fixed_b=None, refine_steps=32, name="norm"):
    """Empirical lower bound for a bilinear operator norm.

    Ratio ``||op(a, b)||_{p3,q3} / (||a||_{p1,q1} ||b||_{p2,q2})`` maximised over
    random and structured draws, then one local coordinatewise search from the
    best pair. Zero-norm draws are skipped.
    """
    started = time.perf_counter()
    e = tuple(float(v) for v in (exponents or cfg.exponents[0]))

    def run(trial):
        kind, a, b = draw_pair(cfg, trial)
        if fixed_b is not None:
            b = fixed_b
        return trial, kind, a, b, _ratio(op, a, b, e)

    results = _map(run, range(cfg.trials))
    records = []
    best = None
    running = -math.inf
    for trial, kind, a, b, r in results:
        if r is None:
            records.append({"trial": trial, "kind": kind, "skipped": True})
            continue
        running = max(running, r)
        records.append({"trial": trial, "kind": kind, "ratio": r, "running_max": running,
                        "inputs": _digest(a, b)})
        if best is None or r > best[0]:
            best = (r, a, b)
    if best is None:
        raise ValueError("every draw had zero norm")
    refined = best[0]
    if refine_steps:
        refined = _refine(op, best[1], best[2], e, _rng(cfg, cfg.trials, 7), refine_steps,
                          both=fixed_b is None)
    summary = {"max_ratio": best[0], "refined_ratio": refined, "estimate": max(best[0], refined),
               "median_ratio": float(np.median([r["ratio"] for r in records if "ratio" in r])),
               "label": "empirical lower bound"}
    conf = {"trial": cfg.to_json(), "exponents": list(e), "refine_steps": refine_steps}
    return _stamp(Report(name, conf, records, summary, None), started)


def uniformity_sweep(m, inv_p, t_list, cfg, exponents=None, spec=QuadratureSpec(), window=16,
                     rtol=1e-6):
    """Norm estimates of ``D`` for the periodized symbols ``m_{t,p}``, one per ``t``.

    Sign symbols with ``1/p = 0`` are dilation invariant and must give the
    same estimate for every ``t``; constants must scale as ``t^(1/p)``. Other
    symbols only have their profile recorded. No verdict is drawn across ``t``
    about boundedness of a single periodization.
    """
    started = time.perf_counter()
    t_list = [float(t) for t in t_list]
    if not t_list:
        raise ValueError("t_list must not be empty")
    records = []
    for t in t_list:
        msym = PeriodizedSymbol(m, t, float(inv_p))
        op = symbol_op(msym, cfg.support_radius, window, spec)
        rep = estimate_norm(op, cfg, exponents, refine_steps=0)
        est = rep.summary["max_ratio"]
        records.append({"t": t, "estimate": est, "normalized": est / t ** inv_p,
                        "median_ratio": rep.summary["median_ratio"]})
    est = [r["estimate"] for r in records]
    norm = [r["normalized"] for r in records]
    summary = {"max_over_min": max(est) / min(est), "normalized_max_over_min": max(norm) / min(norm),
               "label": "empirical lower bounds"}
    passed = None
    if isinstance(m, SignLine) and inv_p == 0:
        passed = summary["max_over_min"] <= 1 + rtol
    elif isinstance(m, Constant):
        passed = summary["normalized_max_over_min"] <= 1 + rtol
    conf = {"trial": cfg.to_json(), "symbol": _symbol_name(m), "inv_p": float(inv_p), "t": t_list,
            "window": window}
    return _stamp(Report("uniformity", conf, records, summary, passed), started)


def _fit_growth(running):
    t = np.arange(1, len(running) + 1, dtype=float)
    y = np.log(np.asarray(running, dtype=float))
    slope, _ = np.polyfit(np.log(t), y, 1)
    return float(slope)


def weak_endpoint_probe(alpha, p1, p2, cfg, slope_bound=0.5):
    """Running maximum of ``||H_alpha(a, b)||_{2/3, inf} / (||a||_p1 ||b||_p2)``.

    The growth fit is the slope of ``log(running max)`` against ``log(trials)``;
    a bounded ratio drives it to zero.
    """
    if not (1 < p1 <= 2 and 1 < p2 <= 2):
        raise ValueError("need 1 < p1, p2 <= 2")
    if abs(1 / p1 + 1 / p2 - 1.5) > 1e-12:
        raise ValueError("need 1/p1 + 1/p2 = 3/2")
    started = time.perf_counter()
    records = []
    running = []
    cur = -math.inf
    for trial in range(cfg.trials):
        kind, a, b = draw_pair(cfg, trial)
        na, nb = lp_norm(a, p1), lp_norm(b, p2)
        if na == 0 or nb == 0:
            records.append({"trial": trial, "kind": kind, "skipped": True})
            continue
        r = norm_weak(bht_discrete(a, b, alpha), 2.0 / 3.0) / (na * nb)
        cur = max(cur, r)
        running.append(cur)
        records.append({"trial": trial, "kind": kind, "ratio": r, "running_max": cur})
    slope = _fit_growth(running)
    summary = {"running_max": cur, "growth_slope": slope, "label": "empirical lower bound"}
    conf = {"trial": cfg.to_json(), "alpha": int(alpha), "p1": p1, "p2": p2, "p3": 2.0 / 3.0,
            "slope_bound": slope_bound}
    return _stamp(Report("endpoint", conf, records, summary, slope < slope_bound), started)


# cutoff lattice sums

def cutoff_lattice_sum(M, p0, tail_tol=1e-10, spec=QuadratureSpec(order=24)):
    """``sum_k || psi_M(. + k) ||_{L^{p0'}([-1/2, 1/2])}`` with a certified tail."""
    if not p0 > 1:
        raise ValueError("need p0 > 1")
    psi = make_cutoff(M)
    pc = p0 / (p0 - 1.0)
    env = psi.envelope()
    K = 4
    while env.tail(K) > tail_tol:
        K *= 2
    xs, w = interval_rule([-0.5, 0.5], spec.for_bandwidth(4 * M))
    ks = np.arange(-K, K + 1)
    vals = np.abs(psi(xs[None, :] + ks[:, None])) ** pc
    norms = (vals @ w) ** (1.0 / pc)
    return math.fsum(norms) + env.tail(K)


def verify_cutoff_growth(Ms=(1, 2, 4, 8), p0s=(1.5, 2.0), slack=0.1):
    """Growth exponent of :func:`cutoff_lattice_sum` in ``M`` against ``1/p0``."""
    started = time.perf_counter()
    records = []
    ok = True
    for p0 in p0s:
        sums = [cutoff_lattice_sum(M, p0) for M in Ms]
        slope = float(np.polyfit(np.log(Ms), np.log(sums), 1)[0])
        good = slope <= 1.0 / p0 + slack
        ok &= good
        records.append({"p0": p0, "sums": sums, "exponent": slope, "limit": 1.0 / p0 + slack})
    rep = Report("cutoff", {"M": list(Ms), "p0": list(p0s), "slack": slack}, records, {}, bool(ok))
    return _stamp(rep, started)


def transference_consistency(alpha, cfg, h=0.25, reach=24, spec=QuadratureSpec(tol=1e-6)):
    """Ratio of discrete and continuous norm estimates for the sign symbol.

    The discrete side uses ``D_alpha`` on sequences, the continuous side
    ``C_m`` on their raised-cosine extensions, sampled on an ``h``-grid. The
    ratio is recorded only.
    """
    started = time.perf_counter()
    e = cfg.exponents[0]
    p1, q1, p2, q2, p3, q3 = e
    m = SignLine(float(alpha), -1j)
    d_op = symbol_op(PeriodizedSymbol(m), cfg.support_radius, spec=spec)
    X = cfg.support_radius + reach
    xs = np.arange(-X, X + h / 2, h)
    records = []
    for trial in range(cfg.trials):
        _, a, b = draw_pair(cfg, trial)
        rd = _ratio(d_op, a, b, e)
        if rd is None:
            continue
        f = BandLimitedFunction(a, RAISED_COSINE)
        g = BandLimitedFunction(b, RAISED_COSINE)
        cvals, _ = apply_Cm(f, g, m, xs, spec)
        rc = norm_grid(cvals, h, (p3, q3)) / (norm_grid(f(xs), h, (p1, q1)) * norm_grid(g(xs), h, (p2, q2)))
        records.append({"trial": trial, "discrete": rd, "continuous": rc, "ratio": rd / rc})
    d_max = max(r["discrete"] for r in records)
    c_max = max(r["continuous"] for r in records)
    summary = {"discrete_max": d_max, "continuous_max": c_max, "consistency_ratio": d_max / c_max,
               "label": "empirical lower bounds"}
    conf = {"trial": cfg.to_json(), "alpha": alpha, "h": h, "reach": reach}
    return _stamp(Report("consistency", conf, records, summary, None), started)
