"""Lorentz quasi-norms for finite sequences and sampled functions.

All norms are computed from the distribution function
``mu(lam) = #{n : |a(n)| > lam}``, which is a step function for finite data,
so the defining integral

    ||a||_{p,q} = ( q * int_0^inf lam^(q-1) mu(lam)^(q/p) dlam )^(1/q)

is evaluated exactly, one step at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sequences import FiniteSequence

__all__ = [
    "Exponents",
    "StepDistribution",
    "distribution",
    "step_distribution",
    "rearrangement",
    "norm_pq",
    "norm_weak",
    "norm_grid",
    "lp_norm",
]

INF = math.inf


@dataclass(frozen=True)
class Exponents:
    """A Lorentz exponent pair ``(p, q)`` with ``0 < p, q <= inf``."""

    p: float
    q: float

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (p > 0 and q > 0) or math.isnan(p) or math.isnan(q):
            raise ValueError(f"Lorentz exponents must be positive, got p={p}, q={q}")
        if p == INF and q != INF:
            raise ValueError("p = inf is only allowed together with q = inf")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def conjugate_p(self):
        """``p' = p / (p - 1)`` for ``p > 1``."""
        if self.p <= 1:
            raise ValueError("conjugate exponent needs p > 1")
        if self.p == INF:
            return 1.0
        return self.p / (self.p - 1.0)

    @property
    def is_weak(self):
        return self.q == INF


@dataclass(frozen=True)
class StepDistribution:
    """Distinct nonzero moduli ``v_0 > v_1 > ...`` and their cumulative counts.

    ``counts[j]`` is ``mu(lam)`` for ``lam`` in ``[v_j, v_{j-1})``, i.e. the number
    of entries with modulus ``>= v_{j-1}`` (taking ``v_{-1} = inf``) shifted by one:
    ``counts[j] = #{|a| >= thresholds[j]}``.
    """

    thresholds: np.ndarray
    counts: np.ndarray


def _moduli(data):
    if isinstance(data, FiniteSequence):
        return np.abs(data.values)
    return np.abs(np.asarray(data, dtype=complex)).ravel()


def step_distribution(data):
    mod = _moduli(data)
    mod = mod[mod > 0]
    if mod.size == 0:
        return StepDistribution(np.empty(0), np.empty(0, dtype=np.int64))
    vals, mult = np.unique(mod, return_counts=True)
    return StepDistribution(vals[::-1].copy(), np.cumsum(mult[::-1]))


def distribution(seq, lam):
    """Number of entries with modulus strictly greater than ``lam``."""
    if lam < 0:
        raise ValueError("lam must be nonnegative")
    return int(np.count_nonzero(_moduli(seq) > lam))


def rearrangement(seq):
    """Nonincreasing rearrangement of the moduli, zeros dropped."""
    mod = _moduli(seq)
    return np.sort(mod[mod > 0])[::-1]


def _check(e):
    if not isinstance(e, Exponents):
        e = Exponents(*e)
    return e


def _strong(mod, weight, p, q):
    # sum_j (w*c_j)^(q/p) (v_{j-1}^q - v_j^q), v_M = 0
    mod = mod[mod > 0]
    if mod.size == 0:
        return 0.0
    vals, mult = np.unique(mod, return_counts=True)
    v = vals[::-1]
    mu = weight * np.cumsum(mult[::-1]).astype(float)
    # rescale by the largest modulus to keep v^q in range
    top = v[0]
    vq = (v / top) ** q
    diffs = vq - np.append(vq[1:], 0.0)
    total = math.fsum(mu ** (q / p) * diffs)
    return top * total ** (1.0 / q)


def _weak(mod, weight, p):
    star = np.sort(mod[mod > 0])[::-1]
    if star.size == 0:
        return 0.0
    if p == INF:
        return float(star[0])
    ranks = weight * np.arange(1, star.size + 1, dtype=float)
    return float(np.max(star * ranks ** (1.0 / p)))


def norm_pq(seq, e):
    """Lorentz ``l^{p,q}`` quasi-norm of a finite sequence under counting measure.

    ``q = inf`` delegates to :func:`norm_weak`.
    """
    e = _check(e)
    if e.q == INF:
        return norm_weak(seq, e.p)
    return _strong(_moduli(seq), 1.0, e.p, e.q)


def norm_weak(seq, p):
    """``sup_lam lam * mu(lam)^(1/p)``; equals ``max_j a*_j (j+1)^(1/p)``."""
    if not p > 0:
        raise ValueError("p must be positive")
    return _weak(_moduli(seq), 1.0, float(p))


def norm_grid(samples, h, e):
    """Riemann approximation of an ``L^{p,q}(R)`` norm from samples on an h-grid.

    Every sample carries measure ``h``; the step-function integral is then exact
    for the piecewise-constant interpolant.
    """
    if not h > 0:
        raise ValueError("grid spacing must be positive")
    e = _check(e)
    mod = _moduli(samples)
    if e.q == INF:
        return _weak(mod, h, e.p)
    return _strong(mod, h, e.p, e.q)


def lp_norm(seq, p):
    """Plain ``l^p`` quasi-norm, ``(sum |a_n|^p)^(1/p)``."""
    mod = _moduli(seq)
    if p == INF:
        return float(mod.max(initial=0.0))
    top = mod.max(initial=0.0)
    if top == 0:
        return 0.0
    return top * math.fsum((mod / top) ** p) ** (1.0 / p)
