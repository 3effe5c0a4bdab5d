"""Composite Gauss-Legendre rules on rectangles, optionally split along a line.

Integrands here are piecewise smooth: smooth pieces are separated by known
breakpoints (spectral kinks, cell edges) and, for sign-type symbols, by a line
through the origin. Every rule places panel edges exactly on those features so
the composite rule converges spectrally on each piece.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = ["QuadratureSpec", "QuadratureError", "gauss_legendre", "interval_rule",
           "rectangle_rule", "line_rule", "exp_sum"]


class QuadratureError(ArithmeticError):
    """Raised when the estimated error exceeds the requested tolerance."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (estimated error {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class QuadratureSpec:
    """Settings for the composite tensor rules.

    ``order`` is the number of Gauss-Legendre nodes per panel, ``panels`` the
    minimum number of panels per unit length. The error estimate compares the
    rule against the same rule with ``2**refine`` times as many panels.
    """

    order: int = 32
    panels: int = 2
    refine: int = 1
    tol: float = 1e-8
    split: bool = True

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("quadrature order must be >= 2")
        if self.panels < 1:
            raise ValueError("need at least one panel per unit length")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.refine < 0:
            raise ValueError("refine must be >= 0")

    def for_bandwidth(self, bandwidth):
        """Panel density that resolves ``exp(2 pi i B x)`` for ``|B| <= bandwidth``.

        Keeps ``pi * B * width <= order`` on every panel, where Gauss-Legendre is
        already at machine precision.
        """
        need = math.ceil(math.pi * float(bandwidth) / self.order) if bandwidth > 0 else 1
        if need <= self.panels:
            return self
        return QuadratureSpec(self.order, need, self.refine, self.tol, self.split)

    def refined(self):
        return QuadratureSpec(self.order, self.panels * 2 ** self.refine, 0, self.tol, self.split)


@lru_cache(maxsize=64)
def gauss_legendre(order):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _cuts(breaks, density):
    """Panel edges: the breakpoints, each gap divided into ceil(len*density) panels."""
    breaks = np.unique(np.asarray(breaks, dtype=float))
    edges = [breaks[:1]]
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b <= a:
            continue
        m = max(1, math.ceil((b - a) * density - 1e-12))
        edges.append(np.linspace(a, b, m + 1)[1:])
    return np.concatenate(edges)


def interval_rule(breaks, spec):
    """Nodes and weights on ``[min(breaks), max(breaks)]`` with edges on ``breaks``."""
    t, tw = gauss_legendre(spec.order)
    edges = _cuts(breaks, spec.panels)
    a, b = edges[:-1, None], edges[1:, None]
    half = 0.5 * (b - a)
    x = (a + b) * 0.5 + half * t[None, :]
    w = half * tw[None, :]
    return x.ravel(), w.ravel()


def _inner_nodes(lo, hi, spec):
    """Nodes for [lo_i, hi_i] per outer node i; same panel count across i."""
    t, tw = gauss_legendre(spec.order)
    length = float(np.max(hi - lo)) if lo.size else 0.0
    m = max(1, math.ceil(length * spec.panels - 1e-12))
    frac = np.linspace(0.0, 1.0, m + 1)
    a = lo[:, None] + (hi - lo)[:, None] * frac[None, :-1]
    h = ((hi - lo) / m)[:, None]
    x = (a[:, :, None] + 0.5 * h[:, :, None] * (1.0 + t[None, None, :]))
    w = np.broadcast_to(0.5 * h[:, :, None] * tw[None, None, :], x.shape)
    n = lo.size
    return x.reshape(n, -1), w.reshape(n, -1)


def rectangle_rule(xbreaks, ybreaks, spec, slope=None):
    """Tensor rule on a rectangle, split along the line ``x = slope * y``.

    Returns flat arrays ``(x, y, w)``. With ``slope=None`` the rule is a plain
    tensor product. Otherwise ``y`` is the outer variable; its panel edges also
    include the ``y`` where the line meets an x-breakpoint, so within each outer
    panel the inner pieces stay smooth.
    """
    ybreaks = np.unique(np.asarray(ybreaks, dtype=float))
    xbreaks = np.unique(np.asarray(xbreaks, dtype=float))
    if slope is None or not spec.split:
        xs, wx = interval_rule(xbreaks, spec)
        ys, wy = interval_rule(ybreaks, spec)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        W = np.outer(wx, wy)
        return X.ravel(), Y.ravel(), W.ravel()

    # after the inner integral stops on the line, a phase exp(2 pi i B x) turns
    # into one of frequency up to (1 + |slope|) B in the outer variable
    outer = QuadratureSpec(spec.order, math.ceil(spec.panels * (1 + abs(slope))), 0, spec.tol,
                           spec.split)
    y0, y1 = ybreaks[0], ybreaks[-1]
    extra = []
    if slope != 0:
        pre = xbreaks / slope
        extra = pre[(pre > y0) & (pre < y1)]
    yedges = np.unique(np.concatenate([ybreaks, extra]))
    xs_all, ys_all, ws_all = [], [], []
    for a, b in zip(yedges[:-1], yedges[1:]):
        ys, wy = interval_rule([a, b], outer)
        line = slope * ys
        # inner pieces: between consecutive x-breakpoints, with the line inserted
        mid_line = slope * 0.5 * (a + b)
        inside = xbreaks[0] < mid_line < xbreaks[-1]
        pieces = []
        for lo_b, hi_b in zip(xbreaks[:-1], xbreaks[1:]):
            if inside and lo_b < mid_line < hi_b:
                pieces.append((np.full_like(ys, lo_b), line))
                pieces.append((line, np.full_like(ys, hi_b)))
            else:
                pieces.append((np.full_like(ys, lo_b), np.full_like(ys, hi_b)))
        for lo, hi in pieces:
            xi, wi = _inner_nodes(lo, hi, spec)
            xs_all.append(xi.ravel())
            ys_all.append(np.repeat(ys, xi.shape[1]))
            ws_all.append((wi * wy[:, None]).ravel())
    return np.concatenate(xs_all), np.concatenate(ys_all), np.concatenate(ws_all)


def line_rule(xbreaks, ybreaks, spec, alpha=None):
    """Rule on a rectangle split along ``x + alpha * y = 0``.

    The outer variable is the one along which the line is steeper, which keeps
    the inner pieces well proportioned.
    """
    if alpha is None:
        return rectangle_rule(xbreaks, ybreaks, spec)
    if abs(alpha) <= 1:
        return rectangle_rule(xbreaks, ybreaks, spec, slope=-alpha)
    y, x, w = rectangle_rule(ybreaks, xbreaks, spec, slope=-1.0 / alpha)
    return x, y, w


def exp_sum(theta, weights, freqs, terms=14):
    """``S(x) = sum_i weights_i exp(2 pi i x theta_i)`` for every ``x`` in ``freqs``.

    Nodes are binned to a uniform grid of spacing ``d`` chosen so that
    ``pi * max|x| * d <= 1/4``; the offsets from the bin centres enter through a
    ``terms``-term Taylor series, so the cost is one pass over the nodes per
    term instead of one pass per frequency.
    """
    theta = np.asarray(theta, dtype=float).ravel()
    weights = np.asarray(weights, dtype=complex).ravel()
    freqs = np.atleast_1d(np.asarray(freqs, dtype=float))
    if theta.size == 0:
        return np.zeros(freqs.shape, dtype=complex)
    xmax = float(np.max(np.abs(freqs)))
    if theta.size <= 4 * freqs.size or xmax == 0:
        return np.exp(2j * np.pi * np.outer(freqs, theta)) @ weights
    lo, hi = float(theta.min()), float(theta.max())
    d = 0.25 / (np.pi * xmax)
    nb = int(math.ceil((hi - lo) / d)) + 1
    idx = np.rint((theta - lo) / d).astype(np.int64)
    delta = theta - (lo + idx * d)
    centres = lo + np.arange(nb) * d
    phase = np.exp(2j * np.pi * np.outer(freqs, centres))
    out = np.zeros(freqs.size, dtype=complex)
    moment = weights.copy()
    scale = np.ones(freqs.size, dtype=complex)
    step = 2j * np.pi * freqs
    for m in range(terms):
        if m:
            moment = moment * delta
            scale = scale * step / m
        binned = (np.bincount(idx, weights=moment.real, minlength=nb)
                  + 1j * np.bincount(idx, weights=moment.imag, minlength=nb))
        out += scale * (phase @ binned)
    return out
