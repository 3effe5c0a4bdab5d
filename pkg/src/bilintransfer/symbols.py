"""Bilinear symbols, their periodizations and kernel coefficients.

The discrete operator attached to a 1-periodic symbol ``m`` acts as

    D_m(a, b)(n) = sum_{k1, k2} a_{k1} b_{k2} K(n - k1, n - k2),
    K(r, s) = int int_{[-1/2, 1/2]^2} m(xi, eta) exp(2 pi i (r xi + s eta)) dxi deta,

which is what :func:`kernel_coeff` returns.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import QuadratureError, QuadratureSpec, line_rule

__all__ = [
    "SignLine",
    "Constant",
    "Phase",
    "GridSymbol",
    "PeriodizedSymbol",
    "eval_symbol",
    "periodize_symbol",
    "kernel_coeff",
    "kernel_table",
    "load_grid_csv",
    "write_grid_csv",
    "CELL",
]

CELL = (-0.5, 0.5)


@dataclass(frozen=True)
class SignLine:
    """``amplitude * sign(xi + alpha * eta)`` with ``sign(0) = 0``."""

    alpha: float
    amplitude: complex = -1j

    def __call__(self, xi, eta):
        return self.amplitude * np.sign(np.asarray(xi) + self.alpha * np.asarray(eta))

    @property
    def line_alpha(self):
        return float(self.alpha)

    @property
    def bound(self):
        return abs(self.amplitude)

    def is_real(self):
        return complex(self.amplitude).imag == 0


@dataclass(frozen=True)
class Constant:
    c: complex = 1.0

    def __call__(self, xi, eta):
        shape = np.broadcast(np.asarray(xi), np.asarray(eta)).shape
        return np.full(shape, self.c, dtype=complex)

    line_alpha = None

    @property
    def bound(self):
        return abs(self.c)

    def is_real(self):
        return complex(self.c).imag == 0


@dataclass(frozen=True)
class Phase:
    """``exp(2 pi i (j1 xi + j2 eta))``."""

    j1: int
    j2: int

    def __call__(self, xi, eta):
        return np.exp(2j * np.pi * (self.j1 * np.asarray(xi) + self.j2 * np.asarray(eta)))

    line_alpha = None
    bound = 1.0

    def is_real(self):
        return self.j1 == 0 and self.j2 == 0


@dataclass(frozen=True, eq=False)
class GridSymbol:
    """Samples on an ``N x N`` grid over ``[-h, h]^2``, bilinearly interpolated.

    ``values[i, j]`` is the sample at ``(xi_i, eta_j)`` with
    ``xi_i = -h + 2 h i / (N - 1)``. Evaluation outside the square raises.
    """

    values: np.ndarray
    half_width: float = 0.5
    line_alpha = None

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 2:
            raise ValueError("grid symbol needs an N x N array with N >= 2")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def resolution(self):
        return self.values.shape[0]

    @property
    def nodes(self):
        return np.linspace(-self.half_width, self.half_width, self.resolution)

    @property
    def breaks(self):
        """Grid lines, where the interpolant has kinks."""
        return self.nodes

    @property
    def bound(self):
        return float(np.max(np.abs(self.values)))

    def is_real(self):
        return not np.any(self.values.imag)

    def __call__(self, xi, eta):
        xi, eta = np.broadcast_arrays(np.asarray(xi, float), np.asarray(eta, float))
        h = self.half_width
        if np.any(np.abs(xi) > h * (1 + 1e-12)) or np.any(np.abs(eta) > h * (1 + 1e-12)):
            raise ValueError("grid symbol evaluated outside its square")
        n = self.resolution
        fx = np.clip((xi + h) / (2 * h) * (n - 1), 0, n - 1)
        fy = np.clip((eta + h) / (2 * h) * (n - 1), 0, n - 1)
        i = np.minimum(fx.astype(int), n - 2)
        j = np.minimum(fy.astype(int), n - 2)
        tx, ty = fx - i, fy - j
        v = self.values
        return ((1 - tx) * (1 - ty) * v[i, j] + tx * (1 - ty) * v[i + 1, j]
                + (1 - tx) * ty * v[i, j + 1] + tx * ty * v[i + 1, j + 1])

    def __eq__(self, other):
        return (isinstance(other, GridSymbol) and self.half_width == other.half_width
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.half_width, self.values.tobytes()))


def eval_symbol(m, xi, eta):
    return m(xi, eta)


@dataclass(frozen=True)
class PeriodizedSymbol:
    """``t^(1/p) m(t xi, t eta)`` on the unit cell, extended 1-periodically."""

    base: object
    t: float = 1.0
    inv_p: float = 0.0
    factor: complex = field(init=False)

    def __post_init__(self):
        if not self.t > 0:
            raise ValueError("dilation t must be positive")
        if self.inv_p < 0:
            raise ValueError("1/p must be nonnegative")
        object.__setattr__(self, "factor", self.t ** self.inv_p)

    @property
    def line_alpha(self):
        return self.base.line_alpha

    def cell_values(self, xi, eta):
        """Values for ``(xi, eta)`` already inside the cell."""
        return self.factor * self.base(self.t * np.asarray(xi), self.t * np.asarray(eta))

    def __call__(self, xi, eta):
        xi = np.asarray(xi, dtype=float)
        eta = np.asarray(eta, dtype=float)
        return self.cell_values(xi - np.round(xi), eta - np.round(eta))


def periodize_symbol(m, t=1.0, inv_p=0.0):
    return PeriodizedSymbol(m, t, inv_p)


def _as_periodized(m):
    return m if isinstance(m, PeriodizedSymbol) else PeriodizedSymbol(m)


def cell_rule(msym, spec):
    """Nodes and weights on the unit cell, split along the symbol's discontinuity.

    Symbols with kinks along coordinate lines (``breaks``) get panel edges
    there as well, rescaled by the dilation.
    """
    edges = np.array(CELL)
    kinks = getattr(msym.base, "breaks", None)
    if kinks is not None:
        k = np.asarray(kinks, dtype=float) / msym.t
        edges = np.unique(np.concatenate([edges, k[(k > CELL[0]) & (k < CELL[1])]]))
    return line_rule(edges, edges, spec, msym.line_alpha)


def _kernel_on_rule(msym, rs, ls, rule):
    x, y, w = rule
    g = w * msym.cell_values(x, y)
    A = np.exp(2j * np.pi * np.outer(x, rs))
    B = np.exp(2j * np.pi * np.outer(y, ls))
    return (A * g[:, None]).T @ B


def kernel_table(m, rs, ls, spec=QuadratureSpec()):
    """Kernel coefficients ``K(r, s)`` for all ``r in rs``, ``s in ls``.

    Returns ``(table, error)`` with ``table[i, j] = K(rs[i], ls[j])`` and the
    refinement error estimate.
    """
    msym = _as_periodized(m)
    rs = np.atleast_1d(np.asarray(rs, dtype=float))
    ls = np.atleast_1d(np.asarray(ls, dtype=float))
    band = max(np.max(np.abs(rs)), np.max(np.abs(ls)))
    spec = spec.for_bandwidth(band)
    coarse = _kernel_on_rule(msym, rs, ls, cell_rule(msym, spec))
    if spec.refine == 0:
        return coarse, 0.0
    fine = _kernel_on_rule(msym, rs, ls, cell_rule(msym, spec.refined()))
    err = float(np.max(np.abs(fine - coarse)))
    if err > spec.tol:
        raise QuadratureError("kernel coefficients did not converge", err)
    return fine, err


def kernel_coeff(m, n, l, spec=QuadratureSpec()):
    """Fourier coefficient ``int int m(xi, eta) exp(2 pi i (n xi + l eta))`` over the cell."""
    table, _ = kernel_table(m, [n], [l], spec)
    return complex(table[0, 0])


def load_grid_csv(path):
    """Read a grid symbol: first row ``N``, then ``N*N`` rows ``xi, eta, re, im``."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    try:
        n = int(rows[0][0])
        data = np.array([[float(v) for v in r[:4]] for r in rows[1:]])
    except (ValueError, IndexError) as exc:
        raise ValueError(f"malformed grid symbol file {path}: {exc}") from None
    if data.shape != (n * n, 4):
        raise ValueError(f"expected {n * n} rows of 4 columns in {path}")
    xs = np.unique(data[:, 0])
    ys = np.unique(data[:, 1])
    if xs.size != n or ys.size != n:
        raise ValueError("grid coordinates do not form an N x N lattice")
    half = float(xs[-1])
    if not (math.isclose(-xs[0], half) and math.isclose(ys[-1], half) and math.isclose(-ys[0], half)):
        raise ValueError("grid must be a centred square")
    vals = np.zeros((n, n), dtype=complex)
    i = np.searchsorted(xs, data[:, 0])
    j = np.searchsorted(ys, data[:, 1])
    vals[i, j] = data[:, 2] + 1j * data[:, 3]
    return GridSymbol(vals, half)


def write_grid_csv(sym, path):
    """Inverse of :func:`load_grid_csv`; floats written with ``repr`` (round-trip exact)."""
    nodes = sym.nodes
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([sym.resolution])
        for i, x in enumerate(nodes):
            for j, y in enumerate(nodes):
                z = sym.values[i, j]
                w.writerow([repr(float(x)), repr(float(y)), repr(float(z.real)), repr(float(z.imag))])
