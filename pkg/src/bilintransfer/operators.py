"""Continuous and discrete bilinear multiplier operators.

Discrete operators act on :class:`FiniteSequence` arguments. Sums are finite
and evaluated exactly; where a result has infinite support (Hilbert-type
outputs decay like ``1/n``) a window is used and the omitted tail is bounded.
"""

from __future__ import annotations

import math

import numpy as np

from .bandlimited import BandLimitedFunction, trig_poly
from .quadrature import QuadratureError, QuadratureSpec, exp_sum, interval_rule, line_rule
from .sequences import FiniteSequence
from .symbols import PeriodizedSymbol, SignLine, cell_rule

__all__ = [
    "kernel_c_alpha",
    "c_alpha_kernel",
    "apply_Dm_kernel",
    "apply_Dm_quadrature",
    "hilbert_discrete",
    "hilbert_at",
    "hilbert_tail_bound",
    "bht_discrete",
    "bar_sequence",
    "tilde_sequence",
    "bht_decomposition_rhs",
    "apply_Cm",
    "fourier_of_Cm",
]


# closed-form kernel of the truncated sign symbol

def _c_small(alpha, r, s):
    """``c_alpha(r, s)`` for ``|alpha| <= 1``; ``r``, ``s`` integer arrays."""
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    r, s = np.broadcast_arrays(r, s)
    out = np.zeros(r.shape, dtype=complex)
    rn = r != 0
    sign_r = np.where(np.mod(r, 2) == 0, 1.0, -1.0)
    sign_s = np.where(np.mod(s, 2) == 0, 1.0, -1.0)
    rr = np.where(rn, r, 1.0)
    term = np.sinc(-alpha * r + s) - sign_r * (s == 0)
    out[rn] = (-1.0 / (np.pi * 1j * rr) * term)[rn]
    row = (~rn) & (s != 0)
    ss = np.where(row, s, 1.0)
    # -alpha/(pi i s) * (sinc(s) - cos(pi s)) = alpha (-1)^s / (pi i s) for s != 0
    out[row] = (alpha * sign_s / (np.pi * 1j * ss))[row]
    return out


def kernel_c_alpha(alpha, r, s):
    """Fourier coefficients of ``sign(xi + alpha eta)`` on the unit cell.

    ``c_alpha(r, s) = int int sign(xi + alpha eta) exp(2 pi i (r xi + s eta))``.
    For ``|alpha| <= 1``:

    * ``r != 0``: ``-(sinc(s - alpha r) - (-1)^r [s = 0]) / (pi i r)``
    * ``r = 0, s != 0``: ``alpha (-1)^s / (pi i s)``
    * ``c_alpha(0, 0) = 0``

    and for ``|alpha| > 1`` the reflection ``c_alpha(r, s) = sign(alpha) c_{1/alpha}(s, r)``.
    Accepts scalars or integer arrays.
    """
    alpha = float(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    scalar = np.ndim(r) == 0 and np.ndim(s) == 0
    if abs(alpha) <= 1:
        out = _c_small(alpha, r, s)
    else:
        out = math.copysign(1.0, alpha) * _c_small(1.0 / alpha, s, r)
    return complex(out) if scalar else out


def c_alpha_kernel(alpha, amplitude=-1j):
    """Kernel evaluator ``(r, s) -> amplitude * c_alpha(r, s)`` for :func:`apply_Dm_kernel`."""
    def K(r, s):
        return amplitude * kernel_c_alpha(alpha, r, s)
    K.alpha = alpha
    K.amplitude = amplitude
    return K


def _delta_kernel(r, s):
    return ((np.asarray(r) == 0) & (np.asarray(s) == 0)).astype(complex)


# discrete bilinear operator via its kernel

def _output_indices(a, b, n_range, window):
    if n_range is not None:
        return np.asarray(list(n_range), dtype=np.int64)
    lo = min(a.offset, b.offset) - window
    hi = max(a.last, b.last) + window
    return np.arange(lo, hi + 1)


def apply_Dm_kernel(a, b, K, n_range=None, window=16):
    """``D(a, b)(n) = sum_{k1, k2} a_{k1} b_{k2} K(n - k1, n - k2)``.

    ``K`` is a vectorized callable on integer arrays. The double sum over the
    supports is exact for each requested ``n``; by default ``n`` runs over the
    hull of both supports padded by ``window``. Each entry is summed pairwise in
    a fixed order, so results do not depend on how the ``n`` are scheduled.
    """
    ka, va = a.nonzero_items()
    kb, vb = b.nonzero_items()
    ns = _output_indices(a, b, n_range, window)
    out = np.zeros(ns.size, dtype=complex)
    if ka.size and kb.size and ns.size:
        outer = va[:, None] * vb[None, :]
        for i, n in enumerate(ns):
            kmat = K((n - ka)[:, None], (n - kb)[None, :])
            out[i] = np.sum(outer * kmat)
    if ns.size == 0:
        return FiniteSequence.zeros()
    if n_range is not None and np.any(np.diff(ns) != 1):
        return FiniteSequence.from_indexed(ns, out)
    return FiniteSequence(int(ns[0]), out)


# discrete bilinear operator via quadrature of its defining integral

def _dm_on_rule(a, b, msym, ns, rule):
    x, y, w = rule
    g = w * trig_poly(a, x) * trig_poly(b, y) * msym.cell_values(x, y)
    return exp_sum(x + y, g, ns)


def apply_Dm_quadrature(a, b, msym, n_range, spec=QuadratureSpec()):
    """``int int P(xi) Q(eta) m(xi, eta) exp(2 pi i (xi + eta) n)`` over the cell.

    ``P(xi) = sum_k a_k exp(-2 pi i k xi)`` and likewise ``Q``. Sign symbols are
    split along their discontinuity line. Returns ``(sequence, error)``; the
    error estimate compares the rule with its refinement.
    """
    if not isinstance(msym, PeriodizedSymbol):
        msym = PeriodizedSymbol(msym)
    ns = np.asarray(list(n_range), dtype=np.int64)
    if ns.size == 0 or a.is_zero() or b.is_zero():
        return FiniteSequence.from_indexed(ns, np.zeros(ns.size)), 0.0
    band = max(abs(ns.max() - a.offset), abs(ns.min() - a.last),
               abs(ns.max() - b.offset), abs(ns.min() - b.last))
    spec = spec.for_bandwidth(band)
    vals = _dm_on_rule(a, b, msym, ns, cell_rule(msym, spec))
    err = 0.0
    if spec.refine:
        fine = _dm_on_rule(a, b, msym, ns, cell_rule(msym, spec.refined()))
        err = float(np.max(np.abs(fine - vals)))
        vals = fine
        if err > spec.tol:
            raise QuadratureError("discrete operator quadrature did not converge", err)
    return FiniteSequence.from_indexed(ns, vals), err


# linear and bilinear discrete Hilbert transforms

def hilbert_at(a, indices):
    """``H(a)(n) = (1/pi) sum_{j != n} a_j / (n - j)`` at the given indices (exact)."""
    ka, va = a.nonzero_items()
    ns = np.asarray(indices, dtype=np.int64)
    if ka.size == 0:
        return np.zeros(ns.shape, dtype=complex)
    d = (ns.reshape(-1, 1) - ka[None, :]).astype(float)
    inv = np.zeros_like(d)
    np.divide(1.0, d, out=inv, where=d != 0)
    return (np.sum(inv * va[None, :], axis=1) / np.pi).reshape(ns.shape)


def hilbert_tail_bound(a, pad):
    """Bound on ``|H(a)(n)|`` outside the support padded by ``pad``."""
    return float(np.sum(np.abs(a.values))) / (np.pi * (pad + 1))


def hilbert_discrete(a, pad=256):
    """Discrete Hilbert transform on ``supp(a)`` padded by ``pad`` on each side.

    Entries beyond the window are bounded by :func:`hilbert_tail_bound`.
    """
    if a.is_zero():
        return FiniteSequence.zeros()
    c = a.canonical()
    ns = np.arange(c.offset - pad, c.last + pad + 1)
    return FiniteSequence(int(ns[0]), hilbert_at(c, ns))


def _check_alpha(alpha):
    if alpha != int(alpha):
        raise ValueError("alpha must be an integer")
    alpha = int(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    return alpha


def bht_discrete(a, b, alpha):
    """``H_alpha(a, b)(n) = (1/pi) sum_{k != 0} a_{n-k} b_{n-alpha k} / k``.

    A pair ``(j1, j2)`` of support points contributes when
    ``j2 - j1 = (1 - alpha) k`` for some ``k != 0``, at ``n = j1 + k``; the sum is
    finite and exact.
    """
    alpha = _check_alpha(alpha)
    if alpha == 1:
        # degenerate case: H(a b), infinite support, windowed
        return hilbert_discrete(_product(a, b))
    ka, va = a.nonzero_items()
    kb, vb = b.nonzero_items()
    if ka.size == 0 or kb.size == 0:
        return FiniteSequence.zeros()
    J1, J2 = np.meshgrid(ka, kb, indexing="ij")
    diff = J2 - J1
    step = 1 - alpha
    ok = (diff % step == 0)
    k = np.where(ok, diff // step, 0)
    ok &= k != 0
    if not np.any(ok):
        return FiniteSequence.zeros()
    V = (va[:, None] * vb[None, :])[ok] / k[ok] / np.pi
    n = (J1 + k)[ok]
    return _grouped_fsum(n, V).canonical()


def _grouped_fsum(n, V):
    """``out[j] = sum of V over n == j``, correctly rounded so order never matters."""
    order = np.argsort(n, kind="stable")
    n, V = n[order], V[order]
    cuts = np.flatnonzero(np.diff(n)) + 1
    lo = int(n[0])
    out = np.zeros(int(n[-1]) - lo + 1, dtype=complex)
    for idx, grp in zip(np.split(n, cuts), np.split(V, cuts)):
        out[idx[0] - lo] = complex(math.fsum(grp.real), math.fsum(grp.imag))
    return FiniteSequence(lo, out)


def _product(a, b):
    lo = max(a.offset, b.offset)
    hi = min(a.last, b.last)
    if hi < lo:
        return FiniteSequence.zeros()
    idx = np.arange(lo, hi + 1)
    return FiniteSequence(lo, a.at(idx) * b.at(idx))


def bar_sequence(a, alpha):
    """Upsampling: ``abar_{alpha m} = a_m``, zero off ``alpha Z``."""
    alpha = _check_alpha(alpha)
    ka, va = a.nonzero_items()
    return FiniteSequence.from_indexed(alpha * ka, va)


def tilde_sequence(a, alpha):
    """``atilde_n = (-1)^n abar_n``."""
    bar = bar_sequence(a, alpha)
    signs = np.where(bar.indices % 2 == 0, 1.0, -1.0)
    return FiniteSequence(bar.offset, bar.values * signs)


def bht_decomposition_rhs(a, b, alpha, n_range=None, pad=4):
    """Right-hand side of the decomposition of ``H_alpha`` into ``D_alpha`` and ``H``.

    For integer ``alpha`` not in ``{0, 1}``,

        H_alpha(a, b)(n) = sign(alpha) alpha^2 D_alpha(abar, bbar)(alpha n)
                           + alpha^2 atilde(alpha n) H(btilde)(alpha n)
                           + alpha   btilde(alpha n) H(atilde)(alpha n)

    where ``D_alpha`` has kernel ``-i c_alpha``. Every sum is finite, so the
    identity can be checked to rounding error. By default ``n`` covers the
    support of ``H_alpha(a, b)`` padded by ``pad``.
    """
    alpha = _check_alpha(alpha)
    if alpha == 1:
        raise ValueError("alpha must not be 1")
    if n_range is None:
        lhs = bht_discrete(a, b, alpha)
        if lhs.is_zero():
            lo = min(a.offset, b.offset)
            hi = max(a.last, b.last)
        else:
            lo, hi = lhs.offset, lhs.last
        n_range = range(lo - pad, hi + pad + 1)
    ns = np.asarray(list(n_range), dtype=np.int64)
    if a.is_zero() or b.is_zero():
        return FiniteSequence.from_indexed(ns, np.zeros(ns.size))
    abar, bbar = bar_sequence(a, alpha), bar_sequence(b, alpha)
    at, bt = tilde_sequence(a, alpha), tilde_sequence(b, alpha)
    K = c_alpha_kernel(alpha)
    d = apply_Dm_kernel(abar, bbar, K, n_range=alpha * ns)
    an = alpha * ns
    main = math.copysign(1.0, alpha) * alpha ** 2 * d.at(an)
    corr = alpha ** 2 * at.at(an) * hilbert_at(bt, an) + alpha * bt.at(an) * hilbert_at(at, an)
    return FiniteSequence.from_indexed(ns, main + corr)


# continuous bilinear operator

def _spectral_rule(f, g, m, spec):
    xb = f.prototype.spectral_breaks
    yb = g.prototype.spectral_breaks
    alpha = getattr(m, "line_alpha", None)
    return line_rule(xb, yb, spec, alpha)


def _cm_on_rule(f, g, m, xs, rule):
    x, y, w = rule
    gw = w * f.hat(x) * g.hat(y) * m(x, y)
    keep = gw != 0
    return exp_sum((x + y)[keep], gw[keep], xs)


def apply_Cm(f, g, m, x_grid, spec=QuadratureSpec()):
    """``int int f_hat(xi) g_hat(eta) m(xi, eta) exp(2 pi i (xi + eta) x)`` on ``x_grid``.

    ``f_hat = P phi_hat`` is evaluated exactly, so the only discretization is
    the split tensor rule over ``supp f_hat x supp g_hat``. Returns
    ``(values, error)``.
    """
    xs = np.atleast_1d(np.asarray(x_grid, dtype=float))
    if f.coeffs.is_zero() or g.coeffs.is_zero():
        return np.zeros(xs.shape, dtype=complex), 0.0
    band = (f.fourier_radius + g.fourier_radius) * float(np.max(np.abs(xs)))
    band += max(abs(f.coeffs.offset), abs(f.coeffs.last)) * f.fourier_radius
    band += max(abs(g.coeffs.offset), abs(g.coeffs.last)) * g.fourier_radius
    spec = spec.for_bandwidth(band)
    vals = _cm_on_rule(f, g, m, xs, _spectral_rule(f, g, m, spec))
    err = 0.0
    if spec.refine:
        fine = _cm_on_rule(f, g, m, xs, _spectral_rule(f, g, m, spec.refined()))
        err = float(np.max(np.abs(fine - vals)))
        vals = fine
        if err > spec.tol:
            raise QuadratureError("continuous operator quadrature did not converge", err)
    return vals, err


def fourier_of_Cm(f, g, m, nu, spec=QuadratureSpec()):
    """Fourier transform of ``C_m(f, g)`` at ``nu``: ``int f_hat(xi) g_hat(nu - xi) m(xi, nu - xi) dxi``.

    Returns ``(value, error)``. The integrand vanishes unless ``nu`` lies in
    ``supp f_hat + supp g_hat``.
    """
    nu = float(nu)
    fb = f.prototype.spectral_breaks
    gb = nu - g.prototype.spectral_breaks
    lo = max(fb.min(), gb.min())
    hi = min(fb.max(), gb.max())
    if lo >= hi or f.coeffs.is_zero() or g.coeffs.is_zero():
        return 0j, 0.0
    pts = [p for p in np.concatenate([fb, gb]) if lo < p < hi]
    alpha = getattr(m, "line_alpha", None)
    if alpha is not None and alpha != 1:
        # xi + alpha (nu - xi) = 0
        z = -alpha * nu / (1.0 - alpha)
        if lo < z < hi:
            pts.append(z)
    breaks = np.unique([lo, hi, *pts])

    def run(sp):
        xi, w = interval_rule(breaks, sp)
        return np.sum(w * f.hat(xi) * g.hat(nu - xi) * m(xi, nu - xi))

    band = max(abs(f.coeffs.offset), abs(f.coeffs.last)) + max(abs(g.coeffs.offset), abs(g.coeffs.last))
    spec = spec.for_bandwidth(band)
    val = run(spec)
    err = 0.0
    if spec.refine:
        fine = run(spec.refined())
        err = abs(fine - val)
        val = fine
        if err > spec.tol:
            raise QuadratureError("Fourier transform quadrature did not converge", err)
    return complex(val), float(err)
