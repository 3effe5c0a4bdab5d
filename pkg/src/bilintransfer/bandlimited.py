"""Band-limited functions built from finitely many translates of a prototype.

A :class:`BandLimitedFunction` is ``f(x) = sum_n a_n phi(x - n)`` with a
prototype ``phi`` whose Fourier transform is supported in ``[-R, R]``. Because
the coefficient list is finite, ``f`` is exactly evaluable in both domains:
``f_hat(xi) = P(xi) phi_hat(xi)`` with ``P(xi) = sum_n a_n exp(-2 pi i n xi)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .sequences import FiniteSequence

__all__ = [
    "Kind",
    "Prototype",
    "PowerEnvelope",
    "BandLimitedFunction",
    "SINC",
    "RAISED_COSINE",
    "BOX_SPECTRUM",
    "trig_poly",
    "shannon_reconstruct",
    "restrict_lattice",
    "extend_sequence",
    "periodize",
    "make_cutoff",
]


class Kind(enum.Enum):
    SINC = "sinc"
    RAISED_COSINE = "raised_cosine"
    BOX_SPECTRUM = "box_spectrum"


@dataclass(frozen=True)
class PowerEnvelope:
    """``|f(x)| <= const * |x|**(-power)`` for ``|x| >= knee``, ``|f| <= peak`` else."""

    const: float
    power: float
    knee: float
    peak: float

    def __call__(self, x):
        ax = np.abs(np.asarray(x, dtype=float))
        with np.errstate(divide="ignore"):
            far = self.const * np.where(ax > 0, ax, 1.0) ** (-self.power)
        return np.where(ax >= self.knee, far, self.peak)

    def tail(self, radius):
        """Bound on ``sum_{|k| > K} |f(x + k)|`` for ``|x| <= 1/2``, ``K = radius``.

        Uses ``|x + k| >= |k| - 1/2`` and the integral test; infinite when the
        decay is not summable.
        """
        if self.power <= 1 or radius + 0.5 < self.knee:
            return math.inf
        return 2.0 * self.const * (radius - 0.5) ** (1.0 - self.power) / (self.power - 1.0)


def _rc_core(x):
    """``1.5 sinc(1.5 x) cos(pi x / 2) / (1 - x^2)``, spectrum flat on [-1/2, 1/2]."""
    x = np.asarray(x, dtype=float)
    d = 1.0 - x * x
    near = np.abs(np.abs(x) - 1.0) < 1e-4
    safe = np.where(near, 0.0, x)
    out = 1.5 * np.sinc(1.5 * safe) * np.cos(0.5 * np.pi * safe) / np.where(near, 1.0, d)
    if np.any(near):
        # expand cos(pi x/2)/(1-x^2) about x = +-1: with e = |x| - 1,
        # cos(pi(1+e)/2) = -sin(pi e/2), 1 - x^2 = -e(2+e)
        xn = x[near]
        e = np.abs(xn) - 1.0
        s = 0.5 * np.pi
        sin_over_e = s * (1.0 - (s * e) ** 2 / 6.0 + (s * e) ** 4 / 120.0)
        ratio = sin_over_e / (2.0 + e)
        out = np.array(out, dtype=float)
        out[near] = 1.5 * np.sinc(1.5 * xn) * ratio
    return out


def _rc_hat(xi):
    a = np.abs(np.asarray(xi, dtype=float))
    roll = 0.5 * (1.0 + np.cos(2.0 * np.pi * (a - 0.5)))
    return np.where(a <= 0.5, 1.0, np.where(a <= 1.0, roll, 0.0))


def _box_hat(xi):
    a = np.abs(np.asarray(xi, dtype=float))
    return np.where(a < 0.5, 1.0, np.where(a == 0.5, 0.5, 0.0))


@dataclass(frozen=True)
class Prototype:
    """A band-limited building block ``phi_s(x) = s * phi(s x)``.

    ``SINC`` has ``phi_hat = chi_[-1/2, 1/2]`` and ``phi = sinc``;
    ``BOX_SPECTRUM`` is the same function described from its spectrum;
    ``RAISED_COSINE`` has ``phi_hat = 1`` on ``[-1/2, 1/2]``, a cosine roll-off to
    zero at ``+-1`` and time decay ``O(|x|^-3)``. ``scale`` dilates the spectrum,
    so the Fourier radius is ``scale`` (raised cosine) or ``scale / 2`` (sinc).
    """

    kind: Kind = Kind.RAISED_COSINE
    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("prototype scale must be positive")

    @property
    def fourier_radius(self):
        if self.kind is Kind.RAISED_COSINE:
            return self.scale
        return 0.5 * self.scale

    @property
    def flat_radius(self):
        """Largest ``r`` with ``phi_hat = 1`` on ``(-r, r)``."""
        return 0.5 * self.scale

    @property
    def spectral_breaks(self):
        """Points where ``phi_hat`` is not smooth, including the support ends."""
        s = self.scale
        if self.kind is Kind.RAISED_COSINE:
            return np.array([-s, -0.5 * s, 0.5 * s, s])
        return np.array([-0.5 * s, 0.5 * s])

    def __call__(self, x):
        s = self.scale
        x = np.asarray(x, dtype=float)
        if self.kind is Kind.RAISED_COSINE:
            return s * _rc_core(s * x)
        return s * np.sinc(s * x)

    def hat(self, xi):
        xi = np.asarray(xi, dtype=float) / self.scale
        if self.kind is Kind.RAISED_COSINE:
            return _rc_hat(xi)
        return _box_hat(xi)

    def envelope(self):
        s = self.scale
        if self.kind is Kind.RAISED_COSINE:
            # |phi(x)| <= 1 / (pi |x| (x^2 - 1)) <= 4 / (3 pi |x|^3) for |x| >= 2
            return PowerEnvelope(4.0 / (3.0 * math.pi * s * s), 3.0, 2.0 / s, 1.5 * s)
        return PowerEnvelope(1.0 / math.pi, 1.0, 1.0 / s, s)

    def scaled(self, factor):
        return Prototype(self.kind, self.scale * factor)


SINC = Prototype(Kind.SINC)
BOX_SPECTRUM = Prototype(Kind.BOX_SPECTRUM)
RAISED_COSINE = Prototype(Kind.RAISED_COSINE)


def _trig_horner(seq, flat, chunk=1 << 16):
    out = np.zeros(flat.size, dtype=complex)
    coeffs = seq.values[::-1]
    for i in range(0, flat.size, chunk):
        part = flat[i:i + chunk]
        z = np.exp(-2j * np.pi * part)
        acc = np.full(part.size, coeffs[0], dtype=complex)
        for c in coeffs[1:]:
            acc = acc * z + c
        out[i:i + chunk] = acc * np.exp(-2j * np.pi * seq.offset * part)
    return out


def _trig_taylor(seq, flat, terms=14):
    # derivatives of P on a uniform grid by FFT, then a local Taylor series
    n = len(seq)
    centre = seq.offset + (n - 1) // 2
    freqs = np.arange(n) - (n - 1) // 2
    G = 1 << max(6, math.ceil(math.log2(8 * n)))
    g = np.rint(flat * G)
    delta = flat - g / G
    gi = np.mod(g.astype(np.int64), G)
    # with h = -2 pi i delta the m-th term is  sum_j v_j f_j^m e^{...} h^m / m!
    h = -2j * np.pi * delta
    # fft gives sum_j c_j exp(-2 pi i j k / G); re-centre the phase
    shift = np.exp(2j * np.pi * ((n - 1) // 2) * np.arange(G) / G)
    acc = np.zeros(flat.size, dtype=complex)
    for m in range(terms - 1, -1, -1):
        grid = np.fft.fft(seq.values * freqs.astype(float) ** m, G)
        acc = acc * h / (m + 1) + (grid * shift)[gi]
    return acc * np.exp(-2j * np.pi * centre * flat)


def trig_poly(seq, xi):
    """``P(xi) = sum_k a_k exp(-2 pi i k xi)`` at real points ``xi``.

    Short sequences use Horner's rule; longer ones take derivatives on an
    eight-fold oversampled FFT grid and a 14-term Taylor expansion to the
    nearest grid point, accurate to rounding relative to ``sum |a_k|``.
    """
    xi = np.asarray(xi, dtype=float)
    flat = xi.ravel()
    if len(seq) == 0:
        return np.zeros(xi.shape, dtype=complex)
    if len(seq) < 48 or flat.size < 4 * len(seq):
        return _trig_horner(seq, flat).reshape(xi.shape)
    return _trig_taylor(seq, flat).reshape(xi.shape)


@dataclass(frozen=True)
class BandLimitedFunction:
    """``f(x) = sum_n coeffs[n] * prototype(x - n)``."""

    coeffs: FiniteSequence
    prototype: Prototype = RAISED_COSINE

    @property
    def fourier_radius(self):
        return self.prototype.fourier_radius

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        idx, vals = self.coeffs.nonzero_items()
        out = np.zeros(x.shape, dtype=complex)
        for n, a in zip(idx, vals):
            out += a * self.prototype(x - n)
        return out

    def hat(self, xi):
        """Exact Fourier transform ``P(xi) * phi_hat(xi)``."""
        xi = np.asarray(xi, dtype=float)
        return trig_poly(self.coeffs, xi) * self.prototype.hat(xi)

    def envelope_tail(self, radius):
        """Bound on ``sum_{n outside [lo-radius, hi+radius]} |f(n + u)|``."""
        env = self.prototype.envelope()
        l1 = float(np.sum(np.abs(self.coeffs.values)))
        return l1 * env.tail(radius)


def extend_sequence(a, prototype=SINC):
    """The extension ``sum_n a_n T_n phi`` of a finite sequence."""
    if not math.isfinite(prototype.fourier_radius):
        raise ValueError("prototype must have finite Fourier radius")
    return BandLimitedFunction(a, prototype)


def _reduce_u(u):
    """Write ``u = m + u0`` with ``u0`` in ``[-1/2, 1/2]``."""
    m = math.floor(u + 0.5)
    return m, u - m


def restrict_lattice(f, u=0.0, window=None, floor=1e-12):
    """``a_u(n) = f(n + u)`` over a window around the coefficient support.

    ``window`` is the padding (in lattice steps) added on each side of the
    coefficient support; by default it is the smallest padding whose certified
    envelope tail is below ``floor``, capped at ``2**16``. Entries with modulus at
    most ``floor`` are trimmed from both ends.
    """
    m, u0 = _reduce_u(float(u))
    if f.coeffs.is_zero():
        return FiniteSequence.zeros()
    c = f.coeffs.canonical()
    if window is None:
        window = 8
        while f.envelope_tail(window) > floor and window < 1 << 16:
            window *= 2
    n = np.arange(c.offset - window, c.last + window + 1)
    vals = f.eval(n + u0)
    return FiniteSequence(int(n[0]) - m, vals).trim(floor)


def shannon_reconstruct(samples, R, x, prototype=SINC):
    """``sum_n samples(n) * phi(2 R x - n)`` with ``samples(n) = f(n / (2R))``.

    Exact for ``f`` of Fourier radius ``rho`` whenever ``phi_hat = 1`` on
    ``[-rho/(2R), rho/(2R)]`` and ``phi_hat`` vanishes on
    ``|xi| >= 1 - rho/(2R)``; for SINC this is ``rho < R``. Truncating the samples
    to a finite window leaves an error of at most
    ``sum_{n outside} |samples(n)| * |phi(2 R x - n)|``.
    """
    if not R > 0:
        raise ValueError("sampling radius R must be positive")
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    idx, vals = samples.nonzero_items()
    y = 2.0 * R * x
    for n, a in zip(idx, vals):
        out += a * prototype(y - n)
    return out


def periodize(f, x, tail_tol, envelope):
    """1-periodization ``sum_k f(x + k)`` with a certified truncation.

    ``envelope`` must provide ``tail(K)``, a bound for the omitted terms
    ``|k| > K``. Raises ``ValueError`` when the envelope cannot certify
    ``tail_tol`` (for instance a ``1/|x|`` decay).
    """
    if not tail_tol > 0:
        raise ValueError("tail_tol must be positive")
    if envelope is None:
        raise ValueError("an envelope is required to certify the truncation")
    x = np.asarray(x, dtype=float)
    x0 = x - np.round(x)
    K = 1
    while envelope.tail(K) >= tail_tol:
        K *= 2
        if K > 1 << 26:
            raise ValueError("envelope decay too slow to certify the requested tail")
    ks = np.arange(-K, K + 1)
    vals = f(x0[..., None] + ks)
    return np.sum(vals, axis=-1)


def make_cutoff(M=1.0):
    """``psi_M(x) = M psi(M x)`` with ``psi_hat = 1`` on ``[-1, 1]``, supported in ``[-2, 2]``."""
    if M < 1:
        raise ValueError("cutoff scale M must be >= 1")
    return Prototype(Kind.RAISED_COSINE, 2.0 * M)
