import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bilintransfer import (
    RAISED_COSINE,
    BandLimitedFunction,
    Constant,
    FiniteSequence,
    Kind,
    PeriodizedSymbol,
    Phase,
    Prototype,
    QuadratureSpec,
    SignLine,
    apply_Cm,
    apply_Dm_kernel,
    apply_Dm_quadrature,
    bht_decomposition_rhs,
    bht_discrete,
    fourier_of_Cm,
    hilbert_discrete,
    kernel_c_alpha,
)
from bilintransfer.operators import (
    _delta_kernel,
    bar_sequence,
    c_alpha_kernel,
    hilbert_at,
    hilbert_tail_bound,
    tilde_sequence,
)
from bilintransfer.quadrature import interval_rule
from conftest import random_sequence, sequences

int_alpha = st.integers(-4, 4).filter(lambda a: a not in (0, 1))


def test_c_alpha_origin_and_rows():
    for a in (0.5, -1 / 3, 1, -1, 2, -2, 3):
        assert kernel_c_alpha(a, 0, 0) == 0
    # r = 0 row, from quadrature: +i/(2 pi) at alpha = 1/2, s = 1
    assert kernel_c_alpha(0.5, 0, 1) == pytest.approx(1j / (2 * np.pi), abs=1e-16)
    expect = -(1 / (np.pi * 1j)) * (np.sinc(-0.5) + 1)
    assert kernel_c_alpha(0.5, 1, 0) == pytest.approx(expect, abs=1e-16)
    with pytest.raises(ValueError):
        kernel_c_alpha(0, 1, 1)


def test_c_alpha_reflection():
    r = np.arange(-5, 6)
    for a in (2.0, -3.0):
        big = kernel_c_alpha(a, r[:, None], r[None, :])
        small = kernel_c_alpha(1 / a, r[None, :], r[:, None])
        assert np.array_equal(big, math.copysign(1, a) * small)


def test_dm_kernel_degenerate_cases(rng):
    a, b = random_sequence(rng, 5), random_sequence(rng, 5)
    prod = apply_Dm_kernel(a, b, _delta_kernel, window=3)
    idx = np.arange(-10, 11)
    assert np.max(np.abs(prod.at(idx) - a.at(idx) * b.at(idx))) <= 1e-12
    d = FiniteSequence.delta(0)
    K = c_alpha_kernel(0.5)
    out = apply_Dm_kernel(d, d, K, n_range=range(-4, 5))
    n = np.arange(-4, 5)
    assert np.allclose(out.at(n), -1j * kernel_c_alpha(0.5, n, n), atol=0)


def test_dm_quadrature_degenerate_cases(rng):
    a, b = random_sequence(rng, 4), random_sequence(rng, 4)
    ns = range(-8, 9)
    idx = np.arange(-8, 9)
    one, err = apply_Dm_quadrature(a, b, PeriodizedSymbol(Constant(1)), ns)
    assert np.max(np.abs(one.at(idx) - a.at(idx) * b.at(idx))) <= 1e-10
    shift, _ = apply_Dm_quadrature(a, b, PeriodizedSymbol(Phase(1, 0)), ns)
    assert np.max(np.abs(shift.at(idx) - a.at(idx + 1) * b.at(idx))) <= 1e-10


@pytest.mark.parametrize("alpha", [0.5, -1.0, 2.0])
def test_kernel_and_quadrature_paths_agree(alpha, rng):
    a = FiniteSequence(0, rng.standard_normal(8) + 1j * rng.standard_normal(8))
    b = FiniteSequence(-3, rng.standard_normal(8) + 1j * rng.standard_normal(8))
    ns = range(-12, 20)
    kern = apply_Dm_kernel(a, b, c_alpha_kernel(alpha), n_range=ns)
    quad, _ = apply_Dm_quadrature(a, b, PeriodizedSymbol(SignLine(alpha, -1j)), ns)
    idx = np.arange(-12, 20)
    assert np.max(np.abs(kern.at(idx) - quad.at(idx))) <= 1e-7


def test_hilbert_examples():
    h = hilbert_discrete(FiniteSequence.delta(0), pad=10)
    n = np.arange(-10, 11)
    expect = np.zeros(21)
    expect[n != 0] = 1 / (np.pi * n[n != 0])
    assert np.allclose(h.at(n).real, expect, rtol=1e-15, atol=0)
    assert hilbert_discrete(FiniteSequence.zeros()).is_zero()
    a = FiniteSequence(0, [1, 1])
    forward = sum(a[j] / (0 - j) for j in (1,)) / np.pi
    backward = sum(a[j] * (1 / (0 - j)) for j in reversed((1,))) / np.pi
    assert hilbert_at(a, [0])[0] == pytest.approx(forward, abs=1e-14)
    assert forward == pytest.approx(backward, abs=1e-14)
    assert hilbert_tail_bound(a, 10) == pytest.approx(2 / (11 * np.pi))


@given(sequences(min_len=1, max_len=8), st.integers(0, 30))
def test_hilbert_tail_bound_holds(a, pad):
    c = a.canonical()
    if c.is_zero():
        return
    far = np.concatenate([np.arange(c.offset - pad - 40, c.offset - pad),
                          np.arange(c.last + pad + 1, c.last + pad + 41)])
    assert np.max(np.abs(hilbert_at(c, far))) <= hilbert_tail_bound(c, pad) * (1 + 1e-12)


def test_bht_examples():
    d0 = FiniteSequence.delta(0)
    for alpha in (-3, -1, 2, 5):
        assert bht_discrete(d0, d0, alpha).is_zero()
    out = bht_discrete(d0, FiniteSequence.delta(1), 2)
    assert out == FiniteSequence.delta(-1, -1 / np.pi)
    with pytest.raises(ValueError):
        bht_discrete(d0, d0, 0)
    with pytest.raises(ValueError):
        bht_discrete(d0, d0, 1.5)


def _brute_bht(a, b, alpha, ns):
    out = []
    for n in ns:
        s = 0j
        for k in range(-200, 201):
            if k:
                s += a[n - k] * b[n - alpha * k] / k
        out.append(s / np.pi)
    return np.array(out)


@given(sequences(max_len=6), sequences(max_len=6), int_alpha)
def test_bht_matches_definition(a, b, alpha):
    ns = np.arange(-30, 31)
    got = bht_discrete(a, b, alpha).at(ns)
    assert np.allclose(got, _brute_bht(a, b, alpha, ns), atol=1e-12)


@given(sequences(max_len=6), sequences(max_len=6), sequences(max_len=6), int_alpha)
def test_bht_bilinear_and_odd(a, a2, b, alpha):
    ns = np.arange(-60, 61)
    lhs = bht_discrete(a + a2, b, alpha).at(ns)
    rhs = bht_discrete(a, b, alpha).at(ns) + bht_discrete(a2, b, alpha).at(ns)
    assert np.allclose(lhs, rhs, rtol=0, atol=1e-12)
    refl = bht_discrete(a.reflect(), b.reflect(), alpha).at(-ns)
    assert np.array_equal(refl, -bht_discrete(a, b, alpha).at(ns))


def test_bar_and_tilde():
    assert bar_sequence(FiniteSequence.delta(0), 3) == FiniteSequence.delta(0)
    bar = bar_sequence(FiniteSequence(0, [5, 7]), 2)
    assert bar[0] == 5 and bar[2] == 7 and bar[1] == 0
    a = FiniteSequence(-2, [1, 2, 3, 4])
    assert tilde_sequence(a, 2) == bar_sequence(a, 2)
    t = tilde_sequence(a, 3)
    assert t[-3] == -2 and t[3] == -4


@given(sequences(min_len=1, max_len=8), int_alpha, st.floats(0.5, 4), st.floats(0.5, 4))
def test_bar_preserves_norms(a, alpha, p, q):
    from bilintransfer import Exponents, norm_pq
    e = Exponents(p, q)
    assert norm_pq(bar_sequence(a, alpha), e) == pytest.approx(norm_pq(a, e), rel=1e-12, abs=1e-300)


@given(sequences(max_len=10), sequences(max_len=10), int_alpha)
def test_decomposition_identity(a, b, alpha):
    rhs = bht_decomposition_rhs(a, b, alpha)
    lhs = bht_discrete(a, b, alpha)
    scale = 1 + np.sum(np.abs(a.values)) * np.sum(np.abs(b.values))
    assert np.max(np.abs(lhs.at(rhs.indices) - rhs.values), initial=0) <= 1e-12 * scale


def test_decomposition_examples():
    d = FiniteSequence.delta(0)
    rhs = bht_decomposition_rhs(d, d, 2, n_range=range(-10, 11))
    assert np.max(np.abs(rhs.values)) <= 1e-9
    rng = np.random.default_rng(7)
    a = FiniteSequence(0, rng.standard_normal(8) + 1j * rng.standard_normal(8))
    b = FiniteSequence(0, rng.standard_normal(8) + 1j * rng.standard_normal(8))
    rhs = bht_decomposition_rhs(a, b, -1)
    assert np.max(np.abs(bht_discrete(a, b, -1).at(rhs.indices) - rhs.values)) <= 1e-9
    z = bht_decomposition_rhs(FiniteSequence.zeros(), b, 2, n_range=range(3))
    assert np.all(z.values == 0)


def test_cm_constant_symbol_is_product():
    rng = np.random.default_rng(11)
    f = BandLimitedFunction(FiniteSequence(-2, rng.standard_normal(5)), RAISED_COSINE)
    g = BandLimitedFunction(FiniteSequence(0, rng.standard_normal(3) + 1j), RAISED_COSINE)
    x = np.linspace(-6, 6, 25)
    vals, err = apply_Cm(f, g, Constant(1), x, QuadratureSpec(tol=1e-9))
    assert np.max(np.abs(vals - f(x) * g(x))) <= 1e-9
    zero, _ = apply_Cm(f, BandLimitedFunction(FiniteSequence.zeros()), SignLine(2), x)
    assert np.all(zero == 0)


def test_fourier_of_cm_tent():
    box = Prototype(Kind.BOX_SPECTRUM)
    f = BandLimitedFunction(FiniteSequence.delta(0), box)
    for nu in (-0.9, -0.3, 0.0, 0.45, 0.99):
        val, _ = fourier_of_Cm(f, f, Constant(1), nu)
        assert val == pytest.approx(max(0, 1 - abs(nu)), abs=1e-7)
    val, _ = fourier_of_Cm(f, f, Constant(1), 1.5)
    assert val == 0


def test_cm_output_is_band_limited():
    f = BandLimitedFunction(FiniteSequence.delta(0), RAISED_COSINE)
    m = SignLine(2.0, -1j)
    for nu in (2.01, -2.5, 3.0):
        val, _ = fourier_of_Cm(f, f, m, nu)
        assert abs(val) <= 1e-12


def test_fourier_of_cm_inverts_to_cm():
    rng = np.random.default_rng(12)
    f = BandLimitedFunction(FiniteSequence(-1, rng.standard_normal(3)), RAISED_COSINE)
    g = BandLimitedFunction(FiniteSequence(0, rng.standard_normal(2)), RAISED_COSINE)
    m = SignLine(-0.5, -1j)
    x = rng.uniform(-4, 4, 10)
    direct, _ = apply_Cm(f, g, m, x, QuadratureSpec(tol=1e-8))
    # the spectrum is piecewise smooth with kinks at sums of breakpoints
    breaks = np.unique(np.concatenate([np.linspace(-2, 2, 9), [-2 / 3, 2 / 3, 0.25, -0.25, 1 / 6, -1 / 6]]))
    nus, w = interval_rule(breaks, QuadratureSpec(order=24, panels=6))
    spec_vals = np.array([fourier_of_Cm(f, g, m, nu)[0] for nu in nus])
    inv = np.exp(2j * np.pi * np.outer(x, nus)) @ (w * spec_vals)
    assert np.max(np.abs(inv - direct)) <= 1e-5
