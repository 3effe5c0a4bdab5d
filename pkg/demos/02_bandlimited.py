"""Band-limited extensions, lattice restriction and Shannon sampling.

Run with ``python3 demos/02_bandlimited.py``.
"""

import numpy as np

from bilintransfer import (RAISED_COSINE, SINC, BandLimitedFunction, FiniteSequence, extend_sequence,
                           restrict_lattice, shannon_reconstruct)

# Extending a sequence with SINC interpolates it: f(n) = a(n).
a = FiniteSequence(0, [1.0, -0.5, 0.25j])
f = extend_sequence(a, SINC)
print("f on the lattice:", np.round(f(np.arange(-1, 4)), 15))

# The raised-cosine prototype decays like |x|^-3, so restriction needs only a short window.
g = BandLimitedFunction(a, RAISED_COSINE)
for u in (0.0, 0.25, 0.5):
    s = restrict_lattice(g, u, floor=1e-12)
    print(f"u = {u}: g(n + u) kept on [{s.offset}, {s.last}], l^2 mass {np.linalg.norm(s.values):.6f}")

# The Fourier transform is exact: trigonometric polynomial times prototype transform.
xi = np.linspace(-1, 1, 5)
print("g_hat on [-1, 1]:", np.round(g.hat(xi), 6))

# Shannon reconstruction from samples at spacing 1/(2R). g has Fourier radius 1,
# so with R = 2 its rescaled spectrum sits in |xi| <= 1/4 and a raised cosine of
# scale 1/2 (flat on 1/4, zero beyond 1/2) reproduces it.
R = 2.0
n = np.arange(-4000, 4001)
samples = FiniteSequence(int(n[0]), g(n / (2 * R)))
x = np.array([0.1, 0.37, 1.9])
rec = shannon_reconstruct(samples, R, x, RAISED_COSINE.scaled(0.5))
print("reconstruction error (truncated samples):", np.max(np.abs(rec - g(x))))
