"""The discrete bilinear Hilbert transform and its decomposition.

Run with ``python3 demos/04_decomposition.py``.
"""

import numpy as np

from bilintransfer import FiniteSequence, bht_decomposition_rhs, bht_discrete

rng = np.random.default_rng(7)
a = FiniteSequence(-5, rng.standard_normal(11) + 1j * rng.standard_normal(11))
b = FiniteSequence(-3, rng.standard_normal(7))

for alpha in (-2, -1, 2, 3):
    lhs = bht_discrete(a, b, alpha)
    ns = range(lhs.offset - 4, lhs.last + 5)
    rhs = bht_decomposition_rhs(a, b, alpha, n_range=ns)
    idx = np.arange(ns.start, ns.stop)
    print(f"alpha = {alpha:2}: max |lhs - rhs| = {np.max(np.abs(lhs.at(idx) - rhs.at(idx))):.2e}")

# Swapping the inputs with alpha -> 1/alpha is not available on the integers, but
# alpha = -1 is antisymmetric in (a, b) exactly.
d = bht_discrete(a, b, -1) + bht_discrete(b, a, -1)
print("H_{-1}(a, b) + H_{-1}(b, a) is zero:", d.is_zero())
