"""Lorentz quasi-norms of finite sequences.

Run with ``python3 demos/01_lorentz_norms.py``.
"""

import numpy as np

from bilintransfer import Exponents, FiniteSequence, norm_pq, norm_weak, rearrangement

# A short sequence and its decreasing rearrangement.
a = FiniteSequence(-2, [0.5, -2.0, 1j, 0.0, 1.0])
print("values        ", a.values)
print("rearrangement ", rearrangement(a))

# With p = q the Lorentz norm is the ordinary l^p norm.
for p in (1.0, 2.0, 4.0):
    ref = np.sum(np.abs(a.values) ** p) ** (1 / p)
    print(f"p = q = {p}: norm_pq = {norm_pq(a, Exponents(p, p)):.15f}  l^p = {ref:.15f}")

# The (1, 2) norm of (2, 1) is sqrt(7).
print("||(2, 1)||_{1,2} =", norm_pq(FiniteSequence(0, [2, 1]), Exponents(1, 2)), " sqrt(7) =", np.sqrt(7))

# Weak norms: sup of lambda * #{|a| > lambda}^(1/p).
for p in (0.5, 1.0, 2.0):
    print(f"weak l^{p}: {norm_weak(a, p):.6f}")

# q = inf agrees with the weak norm.
print("norm_pq(p=2, q=inf) =", norm_pq(a, Exponents(2, np.inf)), " weak =", norm_weak(a, 2))
