"""Empirical operator norms and the weak endpoint probe.

Run with ``python3 demos/06_norm_estimation.py``.
"""

from bilintransfer import Constant, FiniteSequence, SignLine
from bilintransfer.harness import (TrialConfig, bht_op, estimate_norm, hilbert_op, pointwise_op,
                                   uniformity_sweep, weak_endpoint_probe)

cfg = TrialConfig(seed=1, trials=60, support_radius=8)
# Exponents are (p1, q1, p2, q2, p3, q3) for l^{p1,q1} x l^{p2,q2} -> l^{p3,q3}.
# Pointwise product: Holder gives norm exactly 1 for l^2 x l^2 -> l^1.
rep = estimate_norm(pointwise_op, cfg, [2, 2, 2, 2, 1, 1])
print("product, lower bound:", rep.summary["estimate"])

# The linear Hilbert transform as b(0) H(a): on l^2 x l^1 -> l^2 its norm is 1.
rep = estimate_norm(hilbert_op(), cfg, [2, 2, 1, 1, 2, 2], fixed_b=FiniteSequence.delta(0))
print("b(0) H(a), lower bound:", rep.summary["estimate"])

rep = estimate_norm(bht_op(2), cfg, [2, 2, 2, 2, 1, 1])
print("H_2 on l^2 x l^2 -> l^1, lower bound:", rep.summary["estimate"])

# Sign symbols are dilation invariant, so the periodized estimates do not depend on t.
rep = uniformity_sweep(SignLine(2.0, -1j), 0.0, [0.5, 2, 8], TrialConfig(trials=12, support_radius=6))
print("sign symbol estimates over t:", [round(float(r["estimate"]), 12) for r in rep.records])
rep = uniformity_sweep(Constant(1), 0.5, [1, 4], TrialConfig(trials=12, support_radius=6))
print("constant symbol, 1/p = 1/2:", [float(r["estimate"]) for r in rep.records], "(ratio 2)")

# The running maximum into weak l^(2/3) stays flat as trials accumulate.
rep = weak_endpoint_probe(2, 4 / 3, 4 / 3, TrialConfig(trials=200))
print("weak endpoint: running max", rep.summary["running_max"], "slope", rep.summary["growth_slope"])
