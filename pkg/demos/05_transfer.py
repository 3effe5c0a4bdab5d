"""Continuous bilinear multipliers sampled on a lattice.

Run with ``python3 demos/05_transfer.py`` (about half a minute).
"""

from bilintransfer import RAISED_COSINE, BandLimitedFunction, FiniteSequence, SignLine
from bilintransfer.harness import verify_transfer_relation
from bilintransfer.quadrature import QuadratureSpec

f = BandLimitedFunction(FiniteSequence.delta(0), RAISED_COSINE)
g = BandLimitedFunction(FiniteSequence(0, [1.0, -0.5 + 0.25j]), RAISED_COSINE)

# C_m(f, g) sampled at (n + u)/k equals a discrete operator applied to restrictions of f and g.
rep = verify_transfer_relation(f, g, SignLine(2.0, -1j), 8, [0.0, 0.25], QuadratureSpec(tol=1e-7),
                               window=32, tol=1e-5)
for r in rep.records:
    print(r)
print("max discrepancy:", rep.summary["max_discrepancy"], "passed:", rep.passed)
